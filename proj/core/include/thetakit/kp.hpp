#pragma once

#include <cstdint>
#include <vector>

#include "thetakit/identities.hpp"

namespace thetakit {

/// x^x_power, times y when times_y.
struct Monomial {
  int x_power = 0;
  bool times_y = false;
};

/// Monomial basis of H^0(O(n * infinity)) on the odd model: x^a with
/// 2a <= n, then x^b y with 2b + 2g + 1 <= n.
struct SectionBasis {
  int n = 0;
  std::vector<Monomial> monomials;

  int count() const { return static_cast<int>(monomials.size()); }
  cplx eval(int i, const CurvePoint& p) const;
};

/// Throws DegreeTooSmall for n < 2g - 1.
SectionBasis section_basis(const HyperellipticCurve& c, int n);

/// Block matrix (s_i(y_j)): rows are sections of the r summands in order,
/// columns are (summand, point) pairs; block k holds basis k at the points.
/// Throws NonSquareBlocks unless every basis has exactly points.size() sections.
CMatrix kp_matrix(const std::vector<SectionBasis>& bases, const std::vector<CurvePoint>& points);

struct KpOptions {
  int r = 1;
  int n = 4;
  int sample_count = 10;
  std::uint64_t seed = 1;
  double tolerance = 1e-6;
  /// Applied to the full list of sections (rows) when nonempty: s' = C s.
  CMatrix basis_change;
};

/// theta_r(M(-sum y_i)) prod_{i<j} E(y_i, y_j)^r / det(s_i(y_j)) for
/// M = O(n inf)^{+r}, before any normalization.
ScaledComplex kp_raw_ratio(const PrimeForm& E, const std::vector<SectionBasis>& bases,
                           const std::vector<CurvePoint>& ys, const CMatrix& basis_change = CMatrix());

/// The raw ratio is lambda times a per-point factor prod_i phi(y_i) coming
/// from the dx trivialization of the prime forms.  lambda_s divides that
/// factor out through fixed reference points z_1..z_m:
///   lambda(Y) = R(Y) / prod_i [R(y_i, z_2, ..., z_m) / R(z_1, ..., z_m)],
/// and the check is max_s |lambda_s / lambda_1 - 1| <= tolerance.
IdentityReport check_kp_identity(const PrimeForm& E, const KpOptions& opt);

/// Same check on the raw ratios R(Y) (no per-point normalization).
IdentityReport check_kp_identity_raw(const PrimeForm& E, const KpOptions& opt);

/// lambda for one configuration against the given reference points.
ScaledComplex kp_lambda(const PrimeForm& E, const std::vector<SectionBasis>& bases, const std::vector<CurvePoint>& ys,
                        const std::vector<CurvePoint>& refs, const CMatrix& basis_change = CMatrix());

}  // namespace thetakit
