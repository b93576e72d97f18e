#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "thetakit/jacobian.hpp"
#include "thetakit/primeform.hpp"

namespace thetakit {

/// Rank-r decomposable bundle L_1 + ... + L_r.  Only r = 1 (any degree) or
/// all summands of degree 0 are accepted by the identity checks.
struct SplitBundle {
  std::vector<JacobianPoint> summands;

  static SplitBundle line(JacobianPoint l) { return SplitBundle{{std::move(l)}}; }
  int rank() const { return static_cast<int>(summands.size()); }
  int degree() const;
  /// r^2 / gcd(r, d); the prime-form power in the higher-rank identities.
  int rbar() const;
  /// Throws InvalidArgument outside the supported stratum.
  void validate() const;
};

/// Indecomposable bundles have no analytic theta function; always throws NotImplemented.
[[noreturn]] void require_indecomposable(const std::string& what);

/// Data fixing theta_{F(eta)}: the prime form (and with it the curve and
/// Jacobian), the twist F and the characteristic eta.  The theta argument of
/// a summand L is e = A(L) + A(F) + (tau a + b) for eta = [a; b].
struct ThetaSetting {
  PrimeForm E;
  JacobianPoint F;
  Characteristic eta;
  double theta_tol = 1e-13;

  /// F = O_C, eta = the prime form's odd characteristic.
  static ThetaSetting standard(const PrimeForm& E, double theta_tol = 1e-13);
  const Jacobian& jacobian() const { return E.jacobian(); }
};

/// Theta arguments e_k of the summands; throws DenominatorOnThetaDivisor if
/// any is not clearly off the theta divisor.
std::vector<CVector> theta_arguments(const ThetaSetting& s, const SplitBundle& M);

/// prod_k theta(e_k + a) / theta(e_k) for the Abel image a of a degree-0 divisor.
ScaledComplex theta_ratio(const ThetaSetting& s, const SplitBundle& M, const CVector& a);
ScaledComplex theta_ratio(const ThetaSetting& s, const SplitBundle& M, const Divisor& d);

/// r x r kernel at (P, Q): diag_k theta(e_k + A(P) - A(Q)) / (theta(e_k) E(P, Q)),
/// weights +1/2 at each argument; off-diagonal entries are exact zeros.
/// Throws DiagonalEvaluation for P = Q.
std::vector<std::vector<TrivializedValue>> szego_kernel(const ThetaSetting& s, const SplitBundle& M,
                                                        const CurvePoint& p, const CurvePoint& q);

/// (x(Q) - x(P)) S_kk(P, Q) for Q on P's branch at x(P) + offset; tends to 1.
/// S carries weight +1/2 at each argument, so in the dx trivialization the
/// residue needs no h factors.
std::vector<cplx> szego_residue(const ThetaSetting& s, const SplitBundle& M, const CurvePoint& p, cplx offset);

/// Nearby point on the same local branch as p.
CurvePoint nearby_point(const HyperellipticCurve& c, const CurvePoint& p, cplx offset);

/// Determinant by partial-pivoting LU after pulling the largest exponent out of each row.
ScaledComplex scaled_determinant(const std::vector<std::vector<ScaledComplex>>& a);

enum class Verdict { Pass, Fail, Indeterminate };
const char* to_string(Verdict v);

struct SampleRecord {
  std::vector<CurvePoint> points;
  ScaledComplex lhs;
  ScaledComplex rhs;
  double residual = 0.0;
};

struct IdentityReport {
  std::string name;
  std::string curve_digest;
  std::uint64_t seed = 0;
  std::vector<SampleRecord> samples;
  ScaledComplex lhs;  // worst sample
  ScaledComplex rhs;
  double residual = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::Indeterminate;
  double wall_time = 0.0;
  std::string note;

  /// Fills residual/lhs/rhs/verdict from the samples.
  void finalize();
};

/// FNV-1a over the bit patterns of the coefficients.
std::string curve_digest(const HyperellipticCurve& c);

/// Ordering of the y-pair prime forms in the left-hand product.
///   Fay: prod_{i<j} E(x_i, x_j) E(y_j, y_i).
///   AsStated: prod_{i<j} E(x_i, x_j) E(y_i, y_j).
/// The two differ by (-1)^{rbar m (m - 1) / 2}.
enum class PairOrdering { Fay, AsStated };

/// `count` configurations (x_1, y_1, ..., x_m, y_m) with nonvanishing h.
std::vector<std::vector<CurvePoint>> draw_samples(const PrimeForm& E, int m, int count, std::uint64_t seed);

/// theta(M(sum x_i - y_i))/theta(M) * prod_{i<j} E^rbar E^rbar against
/// prod_{i,j} E(x_i, y_j)^rbar * det[theta(M(x_i - y_j))/(theta(M) E(x_i, y_j)^rbar)].
IdentityReport check_addition_formula(const ThetaSetting& s, const SplitBundle& M,
                                      const std::vector<std::vector<CurvePoint>>& samples, double tolerance,
                                      PairOrdering ordering = PairOrdering::Fay);

/// Same left side against prod E(x_i, y_j)^rbar * det of the (rbar m)-square
/// matrix of Szego boxes S_M(x_i, y_j).
IdentityReport check_szego_identity(const ThetaSetting& s, const SplitBundle& M,
                                    const std::vector<std::vector<CurvePoint>>& samples, double tolerance,
                                    PairOrdering ordering = PairOrdering::Fay);

/// det[theta(M(x_i - y_j))/(theta(M) E(x_i, y_j)^rbar)] against det S_M(x, y).
IdentityReport check_det_equivalence(const ThetaSetting& s, const SplitBundle& M,
                                     const std::vector<std::vector<CurvePoint>>& samples, double tolerance);

}  // namespace thetakit
