#pragma once

#include <Eigen/Dense>
#include <vector>

#include "thetakit/scaled.hpp"

namespace thetakit {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Point on y^2 = f(x).  `y` is stored explicitly; `sheet` records the sign
/// relative to the principal square root of f(x) at that x.
struct CurvePoint {
  cplx x{};
  cplx y{};
  int sheet = 1;
  bool is_branch = false;
  bool at_infinity = false;

  static CurvePoint infinity() {
    CurvePoint p;
    p.at_infinity = true;
    p.is_branch = true;
    return p;
  }
};

/// Holomorphic differential x^k dx / y.
struct Differential {
  int k = 0;
};

/// Odd hyperelliptic model y^2 = f(x), deg f = 2g + 1.
class HyperellipticCurve {
 public:
  /// Coefficients in ascending degree.  Throws WrongDegree / NotSquarefree.
  explicit HyperellipticCurve(std::vector<cplx> f_coeffs);

  int genus() const noexcept { return genus_; }
  const std::vector<cplx>& coefficients() const noexcept { return coeffs_; }
  cplx leading() const noexcept { return coeffs_.back(); }
  /// Finite branch points sorted by (Re, Im).
  const std::vector<cplx>& branch_points() const noexcept { return roots_; }
  /// Abel-map base point b1 (first finite branch point).
  cplx base_point() const noexcept { return roots_.front(); }
  /// max |root| + 1; all distance thresholds are relative to it.
  double scale() const noexcept { return scale_; }

  cplx f(cplx x) const;
  cplx f_prime(cplx x) const;

  /// Finite point over x on the requested sheet (y = sheet * principal sqrt f).
  CurvePoint point(cplx x, int sheet = 1) const;
  /// Finite branch point with index k (0-based, sorted order).
  CurvePoint branch_point(int k) const;
  CurvePoint conjugate(const CurvePoint& p) const;
  /// Index of the finite branch point within `eps` of x, or -1.
  int branch_index_near(cplx x, double eps) const;

  std::vector<Differential> differential_basis() const;
  /// Coefficient x^k / y of x^k dx / y against dx.  Throws EvaluationAtBranchPoint.
  cplx evaluate(const Differential& w, const CurvePoint& p) const;
  /// All g coefficients at once.
  CVector differentials_at(const CurvePoint& p) const;

 private:
  int genus_ = 0;
  std::vector<cplx> coeffs_;
  std::vector<cplx> roots_;
  double scale_ = 1.0;
};

/// Sign tracking of sqrt(f) along a polyline in the x-plane.  Returns +1/-1
/// for the end sheet (relative to the principal root of f at the endpoint)
/// given the start sheet.  Throws PathTooCloseToBranchPoint.
int continue_sheet(const HyperellipticCurve& curve, const std::vector<cplx>& path, int start_sheet);

/// Polynomial roots by Aberth iteration followed by Newton polishing.
std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs);

/// Value of the polynomial with ascending coefficients.
cplx horner(const std::vector<cplx>& coeffs, cplx x);

}  // namespace thetakit
