#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "thetakit/curve.hpp"

namespace thetakit {

/// Normalized g x g period matrix: symmetric with positive-definite imaginary part.
class RiemannMatrix {
 public:
  RiemannMatrix() = default;
  /// Throws InvalidTau unless symmetric to 1e-9 with Im tau positive definite.
  explicit RiemannMatrix(CMatrix tau);

  const CMatrix& tau() const noexcept { return tau_; }
  int genus() const noexcept { return static_cast<int>(tau_.rows()); }
  const Eigen::MatrixXd& imag() const noexcept { return imag_; }
  /// Upper-triangular T with T^T T = pi * Im tau.
  const Eigen::MatrixXd& cholesky_upper() const noexcept { return chol_; }
  /// (Im tau)^{-1}.
  const Eigen::MatrixXd& imag_inverse() const noexcept { return imag_inv_; }
  /// Shortest nonzero vector length of the lattice T Z^g.
  double shortest_vector() const noexcept { return rho_; }
  /// Memoized truncation radius for a tolerance; computed by `compute` on a miss.
  double cached_radius(double tol, double (*compute)(const RiemannMatrix&, double)) const;

 private:
  struct RadiusCache {
    std::mutex mutex;
    std::map<double, double> radius;
  };
  CMatrix tau_;
  Eigen::MatrixXd imag_;
  Eigen::MatrixXd chol_;
  Eigen::MatrixXd imag_inv_;
  double rho_ = 0.0;
  std::shared_ptr<RadiusCache> cache_ = std::make_shared<RadiusCache>();
};

/// Cycle integrals of x^k dx / y and the normalized period matrix.
///
/// Cycles come from the chain of straight cuts between consecutive sorted
/// finite branch points: c_k lifts the segment [e_k, e_{k+1}] and its
/// conjugate.  With orientations fixed so that c_k . c_{k+1} = +1 the basis
/// a_i = c_{2i-1}, b_i = c_{2i} + c_{2i+2} + ... + c_{2g} is symplectic.
struct PeriodData {
  CMatrix a_periods;      // (differential k, cycle i)
  CMatrix b_periods;
  CMatrix normalization;  // rows give normalized omega_j in the x^k dx / y basis
  RiemannMatrix tau;
  std::vector<int> chain_orientation;  // +1/-1 per chain cycle
  int nodes_used = 0;
};

/// Periods by Gauss-Chebyshev quadrature on the cuts, doubling nodes until
/// successive estimates differ by less than tol.
PeriodData compute_period_data(const HyperellipticCurve& curve, double tol = 1e-12);

/// 2 * integral of x^k dx / y from e_k to e_{k+1} (0-based chain index k)
/// on the branch used by the chain cycle, before orientation fixing.
CVector chain_cycle_integral(const HyperellipticCurve& curve, int k, double tol, int* nodes_used = nullptr);

}  // namespace thetakit
