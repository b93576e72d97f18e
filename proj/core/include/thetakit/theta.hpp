#pragma once

#include <vector>

#include "thetakit/periods.hpp"
#include "thetakit/scaled.hpp"

namespace thetakit {

/// Half-integer characteristic [a; b] with a, b in {0, 1/2}^g.
struct Characteristic {
  Eigen::VectorXd a;
  Eigen::VectorXd b;

  static Characteristic zero(int g) { return {Eigen::VectorXd::Zero(g), Eigen::VectorXd::Zero(g)}; }
  int genus() const { return static_cast<int>(a.size()); }
  /// 0 for even, 1 for odd.
  int parity() const;
  /// Shift tau * a + b realizing the characteristic as a translation.
  CVector shift(const RiemannMatrix& tau) const;
  bool operator==(const Characteristic& o) const { return a == o.a && b == o.b; }
};

/// All 2^{2g} characteristics in lexicographic order of (a, b) bit patterns.
std::vector<Characteristic> characteristics(int g);

struct ThetaOptions {
  double tol = 1e-13;
};

/// theta[a;b](z, tau) = sum_n exp(i pi (n+a)^T tau (n+a) + 2 pi i (n+a)^T (z+b)).
///
/// z is first reduced to z_r with z = z_r + tau N + M (N, M integer), the exact
/// quasi-periodicity factor is carried in the exponent, and the sum runs over
/// the lattice points inside ||T (n + a + c)|| <= R with T^T T = pi Im tau and
/// c = (Im tau)^{-1} Im z_r.
ScaledComplex theta(const CVector& z, const RiemannMatrix& tau, const Characteristic& ch, double tol = 1e-13);

/// Gradient with respect to z; same truncation policy with one extra unit of radius.
std::vector<ScaledComplex> theta_grad(const CVector& z, const RiemannMatrix& tau, const Characteristic& ch,
                                      double tol = 1e-13);

/// Value and gradient from one lattice enumeration.
struct ThetaJet {
  ScaledComplex value;
  std::vector<ScaledComplex> grad;
};
ThetaJet theta_jet(const CVector& z, const RiemannMatrix& tau, const Characteristic& ch, double tol = 1e-13);

/// Truncation radius R for a tolerance: the smallest R (in steps of 0.05)
/// whose lattice tail bound, relative to the worst-case leading term, is below
/// tol, plus a 0.5 safety margin.  Memoized per (tau, tol).
double theta_radius(const RiemannMatrix& tau, double tol);

/// Length of the shortest nonzero vector of the lattice T Z^g (T upper triangular).
double shortest_lattice_vector_of(const Eigen::MatrixXd& T);

/// Reduce v modulo Z^g + tau Z^g; returns the representative with
/// (Im tau)^{-1} Im v and Re v in [-1/2, 1/2].
CVector reduce_mod_lattice(const CVector& v, const RiemannMatrix& tau);

/// Euclidean norm of the lattice-reduced v; zero iff v is a lattice point.
double lattice_distance(const CVector& v, const RiemannMatrix& tau);

}  // namespace thetakit
