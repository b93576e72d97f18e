#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "thetakit/jacobian.hpp"
#include "thetakit/theta.hpp"

namespace thetakit {

/// A scaled value together with the power of the dx trivialization it
/// carries at each of its (at most two) arguments, counted in halves.
struct TrivializedValue {
  ScaledComplex value;
  int weight_x = 0;  // in units of 1/2
  int weight_y = 0;
};

/// Per-point tally of trivialization weights (in halves) for one side of an
/// identity.  Points are identified by their index in the sample.
class WeightLedger {
 public:
  void add(int point, int halves) { w_[point] += halves; }
  void add_pair(int p, int q, int halves_each) {
    add(p, halves_each);
    add(q, halves_each);
  }
  /// Nonzero entries only.
  std::map<int, int> entries() const;
  bool operator==(const WeightLedger& o) const { return entries() == o.entries(); }

 private:
  std::map<int, int> w_;
};

/// First odd characteristic (lexicographic order) whose theta gradient at 0
/// is above 1e-6 of the largest odd gradient.  Throws NoNonsingularOddCharacteristic.
Characteristic odd_characteristic(const RiemannMatrix& tau, double theta_tol = 1e-13);

/// Prime form E(P, Q) = theta[delta](A(Q) - A(P)) / (h(P) h(Q)) with
/// h(P)^2 = sum_i d_i theta[delta](0) omega_i(P) against dx.  The root of
/// h is fixed per point on first use; copies share the cache.
class PrimeForm {
 public:
  explicit PrimeForm(Jacobian jac, double theta_tol = 1e-13);
  PrimeForm(Jacobian jac, Characteristic delta, double theta_tol = 1e-13);

  const Jacobian& jacobian() const;
  const Characteristic& delta() const;
  double theta_tol() const;

  /// h(P), weight 1/2.  Throws HalfDiffVanishes near zeros of h^2.
  TrivializedValue half_diff(const CurvePoint& p) const;
  /// h(P)^2 before the root is taken.
  cplx half_diff_squared(const CurvePoint& p) const;
  /// E(P, Q), weight -1/2 at each argument.
  TrivializedValue operator()(const CurvePoint& p, const CurvePoint& q) const;
  /// E(P, Q) on explicitly chosen lifts A(P), A(Q) of the Abel images.
  TrivializedValue on_lifts(const CurvePoint& p, const CurvePoint& q, const CVector& ap, const CVector& aq) const;

  /// Drops the cached roots of h.  With seed 0 the principal root is used;
  /// any other seed picks a pseudo-random sign per point.
  void reset_signs(std::uint64_t seed = 0) const;

 private:
  struct State;
  std::shared_ptr<State> s_;
};

}  // namespace thetakit
