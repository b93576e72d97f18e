#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "thetakit/curve.hpp"
#include "thetakit/periods.hpp"

namespace thetakit {

/// Finite formal sum of curve points (infinity allowed).
struct Divisor {
  std::vector<std::pair<CurvePoint, int>> terms;

  Divisor& add(const CurvePoint& p, int multiplicity = 1) {
    terms.emplace_back(p, multiplicity);
    return *this;
  }
  int degree() const {
    int d = 0;
    for (const auto& t : terms) d += t.second;
    return d;
  }
};

/// Divisor class: Abel image from b1 plus its degree.
struct JacobianPoint {
  CVector vec;
  int degree = 0;
};

enum class Membership { Off, On, Indeterminate };

const char* to_string(Membership m);

struct SamplingConstraints {
  double min_separation = 1e-2;    // pairwise |x_i - x_j| / scale
  double branch_clearance = 5e-2;  // |x - e_k| / scale
  double radius = 1.0;             // sampling disk radius / scale
  /// Extra acceptance test on the full configuration (e.g. theta denominators
  /// off the dead band).  Returning false triggers a resample.
  std::function<bool(const std::vector<CurvePoint>&)> accept;
};

/// Curve, normalized periods and the Abel map with its caches.  Copies share
/// the caches; all methods are safe to call concurrently.
class Jacobian {
 public:
  explicit Jacobian(HyperellipticCurve curve, double quad_tol = 1e-12);

  const HyperellipticCurve& curve() const;
  const PeriodData& periods() const;
  const RiemannMatrix& tau() const;
  int genus() const { return curve().genus(); }
  double quad_tol() const;

  /// Normalized Abel map from b1 along the canonical path; memoized per point.
  CVector abel_map(const CurvePoint& p) const;
  /// Same integral along b1 -> via... -> p, not cached.
  CVector abel_map_via(const CurvePoint& p, const std::vector<cplx>& via) const;
  /// A(infinity) with the tail starting at 1e3 * scale; computed once.
  const CVector& abel_infinity() const;
  CVector abel_infinity_at(double x0) const;
  CVector abel(const Divisor& d) const;

  /// Half-period K with theta(A(D) + K) = 0 for every effective D of degree
  /// g - 1 (base point b1).  Throws RiemannVectorAmbiguous.
  const CVector& riemann_vector() const;

  /// |theta(e)| against the median over 32 fixed samples of the fundamental
  /// domain, both normalized by exp(-pi Im(e)^T (Im tau)^{-1} Im(e)) so the
  /// measure is lattice invariant.
  double theta_level(const CVector& e) const;
  /// On below 1e-6, Off above 1e-4, Indeterminate in between.
  Membership theta_divisor_membership(const CVector& e) const;

  /// 2m points in the disk, pairwise separated and clear of branch points;
  /// deterministic in seed.  Throws SamplingExhausted after 1000 rejections.
  std::vector<CurvePoint> sample_regular_configuration(int m, std::uint64_t seed,
                                                       const SamplingConstraints& c = {}) const;

 private:
  struct State;
  std::shared_ptr<State> s_;
};

/// Reduced distance of v to the period lattice.
double lattice_residual(const CVector& v, const RiemannMatrix& tau);

/// Deterministic uniform double in [0, 1) from a 64-bit generator.
double unit_uniform(std::uint64_t bits);

}  // namespace thetakit
