#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "thetakit/theta.hpp"

using namespace thetakit;

namespace {

const Jacobian& genus2() {
  static const Jacobian J(HyperellipticCurve(fixtures::genus2()));
  return J;
}

}  // namespace

TEST_CASE("Abel map basics") {
  const Jacobian& J = genus2();
  const auto& c = J.curve();
  CHECK(J.abel_map(c.branch_point(0)).norm() < 1e-14);
  for (int k = 0; k < 5; ++k) CHECK(lattice_residual(2.0 * J.abel_map(c.branch_point(k)), J.tau()) < 1e-8);
  CHECK(lattice_residual(2.0 * J.abel_infinity(), J.tau()) < 1e-8);
  CHECK((J.abel_infinity_at(1e3 * c.scale()) - J.abel_infinity_at(2e3 * c.scale())).norm() < 1e-10);
}

TEST_CASE("Abel's theorem for div(y) and div(x - x0)") {
  const Jacobian& J = genus2();
  const CVector inf = J.abel_infinity();
  CVector dy = -5.0 * inf;
  for (int k = 0; k < 5; ++k) dy += J.abel_map(J.curve().branch_point(k));
  CHECK(lattice_residual(dy, J.tau()) < 1e-6);
  for (const auto& p : J.sample_regular_configuration(5, 3)) {
    const CVector d = J.abel_map(p) + J.abel_map(J.curve().conjugate(p)) - 2.0 * inf;
    CHECK(lattice_residual(d, J.tau()) < 1e-6);
  }
}

TEST_CASE("additivity and path independence up to the lattice") {
  const Jacobian& J = genus2();
  const auto pts = J.sample_regular_configuration(2, 9);
  Divisor d;
  d.add(pts[0]).add(pts[1], 2).add(pts[2], -3);
  CHECK(d.degree() == 0);
  const CVector sum = J.abel_map(pts[0]) + 2.0 * J.abel_map(pts[1]) - 3.0 * J.abel_map(pts[2]);
  CHECK((J.abel(d) - sum).norm() < 1e-13);
  for (const auto& p : pts) {
    const CVector detour = J.abel_map_via(p, {cplx(0.0, 2.2), cplx(-2.0, -1.5)});
    CHECK(lattice_residual(detour - J.abel_map(p), J.tau()) < 1e-8);
  }
}

TEST_CASE("Riemann vector") {
  const Jacobian& J = genus2();
  const CVector& K = J.riemann_vector();
  CHECK(lattice_residual(2.0 * K, J.tau()) < 1e-9);
  for (int k = 0; k < 5; ++k) {
    CHECK(J.theta_divisor_membership(J.abel_map(J.curve().branch_point(k)) + K) == Membership::On);
  }
  for (const auto& p : J.sample_regular_configuration(3, 17)) {
    CHECK(J.theta_divisor_membership(J.abel_map(p) + K) == Membership::On);
  }
  // Two generic points minus two copies of infinity: a generic class.
  const auto pts = J.sample_regular_configuration(1, 5);
  const CVector e = J.abel_map(pts[0]) + J.abel_map(pts[1]) - 2.0 * J.abel_infinity() + K;
  CHECK(J.theta_level(e) > 1e-3);
  CHECK(J.theta_divisor_membership(e) == Membership::Off);
}

TEST_CASE("dead band is indeterminate") {
  const Jacobian& J = genus2();
  const CVector on = J.abel_map(J.curve().branch_point(2)) + J.riemann_vector();
  const CVector dir = CVector::Constant(2, cplx(1.0, 0.5));
  double lo = 0.0, hi = 0.5;
  REQUIRE(J.theta_level(on + hi * dir) > 1e-4);
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (J.theta_level(on + mid * dir) < 1e-5 ? lo : hi) = mid;
  }
  CHECK(J.theta_divisor_membership(on + lo * dir) == Membership::Indeterminate);
}

TEST_CASE("sampling") {
  const Jacobian& J = genus2();
  const auto a = J.sample_regular_configuration(1, 42);
  const auto b = J.sample_regular_configuration(1, 42);
  REQUIRE(a.size() == 2);
  CHECK(a[0].x == b[0].x);
  CHECK(a[1].y == b[1].y);
  for (const auto& p : J.sample_regular_configuration(3, 8)) {
    CHECK(std::abs(p.y * p.y - J.curve().f(p.x)) < 1e-12 * std::abs(J.curve().f(p.x)));
  }
  SamplingConstraints impossible;
  impossible.min_separation = 10.0;
  try {
    J.sample_regular_configuration(2, 1, impossible);
    FAIL("expected SamplingExhausted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SamplingExhausted);
  }
}
