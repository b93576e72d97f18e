#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>

#include "doctest.h"
#include "fixtures.hpp"

using namespace thetakit;

namespace {

std::vector<cplx> circle(cplx center, double r, int n) {
  std::vector<cplx> path;
  for (int k = 0; k <= n; ++k) path.push_back(center + r * std::polar(1.0, 2.0 * std::numbers::pi * k / n));
  return path;
}

bool has_root(const HyperellipticCurve& c, cplx z) {
  for (cplx r : c.branch_points()) {
    if (std::abs(r - z) < 1e-12) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("branch points") {
  const HyperellipticCurve e(fixtures::lemniscatic());
  CHECK(e.genus() == 1);
  REQUIRE(e.branch_points().size() == 3);
  CHECK(has_root(e, -1.0));
  CHECK(has_root(e, 0.0));
  CHECK(has_root(e, 1.0));
  CHECK(e.base_point() == cplx(-1.0, 0.0));

  const HyperellipticCurve q(fixtures::quintic());
  CHECK(q.genus() == 2);
  for (int k = 0; k < 5; ++k) CHECK(has_root(q, std::polar(1.0, 2.0 * std::numbers::pi * k / 5)));
  for (cplx r : q.branch_points()) CHECK(std::abs(q.f(r)) < 1e-12 * q.scale());
}

TEST_CASE("degenerate input") {
  CHECK_THROWS_AS(HyperellipticCurve({0.0, 0.0, -1.0, 1.0}), Error);  // x^3 - x^2
  try {
    HyperellipticCurve({0.0, 0.0, -1.0, 1.0});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSquarefree);
  }
  try {
    HyperellipticCurve({1.0, 0.0, 0.0, 0.0, 1.0});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WrongDegree);
  }
}

TEST_CASE("differentials") {
  const HyperellipticCurve q(fixtures::quintic());
  const auto basis = q.differential_basis();
  REQUIRE(basis.size() == 2);
  CHECK(basis[0].k == 0);
  CHECK(basis[1].k == 1);
  const CurvePoint p = q.point(2.0, 1);
  CHECK(std::abs(q.evaluate(basis[0], p) - 1.0 / std::sqrt(31.0)) < 1e-15);
  CHECK(std::abs(q.evaluate(basis[1], p) - 2.0 / std::sqrt(31.0)) < 1e-15);
  CHECK_THROWS_AS(q.evaluate(basis[0], q.point(1.0)), Error);
}

TEST_CASE("sheet continuation follows square-root monodromy") {
  const HyperellipticCurve c(fixtures::lemniscatic());
  CHECK(continue_sheet(c, circle(1.0, 0.3, 64), 1) == -1);
  CHECK(continue_sheet(c, circle(0.5, 0.8, 64), 1) == 1);   // around 0 and 1
  CHECK(continue_sheet(c, circle(3.0, 0.5, 64), -1) == -1);  // around nothing
  auto twice = circle(1.0, 0.3, 64);
  const auto again = circle(1.0, 0.3, 64);
  twice.insert(twice.end(), again.begin() + 1, again.end());
  CHECK(continue_sheet(c, twice, 1) == 1);
}

TEST_CASE("lemniscatic periods give tau = i") {
  const PeriodData pd = compute_period_data(HyperellipticCurve(fixtures::lemniscatic()));
  cplx t = pd.tau.tau()(0, 0);
  t -= std::round(t.real());
  if (std::abs(t) < 1.0) t = -1.0 / t;
  CHECK(std::abs(t - cplx(0.0, 1.0)) < 1e-9);
}

TEST_CASE("Riemann relations on genus 2 curves") {
  for (const auto& f : {fixtures::genus2(), fixtures::genus2_real(), fixtures::quintic(), fixtures::cover_base()}) {
    for (double tol : {1e-8, 1e-12}) {
      const PeriodData pd = compute_period_data(HyperellipticCurve(f), tol);
      const CMatrix& t = pd.tau.tau();
      CHECK((t - t.transpose()).cwiseAbs().maxCoeff() < 1e-9);
      CHECK(Eigen::LLT<Eigen::MatrixXd>(t.imag()).info() == Eigen::Success);
    }
  }
}

TEST_CASE("halving the quadrature tolerance moves periods by less than the coarse tolerance") {
  const HyperellipticCurve c(fixtures::genus2());
  for (double tol : {1e-6, 1e-8, 1e-10}) {
    const PeriodData a = compute_period_data(c, tol), b = compute_period_data(c, tol / 2.0);
    CHECK((a.a_periods - b.a_periods).cwiseAbs().maxCoeff() < tol);
    CHECK((a.b_periods - b.b_periods).cwiseAbs().maxCoeff() < tol);
  }
  CHECK_THROWS_AS(compute_period_data(c, 1e-3), Error);
}
