#include <cmath>

#include <Eigen/Cholesky>

#include "doctest.h"
#include "fixtures.hpp"

using namespace thetakit;

namespace {

const DoubleCover& cover() {
  static const DoubleCover D(fixtures::cover_f1(), fixtures::cover_f2());
  return D;
}

}  // namespace

TEST_CASE("cover construction") {
  const DoubleCover& D = cover();
  CHECK(D.base_genus() == 2);
  CHECK(D.cover_genus() == 3);
  const CMatrix& t = D.cover().tau().tau();
  CHECK(t.rows() == 3);
  CHECK((t - t.transpose()).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(Eigen::LLT<Eigen::MatrixXd>(t.imag()).info() == Eigen::Success);
  CHECK(D.deck_eigen_error() < 1e-8);
  CHECK(D.pullback_lattice_error() < 1e-9);
  const CMatrix& S = D.deck_matrix();
  CHECK((S * S - CMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("factorizations that do not define an unramified double cover") {
  auto code_of = [](std::vector<cplx> f1, std::vector<cplx> f2) {
    try {
      DoubleCover(std::move(f1), std::move(f2));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ConfigError;
  };
  const std::vector<cplx> quad = fixtures::cover_f1();
  CHECK(code_of({{1.0, 0.0}, {1.0, 0.0}}, {{0.0, 0.0}, {-1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}) ==
        ErrorCode::NotEvenPartition);  // odd f1
  CHECK(code_of(quad, {{1.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}) == ErrorCode::NotEvenPartition);  // even f2
  CHECK(code_of({{0.1, 0.0}, {0.2, 0.0}, {-1.3, 0.0}, {0.0, 0.0}, {1.0, 0.0}}, {{0.5, 0.0}, {1.0, 0.0}}) ==
        ErrorCode::NotImplemented);  // quartic f1
}

TEST_CASE("2-torsion bundle") {
  const DoubleCover& D = cover();
  CHECK(lattice_residual(2.0 * D.torsion(), D.base().tau()) < 1e-7);
  CHECK(lattice_residual(D.torsion(), D.base().tau()) > 1e-3);
}

TEST_CASE("deck map and projection") {
  const DoubleCover& D = cover();
  for (const auto& s : draw_cover_samples(D, 2, 3, 91)) {
    for (const auto& p : s) {
      const CurvePoint q = D.deck(p);
      const CurvePoint back = D.deck(q);
      CHECK(std::abs(back.x - p.x) < 1e-12);
      CHECK(std::abs(back.y - p.y) < 1e-10 * std::max(1.0, std::abs(p.y)));
      const CurvePoint gp = D.project(p), gq = D.project(q);
      CHECK(std::abs(gp.x - gq.x) < 1e-12);
      CHECK(std::abs(gp.y - gq.y) < 1e-10 * std::max(1.0, std::abs(gp.y)));
      CHECK(std::abs(gp.y * gp.y - D.base().curve().f(gp.x)) < 1e-10 * std::max(1.0, std::abs(gp.y * gp.y)));
      CHECK(std::abs(q.x - p.x) > 1e-6);
    }
  }
}

TEST_CASE("deck equivariance and pullback consistency of the Abel map") {
  const DoubleCover& D = cover();
  const RiemannMatrix& tc = D.cover().tau();
  for (const auto& s : draw_cover_samples(D, 2, 3, 92)) {
    for (const auto& p : s) {
      // A~(sigma p) = S A~(p) + c up to the cover lattice.
      CHECK(lattice_residual(D.abel(D.deck(p)) - D.abel_deck(p), tc) < 1e-8);
      CHECK(lattice_residual(D.base().abel_map(D.project(p)) - D.abel_base(p), D.base().tau()) < 1e-8);
      // A~(p) + A~(sigma p) is the pullback of A(gamma p).
      const CVector sum = D.abel(p) + D.abel_deck(p);
      const CVector pulled = D.pullback_matrix() * D.abel_base(p) + D.pulled_base_point();
      CHECK(lattice_residual(sum - pulled, tc) < 1e-8);
    }
  }
}

TEST_CASE("prime form pullback") {
  const DoubleCover& D = cover();
  const auto r = check_prime_form_pullback(D, draw_cover_samples(D, 1, 11, 93), 1e-6);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.samples.size() == 10);
}

TEST_CASE("direct image") {
  const DoubleCover& D = cover();
  const auto N = fixtures::degree0({0.13, 0.07}, {-0.21, 0.11});
  for (int m : {1, 2}) {
    const auto r = check_direct_image(D, N, draw_cover_samples(D, m, 5, 94), 1e-6);
    CHECK(r.verdict == Verdict::Pass);
  }
  // y~_1 -> sigma y~_1 leaves Z unchanged; the lifts move by a lattice
  // vector, so both sides pick up the same automorphy factor.
  auto samples = draw_cover_samples(D, 1, 3, 95);
  const auto a = check_direct_image(D, N, samples, 1e-6);
  for (auto& s : samples) s[1] = D.deck(s[1]);
  const auto b = check_direct_image(D, N, samples, 1e-6);
  CHECK(b.verdict == Verdict::Pass);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    CHECK(relative_difference(a.samples[i].lhs / b.samples[i].lhs, a.samples[i].rhs / b.samples[i].rhs) < 1e-8);
  }
  CHECK_THROWS_AS(check_direct_image(D, {N.vec, 1}, samples, 1e-6), Error);
}

TEST_CASE("the cover theta ratio satisfies the rank 1 addition formula on the cover") {
  const DoubleCover& D = cover();
  const ThetaSetting s = ThetaSetting::standard(D.cover_prime_form());
  const CVector e = fixtures::degree0({0.13, 0.07}, {-0.21, 0.11}).vec + D.base_prime_form().delta().shift(D.base().tau());
  const JacobianPoint pulled{D.cover_theta_argument(e) - s.eta.shift(D.cover().tau()), 0};
  const auto r = check_addition_formula(s, SplitBundle::line(pulled), draw_samples(D.cover_prime_form(), 2, 5, 96), 1e-8);
  CHECK(r.verdict == Verdict::Pass);
}

TEST_CASE("pushforward degree") {
  int deg = -1;
  CHECK(check_pushforward_degree(2, 3, 0, 1, &deg));
  CHECK(deg == 0);
  CHECK(check_pushforward_degree(2, 3, 3, 1, &deg));
  CHECK(deg == 3);
  CHECK(check_pushforward_degree(2, 3, 4, 2, &deg));
  CHECK(deg == 4);
  CHECK_FALSE(check_pushforward_degree(2, 4, 0, 1));
  CHECK(check_pushforward_degree(cover().base_genus(), cover().cover_genus(), 2, 1));
}

// Known failure, kept visible (README, "Known limitations"): the right-hand
// side vanishes at x~ = sigma y~ while the left-hand side does not.
TEST_CASE("inverse image" * doctest::should_fail()) {
  const DoubleCover& D = cover();
  const auto M = fixtures::degree0({0.13, 0.07}, {-0.21, 0.11});
  const auto r = check_inverse_image(D, M, draw_cover_samples(D, 1, 6, 97), 1e-6);
  CHECK(r.verdict == Verdict::Pass);
}
