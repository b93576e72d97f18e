#include <cmath>

#include "doctest.h"
#include "thetakit/scaled.hpp"

using thetakit::cplx;
using thetakit::ScaledComplex;

TEST_CASE("mantissa is normalized into [1, 2)") {
  for (cplx v : {cplx(3.0, -4.0), cplx(1e-300, 0.0), cplx(0.0, 7e250), cplx(-1.0, 0.0)}) {
    const ScaledComplex s(v);
    CHECK(std::abs(s.mantissa()) >= 1.0);
    CHECK(std::abs(s.mantissa()) < 2.0);
    CHECK(std::abs(s.value() - v) <= 1e-14 * std::abs(v));
  }
  CHECK(ScaledComplex(cplx(0.0, 0.0)).is_zero());
  CHECK(ScaledComplex::zero().mantissa() == cplx(0.0, 0.0));
}

TEST_CASE("products beyond double range stay representable") {
  const ScaledComplex big = ScaledComplex::from_exp(cplx(800.0, 0.3));
  const ScaledComplex sq = big * big;
  CHECK(std::isinf(std::abs(sq.value())));
  CHECK(sq.log_abs() == doctest::Approx(1600.0));
  const ScaledComplex back = sq / big / big;
  CHECK(std::abs(back.value() - 1.0) < 1e-13);
}

TEST_CASE("from_exp matches std::exp in range") {
  const cplx w(2.5, -1.25);
  CHECK(std::abs(ScaledComplex::from_exp(w).value() - std::exp(w)) < 1e-13 * std::abs(std::exp(w)));
}

TEST_CASE("sums align exponents") {
  const ScaledComplex a = ScaledComplex::from_exp(cplx(1000.0, 0.0));
  const ScaledComplex b = ScaledComplex::from_exp(cplx(1000.0 + std::log(3.0), 0.0));
  CHECK((a + b).log_abs() == doctest::Approx(1000.0 + std::log(4.0)));
  CHECK((b - b).is_zero());
  CHECK((a + ScaledComplex::zero()).log_abs() == doctest::Approx(1000.0));
}

TEST_CASE("pow and sqrt") {
  const ScaledComplex z(cplx(-0.3, 1.7));
  CHECK(std::abs(z.pow(5).value() - std::pow(cplx(-0.3, 1.7), 5)) < 1e-12);
  CHECK(std::abs(z.pow(-2).value() - 1.0 / (cplx(-0.3, 1.7) * cplx(-0.3, 1.7))) < 1e-13);
  CHECK(std::abs(z.sqrt().value() - std::sqrt(cplx(-0.3, 1.7))) < 1e-14);
}

TEST_CASE("relative difference") {
  const ScaledComplex a = ScaledComplex::from_exp(cplx(900.0, 0.0));
  CHECK(relative_difference(a, a) == 0.0);
  CHECK(relative_difference(ScaledComplex::zero(), ScaledComplex::zero()) == 0.0);
  CHECK(relative_difference(a, -a) == doctest::Approx(2.0));
  CHECK(relative_difference(a, a * ScaledComplex(cplx(1.0 + 1e-9, 0.0))) == doctest::Approx(1e-9).epsilon(1e-3));
}
