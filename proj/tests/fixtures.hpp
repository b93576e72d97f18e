#pragma once

// Curves shared by the unit, property and acceptance tests.

#include <vector>

#include "thetakit/covering.hpp"
#include "thetakit/errors.hpp"

namespace fixtures {

using thetakit::cplx;

// Genus 2, generic complex branch points.
inline std::vector<cplx> genus2() {
  return {{0.3, 0.1}, {-1.2, 0.4}, {0.5, -0.7}, {0.2, 1.1}, {-0.6, 0.2}, {1.0, 0.3}};
}

// y^2 = x^5 - 0.5 x^2 - x + 2: real coefficients.
inline std::vector<cplx> genus2_real() { return {{2.0, 0.0}, {-1.0, 0.0}, {-0.5, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}; }

// y^2 = x^5 - 1
inline std::vector<cplx> quintic() { return {{-1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}; }

// y^2 = x^3 - x
inline std::vector<cplx> lemniscatic() { return {{0.0, 0.0}, {-1.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}; }

// Pinned genus 2 -> genus 3 cover: f1 quadratic, f2 = l (x - c1)(x - c2)(x - c3).
inline std::vector<cplx> cover_f1() { return {{0.3, 0.2}, {0.4, -0.1}, {1.0, 0.0}}; }
inline std::vector<cplx> cover_f2() {
  const cplx l(0.5, 0.2), c1(-1.1, 0.3), c2(0.9, 0.6), c3(0.2, -1.0);
  return {-l * c1 * c2 * c3, l * (c1 * c2 + c1 * c3 + c2 * c3), -l * (c1 + c2 + c3), l};
}

inline std::vector<cplx> cover_base() {
  const auto f1 = cover_f1(), f2 = cover_f2();
  std::vector<cplx> f(f1.size() + f2.size() - 1);
  for (std::size_t i = 0; i < f1.size(); ++i) {
    for (std::size_t k = 0; k < f2.size(); ++k) f[i + k] += f1[i] * f2[k];
  }
  return f;
}

inline thetakit::JacobianPoint degree0(cplx a, cplx b) {
  thetakit::CVector v(2);
  v << a, b;
  return {v, 0};
}

}  // namespace fixtures
