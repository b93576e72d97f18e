#include "thetakit/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "thetakit/errors.hpp"

namespace thetakit {

cplx horner(const std::vector<cplx>& coeffs, cplx x) {
  cplx acc{};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

namespace {

std::vector<cplx> derivative(const std::vector<cplx>& c) {
  std::vector<cplx> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * static_cast<double>(k));
  return d;
}

bool lex_less(cplx a, cplx b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n < 1 || coeffs.back() == cplx{}) throw Error(ErrorCode::WrongDegree, "polynomial has no leading term");
  const auto d = derivative(coeffs);
  // Cauchy bound for the initial circle.
  double bound = 0.0;
  for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(coeffs[k] / coeffs[n]));
  const double radius = 1.0 + bound;
  std::vector<cplx> z(n);
  for (int k = 0; k < n; ++k) {
    z[k] = std::polar(0.5 * radius, 2.0 * std::numbers::pi * (k + 0.25) / n + 0.4);
  }
  for (int it = 0; it < 500; ++it) {
    double moved = 0.0;
    for (int k = 0; k < n; ++k) {
      const cplx p = horner(coeffs, z[k]);
      const cplx dp = horner(d, z[k]);
      if (p == cplx{}) continue;
      const cplx ratio = p / dp;
      cplx sum{};
      for (int j = 0; j < n; ++j) {
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      }
      const cplx step = ratio / (1.0 - ratio * sum);
      z[k] -= step;
      moved = std::max(moved, std::abs(step) / (1.0 + std::abs(z[k])));
    }
    if (moved < 1e-15) break;
  }
  // Newton polish against the original polynomial.
  for (auto& r : z) {
    for (int it = 0; it < 8; ++it) {
      const cplx dp = horner(d, r);
      if (dp == cplx{}) break;
      const cplx step = horner(coeffs, r) / dp;
      r -= step;
      if (std::abs(step) < 1e-17 * (1.0 + std::abs(r))) break;
    }
  }
  std::sort(z.begin(), z.end(), lex_less);
  return z;
}

HyperellipticCurve::HyperellipticCurve(std::vector<cplx> f_coeffs) : coeffs_(std::move(f_coeffs)) {
  if (coeffs_.empty() || coeffs_.back() == cplx{}) {
    throw Error(ErrorCode::WrongDegree, "leading coefficient of f must be nonzero");
  }
  const int deg = static_cast<int>(coeffs_.size()) - 1;
  if (deg < 3 || deg % 2 == 0) {
    throw Error(ErrorCode::WrongDegree, "f must have odd degree 2g+1 >= 3, got degree " + std::to_string(deg));
  }
  genus_ = (deg - 1) / 2;
  roots_ = polynomial_roots(coeffs_);
  double max_abs = 0.0;
  for (auto r : roots_) max_abs = std::max(max_abs, std::abs(r));
  scale_ = max_abs + 1.0;
  double min_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    for (std::size_t j = i + 1; j < roots_.size(); ++j) min_dist = std::min(min_dist, std::abs(roots_[i] - roots_[j]));
  }
  if (min_dist <= 1e-9 * scale_) {
    throw Error(ErrorCode::NotSquarefree, "roots of f cluster within " + std::to_string(min_dist));
  }
  const auto d = derivative(coeffs_);
  for (auto r : roots_) {
    if (std::abs(horner(coeffs_, r)) > 1e-10 * std::abs(horner(d, r)) * scale_) {
      throw Error(ErrorCode::NotSquarefree, "root polishing failed to converge");
    }
  }
}

cplx HyperellipticCurve::f(cplx x) const { return horner(coeffs_, x); }

cplx HyperellipticCurve::f_prime(cplx x) const { return horner(derivative(coeffs_), x); }

CurvePoint HyperellipticCurve::point(cplx x, int sheet) const {
  CurvePoint p;
  p.x = x;
  p.sheet = sheet >= 0 ? 1 : -1;
  p.y = static_cast<double>(p.sheet) * std::sqrt(f(x));
  p.is_branch = branch_index_near(x, 1e-12 * scale_) >= 0;
  if (p.is_branch) p.y = 0.0;
  return p;
}

CurvePoint HyperellipticCurve::branch_point(int k) const {
  CurvePoint p;
  p.x = roots_.at(static_cast<std::size_t>(k));
  p.y = 0.0;
  p.is_branch = true;
  return p;
}

CurvePoint HyperellipticCurve::conjugate(const CurvePoint& p) const {
  CurvePoint q = p;
  q.y = -p.y;
  q.sheet = -p.sheet;
  return q;
}

int HyperellipticCurve::branch_index_near(cplx x, double eps) const {
  for (std::size_t k = 0; k < roots_.size(); ++k) {
    if (std::abs(x - roots_[k]) <= eps) return static_cast<int>(k);
  }
  return -1;
}

std::vector<Differential> HyperellipticCurve::differential_basis() const {
  std::vector<Differential> out;
  for (int k = 0; k < genus_; ++k) out.push_back({k});
  return out;
}

cplx HyperellipticCurve::evaluate(const Differential& w, const CurvePoint& p) const {
  if (p.at_infinity || p.is_branch || std::abs(p.y) == 0.0) {
    throw Error(ErrorCode::EvaluationAtBranchPoint, "differential coefficient against dx is singular at a branch point");
  }
  return std::pow(p.x, w.k) / p.y;
}

CVector HyperellipticCurve::differentials_at(const CurvePoint& p) const {
  CVector out(genus_);
  for (int k = 0; k < genus_; ++k) out(k) = evaluate({k}, p);
  return out;
}

int continue_sheet(const HyperellipticCurve& curve, const std::vector<cplx>& path, int start_sheet) {
  if (path.size() < 2) return start_sheet;
  const double guard = 1e-6 * curve.scale();
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    for (auto e : curve.branch_points()) {
      const cplx a = path[i];
      const cplx b = path[i + 1];
      const cplx ab = b - a;
      double t = std::norm(ab) > 0 ? std::real((e - a) * std::conj(ab)) / std::norm(ab) : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      if (std::abs(a + t * ab - e) <= guard) {
        throw Error(ErrorCode::PathTooCloseToBranchPoint, "continuation path passes a branch point");
      }
    }
  }
  cplx y = static_cast<double>(start_sheet >= 0 ? 1 : -1) * std::sqrt(curve.f(path.front()));
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const cplx a = path[i];
    const cplx b = path[i + 1];
    double s = 0.0;
    double h = 1.0 / 64.0;
    cplx fprev = curve.f(a);
    while (s < 1.0) {
      const double step = std::min(h, 1.0 - s);
      const cplx fnext = curve.f(a + (b - a) * (s + step));
      const double dphase = std::abs(std::arg(fnext / fprev));
      if (dphase > std::numbers::pi / 2 && step > 1e-12) {
        h = step / 2;
        continue;
      }
      // sqrt(fnext/fprev) with |phase| <= pi/2 is the continuous branch.
      y *= std::sqrt(fnext / fprev);
      fprev = fnext;
      s += step;
      if (dphase < std::numbers::pi / 8) h = std::min(2 * h, 1.0 / 16.0);
    }
  }
  const cplx principal = std::sqrt(curve.f(path.back()));
  return std::abs(y - principal) <= std::abs(y + principal) ? 1 : -1;
}

}  // namespace thetakit
