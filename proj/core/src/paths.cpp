#include "thetakit/paths.hpp"

#include <algorithm>
#include <cmath>

#include "thetakit/errors.hpp"
#include "thetakit/quadrature.hpp"

namespace thetakit {

SegmentBranch::SegmentBranch(const HyperellipticCurve& curve, cplx u, cplx v, std::vector<int> skip)
    : sqrt_lc_(std::sqrt(curve.leading())) {
  const cplx mid = 0.5 * (u + v);
  const auto& roots = curve.branch_points();
  for (int m = 0; m < static_cast<int>(roots.size()); ++m) {
    if (std::find(skip.begin(), skip.end(), m) != skip.end()) continue;
    cplx dir = mid - roots[m];
    dir = std::abs(dir) > 0 ? dir / std::abs(dir) : cplx(1.0, 0.0);
    centers_.push_back(roots[m]);
    rot_.push_back(dir);
    sqrt_rot_.push_back(std::sqrt(dir));
  }
}

cplx SegmentBranch::operator()(cplx x) const {
  cplx acc = sqrt_lc_;
  for (std::size_t m = 0; m < centers_.size(); ++m) acc *= sqrt_rot_[m] * std::sqrt((x - centers_[m]) / rot_[m]);
  return acc;
}

namespace {

double detour_radius(const HyperellipticCurve& c) { return 1e-3 * c.scale(); }

cplx powi(cplx x, int k) {
  cplx r(1.0, 0.0);
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

// Inserts waypoints until no leg passes within the detour radius of a branch
// point other than its own endpoints.
std::vector<cplx> route(const HyperellipticCurve& curve, cplx from, cplx to) {
  const double rho = detour_radius(curve);
  const double same = 1e-12 * curve.scale();
  std::vector<cplx> pts{from, to};
  for (int pass = 0; pass < 32; ++pass) {
    bool changed = false;
    for (std::size_t i = 0; i + 1 < pts.size() && !changed; ++i) {
      const cplx a = pts[i];
      const cplx b = pts[i + 1];
      const cplx ab = b - a;
      for (auto e : curve.branch_points()) {
        if (std::abs(e - a) <= same || std::abs(e - b) <= same) continue;
        const double t = std::clamp(std::real((e - a) * std::conj(ab)) / std::norm(ab), 0.0, 1.0);
        const cplx c = a + t * ab;
        if (std::abs(c - e) >= rho || t <= 0.0 || t >= 1.0) continue;
        cplx n = c - e;
        n = std::abs(n) > same ? n / std::abs(n) : cplx(0.0, 1.0) * ab / std::abs(ab);
        pts.insert(pts.begin() + static_cast<std::ptrdiff_t>(i) + 1, e + 2.0 * rho * n);
        changed = true;
        break;
      }
    }
    if (!changed) return pts;
  }
  throw Error(ErrorCode::PathDegenerate, "could not route path around branch points");
}

struct LegOut {
  CVector integral;
  cplx end_y;
};

// One straight leg.  `start_branch`/`end_branch` are branch indices of the
// endpoints or -1.  For a regular start, the branch is matched to `start_y`.
LegOut integrate_leg(const HyperellipticCurve& curve, cplx u, cplx v, int start_branch, int end_branch,
                     cplx start_y, double tol) {
  const int g = curve.genus();
  quad::AdaptiveOptions opts;
  opts.abs_tol = tol;
  opts.rel_tol = tol;
  if (start_branch >= 0) {
    const cplx a = u;
    const SegmentBranch r(curve, u, v, {start_branch});
    const cplx sq = std::sqrt(v - a);
    auto fn = [&](double s) {
      const cplx x = a + (v - a) * (s * s);
      const cplx rx = r(x);
      CVector out(g);
      for (int l = 0; l < g; ++l) out(l) = 2.0 * powi(x, l) * sq / rx;
      return out;
    };
    return {quad::gauss_kronrod(fn, 0.0, 1.0, g, opts), sq * r(v)};
  }
  if (end_branch >= 0) {
    const cplx b = v;
    const SegmentBranch r(curve, u, v, {end_branch});
    const cplx sq = std::sqrt(u - b);
    const cplx y0 = sq * r(u);
    const double eps = std::abs(y0 - start_y) <= std::abs(y0 + start_y) ? 1.0 : -1.0;
    auto fn = [&](double s) {
      const cplx x = b + (u - b) * (s * s);
      const cplx rx = r(x);
      CVector out(g);
      for (int l = 0; l < g; ++l) out(l) = -2.0 * powi(x, l) * sq / (eps * rx);
      return out;
    };
    return {quad::gauss_kronrod(fn, 0.0, 1.0, g, opts), cplx(0.0, 0.0)};
  }
  const SegmentBranch r(curve, u, v);
  const cplx y0 = r(u);
  const double eps = std::abs(y0 - start_y) <= std::abs(y0 + start_y) ? 1.0 : -1.0;
  auto fn = [&](double s) {
    const cplx x = u + (v - u) * s;
    const cplx y = eps * r(x);
    CVector out(g);
    for (int l = 0; l < g; ++l) out(l) = powi(x, l) * (v - u) / y;
    return out;
  };
  return {quad::gauss_kronrod(fn, 0.0, 1.0, g, opts), eps * r(v)};
}

RawPath integrate_polyline(const HyperellipticCurve& curve, const std::vector<cplx>& pts, int start_branch,
                           int end_branch, double tol) {
  RawPath out;
  out.waypoints = pts;
  out.integral = CVector::Zero(curve.genus());
  cplx y{};
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const int sb = i == 0 ? start_branch : -1;
    const int eb = i + 2 == pts.size() ? end_branch : -1;
    if (sb >= 0 && eb >= 0) {
      const cplx mid = 0.5 * (pts[i] + pts[i + 1]);
      auto first = integrate_leg(curve, pts[i], mid, sb, -1, y, tol);
      auto second = integrate_leg(curve, mid, pts[i + 1], -1, eb, first.end_y, tol);
      out.integral += first.integral + second.integral;
      y = second.end_y;
      continue;
    }
    auto leg = integrate_leg(curve, pts[i], pts[i + 1], sb, eb, y, tol);
    out.integral += leg.integral;
    y = leg.end_y;
  }
  out.end_y = y;
  return out;
}

}  // namespace

RawPath integrate_from_branch(const HyperellipticCurve& curve, int start_branch, const CurvePoint& target,
                              double tol, const std::vector<cplx>& via) {
  if (target.at_infinity) throw Error(ErrorCode::InvalidArgument, "use integrate_to_infinity for infinity");
  const cplx start = curve.branch_points().at(static_cast<std::size_t>(start_branch));
  const double same = 1e-12 * curve.scale();
  int end_branch = curve.branch_index_near(target.x, same);
  if (end_branch < 0 && curve.branch_index_near(target.x, 1e-6 * curve.scale()) >= 0) {
    throw Error(ErrorCode::PathDegenerate, "point lies within 1e-6*scale of a branch point");
  }
  if (end_branch == start_branch) {
    RawPath empty;
    empty.waypoints = {start};
    empty.integral = CVector::Zero(curve.genus());
    return empty;
  }
  std::vector<cplx> stops = via;
  stops.push_back(end_branch >= 0 ? curve.branch_points()[end_branch] : target.x);
  std::vector<cplx> pts{start};
  for (cplx stop : stops) {
    const auto leg = route(curve, pts.back(), stop);
    pts.insert(pts.end(), leg.begin() + 1, leg.end());
  }
  RawPath path = integrate_polyline(curve, pts, start_branch, end_branch, tol);
  if (end_branch < 0 && std::abs(path.end_y - target.y) > std::abs(path.end_y + target.y)) {
    // The start is a branch point, so flipping the sheet of the whole path is free.
    path.integral = -path.integral;
    path.end_y = -path.end_y;
  }
  return path;
}

CVector integrate_to_infinity(const HyperellipticCurve& curve, int start_branch, double x0, double tol) {
  const int g = curve.genus();
  const cplx start = curve.branch_points().at(static_cast<std::size_t>(start_branch));
  const cplx far(x0, 0.0);
  const auto pts = route(curve, start, far);
  RawPath finite = integrate_polyline(curve, pts, start_branch, -1, tol);

  const cplx sqrt_lc = std::sqrt(curve.leading());
  const cplx sqrt_x0 = std::sqrt(far);
  const auto& roots = curve.branch_points();
  auto big_y = [&](double t) {
    // sqrt(f(x0/t^2)) * t^(2g+1) / x0^(g+1/2), continuous for t in (0, 1].
    cplx acc = sqrt_lc;
    for (auto e : roots) acc *= std::sqrt(1.0 - e * (t * t) / far);
    return acc;
  };
  const cplx y_at_x0 = big_y(1.0) * std::pow(far, g) * sqrt_x0;
  const double eps = std::abs(y_at_x0 - finite.end_y) <= std::abs(y_at_x0 + finite.end_y) ? 1.0 : -1.0;
  quad::AdaptiveOptions opts;
  opts.abs_tol = tol;
  opts.rel_tol = tol;
  auto fn = [&](double t) {
    CVector out(g);
    const cplx denom = eps * big_y(t);
    for (int l = 0; l < g; ++l) {
      // x^l dx / y with x = x0 / t^2; integrated from t = 1 down to 0.
      const cplx pref = -2.0 * std::pow(far, l + 1 - g) / sqrt_x0;
      out(l) = -pref * std::pow(t, 2 * g - 2 - 2 * l) / denom;
    }
    return out;
  };
  return finite.integral + quad::gauss_kronrod(fn, 0.0, 1.0, g, opts);
}

}  // namespace thetakit
