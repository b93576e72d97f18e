#include "thetakit/jacobian.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>

#include "thetakit/errors.hpp"
#include "thetakit/paths.hpp"
#include "thetakit/theta.hpp"

namespace thetakit {

const char* to_string(Membership m) {
  switch (m) {
    case Membership::Off:
      return "off";
    case Membership::On:
      return "on";
    case Membership::Indeterminate:
      return "indeterminate";
  }
  return "?";
}

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

double lattice_residual(const CVector& v, const RiemannMatrix& tau) { return lattice_distance(v, tau); }

namespace {

constexpr double kThetaTol = 1e-12;
constexpr double kOnThreshold = 1e-6;
constexpr double kOffThreshold = 1e-4;

using Key = std::array<double, 4>;

Key key_of(const CurvePoint& p) { return {p.x.real(), p.x.imag(), p.y.real(), p.y.imag()}; }

}  // namespace

struct Jacobian::State {
  HyperellipticCurve curve;
  double quad_tol;
  PeriodData periods;

  std::mutex abel_mutex;
  std::map<Key, CVector> abel_cache;

  std::once_flag inf_once;
  CVector inf;

  std::once_flag k_once;
  CVector K;

  std::once_flag median_once;
  double median_log = 0.0;

  State(HyperellipticCurve c, double tol) : curve(std::move(c)), quad_tol(tol), periods(compute_period_data(curve, tol)) {}

  double normalized_log(const CVector& e) const {
    const ScaledComplex t = theta(e, periods.tau, Characteristic::zero(curve.genus()), kThetaTol);
    const Eigen::VectorXd y = e.imag();
    const double gauss = std::numbers::pi * y.dot(periods.tau.imag_inverse() * y);
    return t.log_abs() - gauss;
  }
};

Jacobian::Jacobian(HyperellipticCurve curve, double quad_tol)
    : s_(std::make_shared<State>(std::move(curve), quad_tol)) {}

const HyperellipticCurve& Jacobian::curve() const { return s_->curve; }
const PeriodData& Jacobian::periods() const { return s_->periods; }
const RiemannMatrix& Jacobian::tau() const { return s_->periods.tau; }
double Jacobian::quad_tol() const { return s_->quad_tol; }

CVector Jacobian::abel_map(const CurvePoint& p) const {
  if (p.at_infinity) return abel_infinity();
  const Key key = key_of(p);
  {
    std::lock_guard<std::mutex> lock(s_->abel_mutex);
    auto it = s_->abel_cache.find(key);
    if (it != s_->abel_cache.end()) return it->second;
  }
  CVector v = abel_map_via(p, {});
  std::lock_guard<std::mutex> lock(s_->abel_mutex);
  // First writer wins so every caller sees the same path.
  return s_->abel_cache.emplace(key, std::move(v)).first->second;
}

CVector Jacobian::abel_map_via(const CurvePoint& p, const std::vector<cplx>& via) const {
  if (p.at_infinity) throw Error(ErrorCode::InvalidArgument, "abel_map_via does not accept infinity");
  const RawPath raw = integrate_from_branch(s_->curve, 0, p, 0.1 * s_->quad_tol, via);
  return s_->periods.normalization * raw.integral;
}

const CVector& Jacobian::abel_infinity() const {
  std::call_once(s_->inf_once, [this] { s_->inf = abel_infinity_at(1e3 * s_->curve.scale()); });
  return s_->inf;
}

CVector Jacobian::abel_infinity_at(double x0) const {
  return s_->periods.normalization * integrate_to_infinity(s_->curve, 0, x0, 0.1 * s_->quad_tol);
}

CVector Jacobian::abel(const Divisor& d) const {
  CVector acc = CVector::Zero(genus());
  for (const auto& [p, mult] : d.terms) acc += static_cast<double>(mult) * abel_map(p);
  return acc;
}

double Jacobian::theta_level(const CVector& e) const {
  std::call_once(s_->median_once, [this] {
    const int g = genus();
    std::mt19937_64 rng(0x7e7a5eedULL);
    std::vector<double> logs;
    for (int s = 0; s < 32; ++s) {
      Eigen::VectorXd u(g);
      Eigen::VectorXd v(g);
      for (int i = 0; i < g; ++i) u(i) = unit_uniform(rng());
      for (int i = 0; i < g; ++i) v(i) = unit_uniform(rng());
      const CVector z = tau().tau() * u.cast<cplx>() + v.cast<cplx>();
      logs.push_back(s_->normalized_log(z));
    }
    std::sort(logs.begin(), logs.end());
    s_->median_log = 0.5 * (logs[15] + logs[16]);
  });
  return std::exp(s_->normalized_log(e) - s_->median_log);
}

Membership Jacobian::theta_divisor_membership(const CVector& e) const {
  const double level = theta_level(e);
  if (level < kOnThreshold) return Membership::On;
  if (level <= kOffThreshold) return Membership::Indeterminate;
  return Membership::Off;
}

const CVector& Jacobian::riemann_vector() const {
  std::call_once(s_->k_once, [this] {
    const int g = genus();
    // Abel images of the 2g + 2 Weierstrass points.
    std::vector<CVector> w;
    for (int k = 0; k < 2 * g + 1; ++k) w.push_back(abel_map(curve().branch_point(k)));
    w.push_back(abel_infinity());

    // Effective divisors of degree g - 1 supported on Weierstrass points.
    std::vector<CVector> effective;
    std::vector<int> pick(static_cast<std::size_t>(g - 1));
    std::function<void(int, int)> choose = [&](int start, int depth) {
      if (effective.size() >= 32) return;
      if (depth == g - 1) {
        CVector acc = CVector::Zero(g);
        for (int idx : pick) acc += w[static_cast<std::size_t>(idx)];
        effective.push_back(acc);
        return;
      }
      for (int k = start; k < static_cast<int>(w.size()); ++k) {
        pick[static_cast<std::size_t>(depth)] = k;
        choose(k + 1, depth + 1);
      }
    };
    choose(0, 0);

    // Generic classes A(P_1 + ... + P_g - Q): not effective of degree g - 1.
    SamplingConstraints c;
    c.radius = 0.8;
    std::vector<CVector> generic;
    for (std::uint64_t s = 0; s < 4; ++s) {
      const auto pts = sample_regular_configuration(g + 1, 0x4b1dULL + s, c);
      CVector acc = -abel_map(pts[static_cast<std::size_t>(g)]);
      for (int i = 0; i < g; ++i) acc += abel_map(pts[static_cast<std::size_t>(i)]);
      generic.push_back(acc);
    }

    std::vector<CVector> survivors;
    for (const auto& ch : characteristics(g)) {
      const CVector K = ch.shift(tau());
      bool ok = true;
      for (const auto& d : effective) ok = ok && theta_level(d + K) < kOnThreshold;
      for (const auto& d : generic) ok = ok && theta_level(d + K) > 1e-3;
      if (ok) survivors.push_back(K);
    }
    if (survivors.size() != 1) {
      throw Error(ErrorCode::RiemannVectorAmbiguous,
                  std::to_string(survivors.size()) + " half-periods satisfy the vanishing conditions");
    }
    s_->K = survivors.front();
  });
  return s_->K;
}

std::vector<CurvePoint> Jacobian::sample_regular_configuration(int m, std::uint64_t seed,
                                                               const SamplingConstraints& c) const {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be positive");
  const HyperellipticCurve& C = curve();
  const double scale = C.scale();
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<CurvePoint> pts;
    bool ok = true;
    for (int i = 0; i < 2 * m && ok; ++i) {
      const double r = c.radius * scale * std::sqrt(unit_uniform(rng()));
      const double phi = 2.0 * std::numbers::pi * unit_uniform(rng());
      const int sheet = (rng() >> 63) != 0 ? 1 : -1;
      const cplx x = std::polar(r, phi);
      for (auto e : C.branch_points()) ok = ok && std::abs(x - e) > c.branch_clearance * scale;
      for (const auto& q : pts) ok = ok && std::abs(x - q.x) > c.min_separation * scale;
      if (ok) pts.push_back(C.point(x, sheet));
    }
    if (!ok) continue;
    if (c.accept && !c.accept(pts)) continue;
    return pts;
  }
  throw Error(ErrorCode::SamplingExhausted, "no regular configuration after 1000 attempts");
}

}  // namespace thetakit
