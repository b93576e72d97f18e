#include "thetakit/kp.hpp"

#include <chrono>
#include <cmath>

#include "thetakit/errors.hpp"
#include "thetakit/theta.hpp"

namespace thetakit {

cplx SectionBasis::eval(int i, const CurvePoint& p) const {
  const Monomial& mono = monomials.at(static_cast<std::size_t>(i));
  cplx v(1.0, 0.0);
  for (int k = 0; k < mono.x_power; ++k) v *= p.x;
  return mono.times_y ? v * p.y : v;
}

SectionBasis section_basis(const HyperellipticCurve& c, int n) {
  const int g = c.genus();
  if (n < 2 * g - 1) {
    throw Error(ErrorCode::DegreeTooSmall, "n = " + std::to_string(n) + " is below 2g - 1 = " + std::to_string(2 * g - 1));
  }
  SectionBasis b;
  b.n = n;
  for (int a = 0; 2 * a <= n; ++a) b.monomials.push_back({a, false});
  for (int a = 0; 2 * a + 2 * g + 1 <= n; ++a) b.monomials.push_back({a, true});
  return b;
}

CMatrix kp_matrix(const std::vector<SectionBasis>& bases, const std::vector<CurvePoint>& points) {
  const int r = static_cast<int>(bases.size());
  const int m = static_cast<int>(points.size());
  for (const auto& b : bases) {
    if (b.count() != m || b.n != bases.front().n) {
      throw Error(ErrorCode::NonSquareBlocks, "each summand needs exactly one section per point and equal degree");
    }
  }
  CMatrix a = CMatrix::Zero(r * m, r * m);
  for (int k = 0; k < r; ++k) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) a(k * m + i, k * m + j) = bases[static_cast<std::size_t>(k)].eval(i, points[static_cast<std::size_t>(j)]);
    }
  }
  return a;
}

ScaledComplex kp_raw_ratio(const PrimeForm& E, const std::vector<SectionBasis>& bases,
                           const std::vector<CurvePoint>& ys, const CMatrix& basis_change) {
  const Jacobian& J = E.jacobian();
  const int r = static_cast<int>(bases.size());
  const int m = static_cast<int>(ys.size());
  const int n = bases.front().n;
  CVector e = static_cast<double>(n) * J.abel_infinity() + J.riemann_vector();
  for (const auto& y : ys) e -= J.abel_map(y);
  const ScaledComplex th = theta(e, J.tau(), Characteristic::zero(J.genus()), E.theta_tol());
  ScaledComplex lhs = th.pow(r);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) lhs *= E(ys[static_cast<std::size_t>(i)], ys[static_cast<std::size_t>(j)]).value.pow(r);
  }
  CMatrix a = kp_matrix(bases, ys);
  if (basis_change.size() != 0) {
    if (basis_change.rows() != a.rows() || basis_change.cols() != a.rows()) {
      throw Error(ErrorCode::InvalidArgument, "basis change must be rm x rm");
    }
    a = basis_change * a;
  }
  const cplx det = Eigen::PartialPivLU<CMatrix>(a).determinant();
  return lhs / ScaledComplex(det);
}

ScaledComplex kp_lambda(const PrimeForm& E, const std::vector<SectionBasis>& bases, const std::vector<CurvePoint>& ys,
                        const std::vector<CurvePoint>& refs, const CMatrix& basis_change) {
  const ScaledComplex base = kp_raw_ratio(E, bases, refs, basis_change);
  ScaledComplex lambda = kp_raw_ratio(E, bases, ys, basis_change);
  for (const auto& y : ys) {
    std::vector<CurvePoint> swapped = refs;
    swapped.front() = y;
    lambda /= kp_raw_ratio(E, bases, swapped, basis_change) / base;
  }
  return lambda;
}

namespace {

struct KpSetup {
  std::vector<SectionBasis> bases;
  int m = 0;
  std::vector<CurvePoint> refs;
  std::vector<std::vector<CurvePoint>> samples;
};

std::vector<CurvePoint> first_m(std::vector<CurvePoint> pts, int m) {
  pts.resize(static_cast<std::size_t>(m));
  return pts;
}

KpSetup setup(const PrimeForm& E, const KpOptions& opt) {
  const Jacobian& J = E.jacobian();
  if (opt.r < 1) throw Error(ErrorCode::InvalidArgument, "r must be positive");
  KpSetup s;
  s.bases.assign(static_cast<std::size_t>(opt.r), section_basis(J.curve(), opt.n));
  s.m = opt.n - J.genus() + 1;
  const int half = (s.m + 1) / 2;
  SamplingConstraints c;
  c.accept = [&E](const std::vector<CurvePoint>& pts) {
    try {
      for (const auto& p : pts) E.half_diff(p);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::HalfDiffVanishes) return false;
      throw;
    }
    return true;
  };
  s.refs = first_m(J.sample_regular_configuration(half, opt.seed * 7919ULL + 17ULL, c), s.m);
  SamplingConstraints d = c;
  const double sep = c.min_separation * J.curve().scale();
  d.accept = [&](const std::vector<CurvePoint>& pts) {
    for (const auto& p : pts) {
      for (const auto& z : s.refs) {
        if (std::abs(p.x - z.x) <= sep) return false;
      }
    }
    return c.accept(pts);
  };
  for (int k = 0; k < opt.sample_count; ++k) {
    s.samples.push_back(
        first_m(J.sample_regular_configuration(half, opt.seed * 1000003ULL + static_cast<std::uint64_t>(k), d), s.m));
  }
  return s;
}

IdentityReport constancy_report(const std::string& name, const PrimeForm& E, const KpOptions& opt,
                                const std::vector<ScaledComplex>& lambdas, const KpSetup& s,
                                std::chrono::steady_clock::time_point t0) {
  IdentityReport rep;
  rep.name = name;
  rep.curve_digest = curve_digest(E.jacobian().curve());
  rep.seed = opt.seed;
  rep.tolerance = opt.tolerance;
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    const double dev = std::abs((lambdas[k] / lambdas.front()).value() - cplx(1.0, 0.0));
    rep.samples.push_back({s.samples[k], lambdas[k], lambdas.front(), dev});
  }
  rep.finalize();
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace

IdentityReport check_kp_identity(const PrimeForm& E, const KpOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const KpSetup s = setup(E, opt);
  std::vector<ScaledComplex> lambdas;
  for (const auto& ys : s.samples) lambdas.push_back(kp_lambda(E, s.bases, ys, s.refs, opt.basis_change));
  IdentityReport rep = constancy_report("kp", E, opt, lambdas, s, t0);
  rep.note = "lambda normalized by per-point factors through fixed reference points";
  return rep;
}

IdentityReport check_kp_identity_raw(const PrimeForm& E, const KpOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const KpSetup s = setup(E, opt);
  std::vector<ScaledComplex> lambdas;
  for (const auto& ys : s.samples) lambdas.push_back(kp_raw_ratio(E, s.bases, ys, opt.basis_change));
  IdentityReport rep = constancy_report("kp_raw", E, opt, lambdas, s, t0);
  rep.note = "raw ratio in the dx trivialization; not expected to be constant";
  return rep;
}

}  // namespace thetakit
