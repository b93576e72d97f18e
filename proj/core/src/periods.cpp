#include "thetakit/periods.hpp"

#include <cmath>
#include <numbers>

#include "thetakit/errors.hpp"
#include "thetakit/paths.hpp"
#include "thetakit/quadrature.hpp"
#include "thetakit/theta.hpp"

namespace thetakit {

RiemannMatrix::RiemannMatrix(CMatrix tau) : tau_(std::move(tau)) {
  if (tau_.rows() == 0 || tau_.rows() != tau_.cols()) throw Error(ErrorCode::InvalidTau, "tau must be square");
  const double asym = (tau_ - tau_.transpose()).cwiseAbs().maxCoeff();
  if (!(asym <= 1e-9 * std::max(1.0, tau_.cwiseAbs().maxCoeff()))) {
    throw Error(ErrorCode::InvalidTau, "tau is not symmetric (deviation " + std::to_string(asym) + ")");
  }
  tau_ = 0.5 * (tau_ + tau_.transpose());
  imag_ = tau_.imag();
  Eigen::LLT<Eigen::MatrixXd> llt(std::numbers::pi * imag_);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::InvalidTau, "Im tau is not positive definite");
  chol_ = llt.matrixU();
  imag_inv_ = imag_.inverse();
  rho_ = shortest_lattice_vector_of(chol_);
}

double RiemannMatrix::cached_radius(double tol, double (*compute)(const RiemannMatrix&, double)) const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto it = cache_->radius.find(tol);
  if (it != cache_->radius.end()) return it->second;
  const double r = compute(*this, tol);
  cache_->radius.emplace(tol, r);
  return r;
}

namespace {

cplx powi(cplx x, int k) {
  cplx r(1.0, 0.0);
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

CVector chebyshev_estimate(const HyperellipticCurve& curve, int k, int n) {
  const auto& e = curve.branch_points();
  const cplx a = e[k];
  const cplx b = e[k + 1];
  const SegmentBranch q(curve, a, b, {k, k + 1});
  const auto t = quad::gauss_chebyshev_nodes(n);
  CVector sum = CVector::Zero(curve.genus());
  for (double tj : t) {
    const cplx x = 0.5 * (a + b) + 0.5 * (b - a) * tj;
    const cplx qx = q(x);
    for (int l = 0; l < curve.genus(); ++l) sum(l) += powi(x, l) / qx;
  }
  // y = i (b - a) sqrt(s (1 - s)) q(x)  =>  integral = (1/i) * GC sum; cycle = 2 * integral.
  return 2.0 * sum * (std::numbers::pi / n) / cplx(0.0, 1.0);
}

}  // namespace

CVector chain_cycle_integral(const HyperellipticCurve& curve, int k, double tol, int* nodes_used) {
  int n = 16;
  CVector prev = chebyshev_estimate(curve, k, n);
  while (true) {
    n *= 2;
    if (n > (1 << 16)) throw Error(ErrorCode::QuadratureNotConverged, "Gauss-Chebyshev node cap exceeded");
    CVector next = chebyshev_estimate(curve, k, n);
    const double diff = (next - prev).cwiseAbs().maxCoeff();
    prev = std::move(next);
    if (diff < tol * std::max(1.0, prev.cwiseAbs().maxCoeff())) break;
  }
  if (nodes_used != nullptr) *nodes_used = std::max(*nodes_used, n);
  return prev;
}

PeriodData compute_period_data(const HyperellipticCurve& curve, double tol) {
  if (!(tol >= 1e-14 && tol <= 1e-6)) throw Error(ErrorCode::InvalidArgument, "period tolerance outside [1e-14, 1e-6]");
  const int g = curve.genus();
  const auto& e = curve.branch_points();
  PeriodData out;
  CMatrix chain(g, 2 * g);
  for (int k = 0; k < 2 * g; ++k) chain.col(k) = chain_cycle_integral(curve, k, tol, &out.nodes_used);

  // Local intersection sign of c_k and c_{k+1} at their shared branch point.
  // With t^2 = x - e as local coordinate, c_k leaves along -t1 and c_{k+1}
  // along t2; the common factor i / sqrt(f'(e)) drops out of the sign.
  std::vector<int> orient(2 * g, 1);
  for (int k = 0; k + 1 < 2 * g; ++k) {
    const SegmentBranch qk(curve, e[k], e[k + 1], {k, k + 1});
    const SegmentBranch qn(curve, e[k + 1], e[k + 2], {k + 1, k + 2});
    const cplx t1 = (e[k + 1] - e[k]) * qk(e[k + 1]);
    const cplx t2 = (e[k + 2] - e[k + 1]) * qn(e[k + 1]);
    const double cross = std::imag(std::conj(-t1) * t2);
    const int sign = cross > 0 ? 1 : -1;
    orient[k + 1] = orient[k] * sign;
  }
  for (int k = 0; k < 2 * g; ++k) chain.col(k) *= static_cast<double>(orient[k]);

  out.a_periods.resize(g, g);
  out.b_periods = CMatrix::Zero(g, g);
  for (int i = 0; i < g; ++i) {
    out.a_periods.col(i) = chain.col(2 * i);
    for (int l = i; l < g; ++l) out.b_periods.col(i) += chain.col(2 * l + 1);
  }
  Eigen::JacobiSVD<CMatrix> svd(out.a_periods);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) == 0.0 || sv(0) / sv(sv.size() - 1) > 1e10) {
    throw Error(ErrorCode::IllConditionedAPeriods, "A-period matrix condition number exceeds 1e10");
  }
  out.normalization = out.a_periods.inverse();
  out.tau = RiemannMatrix(out.normalization * out.b_periods);
  out.chain_orientation = orient;
  return out;
}

}  // namespace thetakit
