#include "thetakit/theta.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "thetakit/errors.hpp"

namespace thetakit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxPoints = 1e8;

// Calls visit(n) for every integer n with ||T (n + s)|| <= radius, in a fixed
// lexicographic order (last coordinate outermost).
void enumerate_ellipsoid(const Eigen::MatrixXd& T, const Eigen::VectorXd& s, double radius,
                         const std::function<void(const Eigen::VectorXi&)>& visit) {
  const int g = static_cast<int>(T.rows());
  Eigen::VectorXi n(g);
  std::function<void(int, double)> rec = [&](int i, double used) {
    // partial = sum_{j > i} T_ij (n_j + s_j)
    double partial = 0.0;
    for (int j = i + 1; j < g; ++j) partial += T(i, j) * (n(j) + s(j));
    const double left = radius * radius - used;
    if (left < 0) return;
    const double half = std::sqrt(left) / T(i, i);
    const double center = -s(i) - partial / T(i, i);
    const int lo = static_cast<int>(std::ceil(center - half));
    const int hi = static_cast<int>(std::floor(center + half));
    for (int k = lo; k <= hi; ++k) {
      n(i) = k;
      const double comp = T(i, i) * (k + s(i)) + partial;
      const double next = used + comp * comp;
      if (next > radius * radius) continue;
      if (i == 0) {
        visit(n);
      } else {
        rec(i - 1, next);
      }
    }
  };
  rec(g - 1, 0.0);
}

double unit_ball_volume(int g) { return std::pow(kPi, 0.5 * g) / std::tgamma(0.5 * g + 1.0); }

// Upper bound on sum over lattice points p with |p| > R of exp(-|p|^2) for a
// lattice with minimal distance rho:
//   g / (rho/2)^g * int_{R-rho}^inf exp(-t^2) (t + rho/2)^{g-1} dt.
double tail_bound(int g, double rho, double R) {
  const double lo = std::max(0.0, R - rho);
  const double h = 2e-3;
  double acc = 0.0;
  for (double t = lo; t < lo + 8.0; t += h) {
    const double f0 = std::exp(-t * t) * std::pow(t + 0.5 * rho, g - 1);
    const double f1 = std::exp(-(t + h) * (t + h)) * std::pow(t + h + 0.5 * rho, g - 1);
    acc += 0.5 * h * (f0 + f1);
  }
  return g / std::pow(0.5 * rho, g) * acc;
}

struct Reduced {
  CVector zr;
  Eigen::VectorXd N;
  cplx log_factor;  // log of theta[a;b](z) / theta[a;b](zr)
};

Reduced reduce_argument(const CVector& z, const RiemannMatrix& tau, const Characteristic& ch) {
  const CMatrix& t = tau.tau();
  Eigen::VectorXd N = (tau.imag_inverse() * z.imag()).array().round().matrix();
  CVector x = z - t * N.cast<cplx>();
  Eigen::VectorXd M = x.real().array().round().matrix();
  CVector zr = x - M.cast<cplx>();
  const cplx I(0.0, 1.0);
  const CVector Nc = N.cast<cplx>();
  // theta[a;b](zr + M + tau N) = exp(-i pi N.tau.N - 2 pi i N.(zr + b) + 2 pi i a.M) theta[a;b](zr)
  cplx lf = -I * kPi * Nc.dot(t * Nc) - 2.0 * kPi * I * Nc.dot(zr + ch.b.cast<cplx>()) +
            2.0 * kPi * I * ch.a.dot(M);
  // CVector::dot conjugates its left argument; N is real so only the sign of i matters.
  return {zr, N, lf};
}

struct SumOut {
  cplx value;
  CVector grad;
  double peak_log;  // pi c^T Y c factored out of every term
};

SumOut lattice_sum(const CVector& zr, const RiemannMatrix& tau, const Characteristic& ch, double radius,
                   bool want_grad) {
  const int g = tau.genus();
  const CMatrix& t = tau.tau();
  const Eigen::VectorXd c = tau.imag_inverse() * zr.imag();
  const double peak = kPi * c.dot(tau.imag() * c);
  const Eigen::VectorXd shift = ch.a + c;
  const CVector u = zr + ch.b.cast<cplx>();
  const cplx I(0.0, 1.0);
  SumOut out{cplx{}, CVector::Zero(g), peak};
  enumerate_ellipsoid(tau.cholesky_upper(), shift, radius, [&](const Eigen::VectorXi& n) {
    const Eigen::VectorXd m = n.cast<double>() + ch.a;
    const CVector mc = m.cast<cplx>();
    const cplx quad = (mc.transpose() * t * mc)(0, 0);
    const cplx lin = (mc.transpose() * u)(0, 0);
    const cplx term = std::exp(I * kPi * quad + 2.0 * kPi * I * lin - peak);
    out.value += term;
    if (want_grad) out.grad += (2.0 * kPi * I) * mc * term;
  });
  return out;
}

void check_tol(double tol) {
  if (!(tol >= 1e-14 && tol <= 1e-4)) throw Error(ErrorCode::InvalidArgument, "theta tolerance outside [1e-14, 1e-4]");
}

}  // namespace

int Characteristic::parity() const {
  const double s = 4.0 * a.dot(b);
  return static_cast<int>(std::lround(s)) % 2 == 0 ? 0 : 1;
}

CVector Characteristic::shift(const RiemannMatrix& tau) const {
  return tau.tau() * a.cast<cplx>() + b.cast<cplx>();
}

std::vector<Characteristic> characteristics(int g) {
  std::vector<Characteristic> out;
  const int count = 1 << (2 * g);
  for (int mask = 0; mask < count; ++mask) {
    Characteristic ch = Characteristic::zero(g);
    for (int i = 0; i < g; ++i) {
      ch.a(i) = (mask >> (2 * g - 1 - i)) & 1 ? 0.5 : 0.0;
      ch.b(i) = (mask >> (g - 1 - i)) & 1 ? 0.5 : 0.0;
    }
    out.push_back(ch);
  }
  return out;
}

double shortest_lattice_vector_of(const Eigen::MatrixXd& T) {
  double best = T.colwise().norm().minCoeff();
  enumerate_ellipsoid(T, Eigen::VectorXd::Zero(T.rows()), best * (1 + 1e-12), [&](const Eigen::VectorXi& n) {
    if (n.isZero()) return;
    best = std::min(best, (T * n.cast<double>()).norm());
  });
  return best;
}

namespace {

double compute_radius(const RiemannMatrix& tau, double tol) {
  const int g = tau.genus();
  const Eigen::MatrixXd& T = tau.cholesky_upper();
  const double rho = tau.shortest_vector();
  // The shifted centre is within half a cell of a lattice point, so the
  // leading term is at least exp(-lead).
  const double lead = std::pow(0.5 * T.colwise().norm().sum(), 2);
  const double target = tol * std::exp(-lead);
  double R = std::max(rho, 1.0);
  while (tail_bound(g, rho, R) > target) R += 0.05;
  return R + 0.5;
}

}  // namespace

double theta_radius(const RiemannMatrix& tau, double tol) {
  const double R = tau.cached_radius(tol, &compute_radius);
  const Eigen::MatrixXd& T = tau.cholesky_upper();
  const double volume = unit_ball_volume(tau.genus()) * std::pow(R + 1.0 + tau.shortest_vector(), tau.genus()) /
                        T.diagonal().prod();
  if (volume > kMaxPoints) throw Error(ErrorCode::RadiusOverflow, "theta truncation needs more than 1e8 lattice points");
  return R;
}

ThetaJet theta_jet(const CVector& z, const RiemannMatrix& tau, const Characteristic& ch, double tol) {
  check_tol(tol);
  if (z.size() != tau.genus() || ch.genus() != tau.genus()) {
    throw Error(ErrorCode::InvalidArgument, "dimension mismatch in theta evaluation");
  }
  const Reduced red = reduce_argument(z, tau, ch);
  const double radius = theta_radius(tau, tol) + 1.0;
  const SumOut s = lattice_sum(red.zr, tau, ch, radius, true);
  const ScaledComplex scale = ScaledComplex::from_exp(red.log_factor + s.peak_log);
  ThetaJet jet;
  jet.value = ScaledComplex(s.value) * scale;
  const cplx I(0.0, 1.0);
  for (int k = 0; k < tau.genus(); ++k) {
    // d/dz of exp(-2 pi i N.z) theta(zr) contributes -2 pi i N_k theta(zr).
    const cplx gk = s.grad(k) - 2.0 * kPi * I * red.N(k) * s.value;
    jet.grad.push_back(ScaledComplex(gk) * scale);
  }
  return jet;
}

ScaledComplex theta(const CVector& z, const RiemannMatrix& tau, const Characteristic& ch, double tol) {
  check_tol(tol);
  if (z.size() != tau.genus() || ch.genus() != tau.genus()) {
    throw Error(ErrorCode::InvalidArgument, "dimension mismatch in theta evaluation");
  }
  const Reduced red = reduce_argument(z, tau, ch);
  const double radius = theta_radius(tau, tol);
  const SumOut s = lattice_sum(red.zr, tau, ch, radius, false);
  return ScaledComplex(s.value) * ScaledComplex::from_exp(red.log_factor + s.peak_log);
}

std::vector<ScaledComplex> theta_grad(const CVector& z, const RiemannMatrix& tau, const Characteristic& ch,
                                      double tol) {
  return theta_jet(z, tau, ch, tol).grad;
}

CVector reduce_mod_lattice(const CVector& v, const RiemannMatrix& tau) {
  const Eigen::VectorXd N = (tau.imag_inverse() * v.imag()).array().round().matrix();
  CVector x = v - tau.tau() * N.cast<cplx>();
  const Eigen::VectorXd M = x.real().array().round().matrix();
  return x - M.cast<cplx>();
}

double lattice_distance(const CVector& v, const RiemannMatrix& tau) { return reduce_mod_lattice(v, tau).norm(); }

}  // namespace thetakit
