#include "thetakit/primeform.hpp"

#include <array>
#include <cmath>
#include <cstring>
#include <mutex>

#include "thetakit/errors.hpp"

namespace thetakit {

std::map<int, int> WeightLedger::entries() const {
  std::map<int, int> out;
  for (const auto& [k, v] : w_) {
    if (v != 0) out.emplace(k, v);
  }
  return out;
}

Characteristic odd_characteristic(const RiemannMatrix& tau, double theta_tol) {
  const int g = tau.genus();
  const CVector zero = CVector::Zero(g);
  std::vector<std::pair<Characteristic, double>> odd;
  double largest = 0.0;
  for (const auto& ch : characteristics(g)) {
    if (ch.parity() != 1) continue;
    double norm2 = 0.0;
    for (const auto& d : theta_grad(zero, tau, ch, theta_tol)) norm2 += std::norm(d.value());
    odd.emplace_back(ch, std::sqrt(norm2));
    largest = std::max(largest, std::sqrt(norm2));
  }
  for (const auto& [ch, n] : odd) {
    if (n > 1e-6 * largest) return ch;
  }
  throw Error(ErrorCode::NoNonsingularOddCharacteristic, "every odd theta characteristic is singular");
}

struct PrimeForm::State {
  State(Jacobian j, Characteristic d, double t) : jac(std::move(j)), delta(std::move(d)), theta_tol(t) {}

  Jacobian jac;
  Characteristic delta;
  double theta_tol;
  CVector grad;  // d_i theta[delta](0)

  std::mutex mutex;
  std::map<std::array<double, 4>, cplx> roots;
  std::uint64_t sign_seed = 0;
};

PrimeForm::PrimeForm(Jacobian jac, double theta_tol)
    : PrimeForm(jac, odd_characteristic(jac.tau(), theta_tol), theta_tol) {}

PrimeForm::PrimeForm(Jacobian jac, Characteristic delta, double theta_tol)
    : s_(std::make_shared<State>(std::move(jac), std::move(delta), theta_tol)) {
  const int g = s_->jac.genus();
  s_->grad.resize(g);
  const auto d = theta_grad(CVector::Zero(g), s_->jac.tau(), s_->delta, theta_tol);
  for (int i = 0; i < g; ++i) s_->grad(i) = d[static_cast<std::size_t>(i)].value();
}

const Jacobian& PrimeForm::jacobian() const { return s_->jac; }
const Characteristic& PrimeForm::delta() const { return s_->delta; }
double PrimeForm::theta_tol() const { return s_->theta_tol; }

cplx PrimeForm::half_diff_squared(const CurvePoint& p) const {
  const CVector omega = s_->jac.periods().normalization * s_->jac.curve().differentials_at(p);
  return s_->grad.transpose() * omega;
}

TrivializedValue PrimeForm::half_diff(const CurvePoint& p) const {
  const std::array<double, 4> key{p.x.real(), p.x.imag(), p.y.real(), p.y.imag()};
  {
    std::lock_guard<std::mutex> lock(s_->mutex);
    auto it = s_->roots.find(key);
    if (it != s_->roots.end()) return {ScaledComplex(it->second), 1, 0};
  }
  const cplx h2 = half_diff_squared(p);
  const CVector omega = s_->jac.periods().normalization * s_->jac.curve().differentials_at(p);
  if (std::abs(h2) < 1e-8 * s_->grad.norm() * omega.norm()) {
    throw Error(ErrorCode::HalfDiffVanishes, "point is a zero of the odd theta differential");
  }
  std::lock_guard<std::mutex> lock(s_->mutex);
  cplx h = std::sqrt(h2);
  if (s_->sign_seed != 0) {
    // splitmix64 of the point bits mixed with the seed picks the root.
    std::uint64_t z = s_->sign_seed;
    for (double d : key) {
      std::uint64_t bits;
      std::memcpy(&bits, &d, sizeof bits);
      z += bits + 0x9e3779b97f4a7c15ULL;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      z ^= z >> 31;
    }
    if (z & 1) h = -h;
  }
  return {ScaledComplex(s_->roots.emplace(key, h).first->second), 1, 0};
}

TrivializedValue PrimeForm::operator()(const CurvePoint& p, const CurvePoint& q) const {
  if (p.x == q.x && p.y == q.y) return {ScaledComplex::zero(), -1, -1};
  const Jacobian& J = s_->jac;
  const CVector z = J.abel_map(q) - J.abel_map(p);
  const ScaledComplex t = theta(z, J.tau(), s_->delta, s_->theta_tol);
  return {t / (half_diff(p).value * half_diff(q).value), -1, -1};
}

TrivializedValue PrimeForm::on_lifts(const CurvePoint& p, const CurvePoint& q, const CVector& ap,
                                     const CVector& aq) const {
  if (p.x == q.x && p.y == q.y) return {ScaledComplex::zero(), -1, -1};
  const ScaledComplex t = theta(CVector(aq - ap), s_->jac.tau(), s_->delta, s_->theta_tol);
  return {t / (half_diff(p).value * half_diff(q).value), -1, -1};
}

void PrimeForm::reset_signs(std::uint64_t seed) const {
  std::lock_guard<std::mutex> lock(s_->mutex);
  s_->roots.clear();
  s_->sign_seed = seed;
}

}  // namespace thetakit
