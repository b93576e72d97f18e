#include "thetakit/identities.hpp"

#include <chrono>
#include <cmath>
#include <cstring>
#include <numeric>

#include "thetakit/errors.hpp"
#include "thetakit/theta.hpp"

namespace thetakit {

int SplitBundle::degree() const {
  int d = 0;
  for (const auto& l : summands) d += l.degree;
  return d;
}

int SplitBundle::rbar() const {
  const int r = rank();
  const int delta = std::gcd(r, std::abs(degree()));
  return r * r / (delta == 0 ? r : delta);
}

void SplitBundle::validate() const {
  if (summands.empty()) throw Error(ErrorCode::InvalidArgument, "bundle has no summands");
  if (rank() == 1) return;
  for (const auto& l : summands) {
    if (l.degree != 0) {
      throw Error(ErrorCode::InvalidArgument, "split bundles of rank > 1 must have degree-0 summands");
    }
  }
}

void require_indecomposable(const std::string& what) {
  throw Error(ErrorCode::NotImplemented,
              what + ": no analytic expression for theta of an indecomposable bundle is known; "
                     "only split bundles are computable");
}

ThetaSetting ThetaSetting::standard(const PrimeForm& E, double theta_tol) {
  const int g = E.jacobian().genus();
  return ThetaSetting{E, JacobianPoint{CVector::Zero(g), 0}, E.delta(), theta_tol};
}

std::vector<CVector> theta_arguments(const ThetaSetting& s, const SplitBundle& M) {
  M.validate();
  const Jacobian& J = s.jacobian();
  if (s.F.degree != (M.rank() == 1 ? -M.degree() : 0)) {
    throw Error(ErrorCode::InvalidArgument, "twist F must have degree -deg(M) (rank 1) or 0");
  }
  std::vector<CVector> out;
  for (const auto& l : M.summands) {
    CVector e = l.vec + s.F.vec + s.eta.shift(J.tau());
    if (J.theta_divisor_membership(e) != Membership::Off) {
      throw Error(ErrorCode::DenominatorOnThetaDivisor, "theta(M) is not clearly nonzero");
    }
    out.push_back(std::move(e));
  }
  return out;
}

namespace {

ScaledComplex ratio_from(const ThetaSetting& s, const std::vector<CVector>& e, const CVector& a) {
  const RiemannMatrix& tau = s.jacobian().tau();
  const Characteristic zero = Characteristic::zero(tau.genus());
  ScaledComplex acc = ScaledComplex::one();
  for (const auto& ek : e) acc *= theta(ek + a, tau, zero, s.theta_tol) / theta(ek, tau, zero, s.theta_tol);
  return acc;
}

// One side of an identity: a scaled product with its weight tally.
struct Side {
  ScaledComplex value = ScaledComplex::one();
  WeightLedger weights;

  void mul(const TrivializedValue& t, int p, int q, int power) {
    value *= t.value.pow(power);
    weights.add(p, t.weight_x * power);
    weights.add(q, t.weight_y * power);
  }
};

// Determinant of entries carrying weight_x at row point rows[i] and weight_y
// at column point cols[j]; every nonzero entry of a row (column) must agree.
ScaledComplex weighted_det(const std::vector<std::vector<TrivializedValue>>& a, const std::vector<int>& rows,
                           const std::vector<int>& cols, WeightLedger& w) {
  const std::size_t n = a.size();
  std::vector<std::vector<ScaledComplex>> v(n, std::vector<ScaledComplex>(n));
  std::vector<int> rw(n, 0), cw(n, 0);
  std::vector<bool> rset(n, false), cset(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& t = a[i][j];
      v[i][j] = t.value;
      if (t.value.is_zero()) continue;
      if (rset[i] && rw[i] != t.weight_x) throw Error(ErrorCode::WeightLedgerMismatch, "row weights differ");
      if (cset[j] && cw[j] != t.weight_y) throw Error(ErrorCode::WeightLedgerMismatch, "column weights differ");
      rw[i] = t.weight_x;
      cw[j] = t.weight_y;
      rset[i] = cset[j] = true;
    }
  }
  for (std::size_t i = 0; i < n; ++i) w.add(rows[i], rw[i]);
  for (std::size_t j = 0; j < n; ++j) w.add(cols[j], cw[j]);
  return scaled_determinant(v);
}

void require_balanced(const Side& lhs, const Side& rhs, const std::string& name) {
  if (!(lhs.weights == rhs.weights)) {
    throw Error(ErrorCode::WeightLedgerMismatch, name + ": the two sides carry different trivialization weights");
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Left side shared by the addition formula and the Szego identity.
Side fay_lhs(const ThetaSetting& s, const std::vector<CVector>& e, const SplitBundle& M,
             const std::vector<CurvePoint>& pts, PairOrdering ordering) {
  const Jacobian& J = s.jacobian();
  const int m = static_cast<int>(pts.size() / 2);
  const int rb = M.rbar();
  CVector a = CVector::Zero(J.genus());
  for (int i = 0; i < m; ++i) a += J.abel_map(pts[2 * i]) - J.abel_map(pts[2 * i + 1]);
  Side lhs;
  lhs.value = ratio_from(s, e, a);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      lhs.mul(s.E(pts[2 * i], pts[2 * j]), 2 * i, 2 * j, rb);
      if (ordering == PairOrdering::Fay) {
        lhs.mul(s.E(pts[2 * j + 1], pts[2 * i + 1]), 2 * j + 1, 2 * i + 1, rb);
      } else {
        lhs.mul(s.E(pts[2 * i + 1], pts[2 * j + 1]), 2 * i + 1, 2 * j + 1, rb);
      }
    }
  }
  return lhs;
}

// prod_{i,j} E(x_i, y_j)^rbar.
Side cross_product(const ThetaSetting& s, const SplitBundle& M, const std::vector<CurvePoint>& pts) {
  const int m = static_cast<int>(pts.size() / 2);
  Side out;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) out.mul(s.E(pts[2 * i], pts[2 * j + 1]), 2 * i, 2 * j + 1, M.rbar());
  }
  return out;
}

// [theta(M(x_i - y_j)) / (theta(M) E(x_i, y_j)^rbar)]
std::vector<std::vector<TrivializedValue>> ratio_matrix(const ThetaSetting& s, const std::vector<CVector>& e,
                                                        const SplitBundle& M, const std::vector<CurvePoint>& pts) {
  const Jacobian& J = s.jacobian();
  const int m = static_cast<int>(pts.size() / 2);
  const int rb = M.rbar();
  std::vector<std::vector<TrivializedValue>> a(m, std::vector<TrivializedValue>(m));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const CVector d = J.abel_map(pts[2 * i]) - J.abel_map(pts[2 * j + 1]);
      const TrivializedValue E = s.E(pts[2 * i], pts[2 * j + 1]);
      a[i][j] = {ratio_from(s, e, d) / E.value.pow(rb), -E.weight_x * rb, -E.weight_y * rb};
    }
  }
  return a;
}

// (rbar m)-square matrix of Szego boxes S_M(x_i, y_j).
std::vector<std::vector<TrivializedValue>> szego_matrix(const ThetaSetting& s, const SplitBundle& M,
                                                        const std::vector<CurvePoint>& pts) {
  const int m = static_cast<int>(pts.size() / 2);
  const int r = M.rank();
  if (M.rbar() != r) throw Error(ErrorCode::InvalidArgument, "Szego boxes need rbar = r");
  std::vector<std::vector<TrivializedValue>> big(m * r, std::vector<TrivializedValue>(m * r));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const auto box = szego_kernel(s, M, pts[2 * i], pts[2 * j + 1]);
      for (int k = 0; k < r; ++k) {
        for (int l = 0; l < r; ++l) big[i * r + k][j * r + l] = box[k][l];
      }
    }
  }
  return big;
}

std::vector<int> repeat_ids(int m, int each, int offset) {
  std::vector<int> ids;
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < each; ++k) ids.push_back(2 * i + offset);
  }
  return ids;
}

void check_samples(const std::vector<std::vector<CurvePoint>>& samples) {
  for (const auto& pts : samples) {
    if (pts.empty() || pts.size() % 2 != 0) {
      throw Error(ErrorCode::InvalidArgument, "a sample needs 2m points (x_1, y_1, ..., x_m, y_m)");
    }
  }
}

}  // namespace

ScaledComplex theta_ratio(const ThetaSetting& s, const SplitBundle& M, const CVector& a) {
  return ratio_from(s, theta_arguments(s, M), a);
}

ScaledComplex theta_ratio(const ThetaSetting& s, const SplitBundle& M, const Divisor& d) {
  if (d.degree() != 0) throw Error(ErrorCode::InvalidArgument, "theta_ratio needs a degree-0 divisor");
  return theta_ratio(s, M, s.jacobian().abel(d));
}

std::vector<std::vector<TrivializedValue>> szego_kernel(const ThetaSetting& s, const SplitBundle& M,
                                                        const CurvePoint& p, const CurvePoint& q) {
  if (p.x == q.x && p.y == q.y) throw Error(ErrorCode::DiagonalEvaluation, "Szego kernel on the diagonal");
  const auto e = theta_arguments(s, M);
  const Jacobian& J = s.jacobian();
  const RiemannMatrix& tau = J.tau();
  const Characteristic zero = Characteristic::zero(tau.genus());
  const CVector d = J.abel_map(p) - J.abel_map(q);
  const TrivializedValue E = s.E(p, q);
  const int r = M.rank();
  std::vector<std::vector<TrivializedValue>> out(r, std::vector<TrivializedValue>(r));
  for (int k = 0; k < r; ++k) {
    for (int l = 0; l < r; ++l) out[k][l] = {ScaledComplex::zero(), -E.weight_x, -E.weight_y};
    const ScaledComplex v = theta(e[k] + d, tau, zero, s.theta_tol) / (theta(e[k], tau, zero, s.theta_tol) * E.value);
    out[k][k].value = v;
  }
  return out;
}

CurvePoint nearby_point(const HyperellipticCurve& c, const CurvePoint& p, cplx offset) {
  const CurvePoint a = c.point(p.x + offset, 1);
  const CurvePoint b = c.point(p.x + offset, -1);
  return std::abs(a.y - p.y) <= std::abs(b.y - p.y) ? a : b;
}

std::vector<cplx> szego_residue(const ThetaSetting& s, const SplitBundle& M, const CurvePoint& p, cplx offset) {
  const CurvePoint q = nearby_point(s.jacobian().curve(), p, offset);
  const auto S = szego_kernel(s, M, p, q);
  std::vector<cplx> out;
  for (int k = 0; k < M.rank(); ++k) out.push_back((ScaledComplex(q.x - p.x) * S[k][k].value).value());
  return out;
}

ScaledComplex scaled_determinant(const std::vector<std::vector<ScaledComplex>>& a) {
  const int n = static_cast<int>(a.size());
  CMatrix m(n, n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double top = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      if (!a[i][j].is_zero()) top = std::max(top, a[i][j].exponent());
    }
    if (!std::isfinite(top)) return ScaledComplex::zero();
    for (int j = 0; j < n; ++j) {
      m(i, j) = a[i][j].is_zero() ? cplx(0.0, 0.0) : a[i][j].mantissa() * std::exp(a[i][j].exponent() - top);
    }
    total += top;
  }
  const cplx det = n == 0 ? cplx(1.0, 0.0) : Eigen::PartialPivLU<CMatrix>(m).determinant();
  return ScaledComplex(det) * ScaledComplex::from_exp(cplx(total, 0.0));
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Indeterminate:
      return "indeterminate";
  }
  return "?";
}

void IdentityReport::finalize() {
  residual = 0.0;
  if (samples.empty()) {
    verdict = Verdict::Indeterminate;
    return;
  }
  std::size_t worst = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    // NaN residuals must not pass, so compare with !(<=).
    if (!(samples[i].residual <= samples[worst].residual)) worst = i;
  }
  residual = samples[worst].residual;
  lhs = samples[worst].lhs;
  rhs = samples[worst].rhs;
  verdict = residual <= tolerance ? Verdict::Pass : Verdict::Fail;
}

std::string curve_digest(const HyperellipticCurve& c) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const cplx& v : c.coefficients()) {
    for (double d : {v.real(), v.imag()}) {
      std::uint64_t bits;
      std::memcpy(&bits, &d, sizeof bits);
      for (int b = 0; b < 8; ++b) {
        h ^= (bits >> (8 * b)) & 0xffU;
        h *= 0x100000001b3ULL;
      }
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::vector<CurvePoint>> draw_samples(const PrimeForm& E, int m, int count, std::uint64_t seed) {
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
  std::vector<std::vector<CurvePoint>> out;
  for (int k = 0; k < count; ++k) {
    out.push_back(E.jacobian().sample_regular_configuration(m, seed * 1000003ULL + static_cast<std::uint64_t>(k), c));
  }
  return out;
}

IdentityReport check_addition_formula(const ThetaSetting& s, const SplitBundle& M,
                                      const std::vector<std::vector<CurvePoint>>& samples, double tolerance,
                                      PairOrdering ordering) {
  const auto t0 = std::chrono::steady_clock::now();
  check_samples(samples);
  const auto e = theta_arguments(s, M);
  IdentityReport rep;
  rep.name = "addition_formula";
  rep.curve_digest = curve_digest(s.jacobian().curve());
  rep.tolerance = tolerance;
  for (const auto& pts : samples) {
    const int m = static_cast<int>(pts.size() / 2);
    const Side lhs = fay_lhs(s, e, M, pts, ordering);
    Side rhs = cross_product(s, M, pts);
    rhs.value *= weighted_det(ratio_matrix(s, e, M, pts), repeat_ids(m, 1, 0), repeat_ids(m, 1, 1), rhs.weights);
    require_balanced(lhs, rhs, rep.name);
    rep.samples.push_back({pts, lhs.value, rhs.value, relative_difference(lhs.value, rhs.value)});
  }
  rep.finalize();
  rep.wall_time = seconds_since(t0);
  return rep;
}

IdentityReport check_szego_identity(const ThetaSetting& s, const SplitBundle& M,
                                    const std::vector<std::vector<CurvePoint>>& samples, double tolerance,
                                    PairOrdering ordering) {
  const auto t0 = std::chrono::steady_clock::now();
  check_samples(samples);
  const auto e = theta_arguments(s, M);
  IdentityReport rep;
  rep.name = "szego_identity";
  rep.curve_digest = curve_digest(s.jacobian().curve());
  rep.tolerance = tolerance;
  for (const auto& pts : samples) {
    const int m = static_cast<int>(pts.size() / 2);
    const Side lhs = fay_lhs(s, e, M, pts, ordering);
    Side rhs = cross_product(s, M, pts);
    rhs.value *= weighted_det(szego_matrix(s, M, pts), repeat_ids(m, M.rank(), 0), repeat_ids(m, M.rank(), 1),
                              rhs.weights);
    require_balanced(lhs, rhs, rep.name);
    rep.samples.push_back({pts, lhs.value, rhs.value, relative_difference(lhs.value, rhs.value)});
  }
  rep.finalize();
  rep.wall_time = seconds_since(t0);
  return rep;
}

IdentityReport check_det_equivalence(const ThetaSetting& s, const SplitBundle& M,
                                     const std::vector<std::vector<CurvePoint>>& samples, double tolerance) {
  const auto t0 = std::chrono::steady_clock::now();
  check_samples(samples);
  const auto e = theta_arguments(s, M);
  IdentityReport rep;
  rep.name = "det_equivalence";
  rep.curve_digest = curve_digest(s.jacobian().curve());
  rep.tolerance = tolerance;
  for (const auto& pts : samples) {
    const int m = static_cast<int>(pts.size() / 2);
    Side lhs;
    lhs.value = weighted_det(ratio_matrix(s, e, M, pts), repeat_ids(m, 1, 0), repeat_ids(m, 1, 1), lhs.weights);
    Side rhs;
    rhs.value =
        weighted_det(szego_matrix(s, M, pts), repeat_ids(m, M.rank(), 0), repeat_ids(m, M.rank(), 1), rhs.weights);
    require_balanced(lhs, rhs, rep.name);
    rep.samples.push_back({pts, lhs.value, rhs.value, relative_difference(lhs.value, rhs.value)});
  }
  rep.finalize();
  rep.wall_time = seconds_since(t0);
  return rep;
}

}  // namespace thetakit
