// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
// Oracles here are computed independently of the library (brute-force sums,
// the arithmetic-geometric mean, closed forms); identity checks reuse the
// library's two-sided evaluation.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <Eigen/Cholesky>

#include "fixtures.hpp"
#include "harness.hpp"
#include "thetakit/kp.hpp"
#include "thetakit/theta.hpp"

using namespace thetakit;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [FAILED]");
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool positive_definite(const Eigen::MatrixXd& m) { return Eigen::LLT<Eigen::MatrixXd>(m).info() == Eigen::Success; }

double asymmetry(const CMatrix& t) { return (t - t.transpose()).cwiseAbs().maxCoeff(); }

// --- 1: theta oracle
void theta_oracle(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  long double brute = 0.0L;
  for (int n = -50; n <= 50; ++n) brute += std::exp(-std::numbers::pi_v<long double> * n * n);
  CMatrix t(1, 1);
  t(0, 0) = cplx(0.0, 1.0);
  const cplx v = theta(CVector::Zero(1), RiemannMatrix(t), Characteristic::zero(1)).value();
  const double rel = std::abs(v - cplx(static_cast<double>(brute), 0.0)) / static_cast<double>(brute);
  const double secs = seconds_since(t0);
  o.require(rel < 1e-10, "relative error " + sci(rel));
  o.require(secs < 1.0, "runtime " + sci(secs) + " s");
}

// --- 2: periods
cplx agm(cplx a, cplx b) {
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * std::abs(a); ++i) {
    const cplx m = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = m;
  }
  return a;
}

cplx fundamental_domain(cplx t) {
  for (int i = 0; i < 100; ++i) {
    t -= std::round(t.real());
    if (std::abs(t) < 1.0 - 1e-14) {
      t = -1.0 / t;
    } else {
      break;
    }
  }
  return t;
}

void period_oracle(Outcome& o) {
  double worst_secs = 0.0;
  auto timed = [&](const std::vector<cplx>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    Jacobian J{HyperellipticCurve(f)};
    worst_secs = std::max(worst_secs, seconds_since(t0));
    return J;
  };
  {
    const Jacobian J = timed(fixtures::lemniscatic());
    const double err = std::abs(fundamental_domain(J.tau().tau()(0, 0)) - cplx(0.0, 1.0));
    o.require(err < 1e-9, "x^3 - x: |tau - i| " + sci(err));
  }
  {
    // Real roots e1 > e2 > e3: tau = i M(sqrt(e1 - e3), sqrt(e1 - e2)) / M(sqrt(e1 - e3), sqrt(e2 - e3)).
    const double e1 = 1.0, e2 = 0.0, e3 = -2.0;
    const cplx expected(0.0, (agm(std::sqrt(e1 - e3), std::sqrt(e1 - e2)) / agm(std::sqrt(e1 - e3), std::sqrt(e2 - e3))).real());
    const Jacobian J = timed({{0.0, 0.0}, {-2.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}});
    const double err = std::abs(fundamental_domain(J.tau().tau()(0, 0)) - fundamental_domain(expected));
    o.require(err < 1e-9, "x(x-1)(x+2) vs AGM " + sci(err));
  }
  double asym = 0.0;
  bool pd = true;
  for (const auto& f : {fixtures::genus2(), fixtures::genus2_real(), fixtures::quintic(), fixtures::cover_base()}) {
    const Jacobian J = timed(f);
    asym = std::max(asym, asymmetry(J.tau().tau()));
    pd = pd && positive_definite(J.tau().imag());
  }
  o.require(asym < 1e-9, "genus 2 asymmetry " + sci(asym));
  o.require(pd, "Im tau positive definite");
  o.require(worst_secs < 10.0, "slowest curve " + sci(worst_secs) + " s");
}

// --- 3: Abel's theorem
void abel_theorem(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (const auto& f : {fixtures::genus2(), fixtures::genus2_real(), fixtures::quintic()}) {
    const Jacobian J{HyperellipticCurve(f)};
    const CVector inf = J.abel_infinity();
    CVector dy = -5.0 * inf;
    for (int k = 0; k < 5; ++k) dy += J.abel_map(J.curve().branch_point(k));
    worst = std::max(worst, lattice_residual(dy, J.tau()));
    for (int i = 0; i < 10; ++i) {
      const CurvePoint p = J.curve().point(cplx(u(rng), u(rng)));
      const CVector d = J.abel_map(p) + J.abel_map(J.curve().conjugate(p)) - 2.0 * inf;
      worst = std::max(worst, lattice_residual(d, J.tau()));
    }
  }
  const double secs = seconds_since(t0);
  o.require(worst < 1e-6, "div(y), div(x - x0) x 10, three curves: " + sci(worst));
  o.require(secs < 30.0, "runtime " + sci(secs) + " s");
}

// --- 4: prime form
void prime_form(Outcome& o) {
  const PrimeForm E(Jacobian(HyperellipticCurve(fixtures::genus2())));
  const auto& c = E.jacobian().curve();
  double anti = 0.0, drift = 0.0;
  for (const auto& pq : draw_samples(E, 1, 10, 4)) {
    anti = std::max(anti, relative_difference(E(pq[0], pq[1]).value, -E(pq[1], pq[0]).value));
    auto limit = [&](double off) {
      const CurvePoint q = nearby_point(c, pq[0], cplx(off, 0.0));
      return E(pq[0], q).value.value() * E.half_diff(pq[0]).value.value() * E.half_diff(q).value.value() /
             (q.x - pq[0].x);
    };
    const cplx r3 = limit(1e-3), r4 = limit(1e-4);
    drift = std::max(drift, std::abs(r3 / r4 - 1.0));
    if (std::abs(r4) < 1e-12) drift = 1.0;
  }
  o.require(anti < 1e-13, "antisymmetry " + sci(anti));
  o.require(drift < 0.02, "simple-zero drift " + sci(drift));
}

// --- 5: addition formula
void addition_formula(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const PrimeForm E(Jacobian(HyperellipticCurve(fixtures::genus2())));
  const ThetaSetting s = ThetaSetting::standard(E);
  const SplitBundle line = SplitBundle::line(fixtures::degree0({0.13, 0.07}, {-0.21, 0.11}));
  for (int m : {2, 3}) {
    const auto r = check_addition_formula(s, line, draw_samples(E, m, 20, 100 + m), 1e-8);
    o.require(r.verdict == Verdict::Pass, "r=1 m=" + std::to_string(m) + " " + sci(r.residual));
  }
  SplitBundle two;
  two.summands = {fixtures::degree0({0.13, 0.07}, {-0.21, 0.11}), fixtures::degree0({-0.31, 0.02}, {0.17, -0.09})};
  const auto r2 = check_addition_formula(s, two, draw_samples(E, 2, 10, 105), 1e-8);
  o.require(r2.verdict == Verdict::Pass, "r=2 split m=2 " + sci(r2.residual));

  auto residual_at = [&](double quad, double th) {
    const PrimeForm Et(Jacobian(HyperellipticCurve(fixtures::genus2()), quad), th);
    return check_addition_formula(ThetaSetting::standard(Et, th), line, draw_samples(Et, 2, 20, 11), 1e-8).residual;
  };
  const double loose = residual_at(1e-6, 1e-4), tight = residual_at(1e-8, 1e-6);
  o.require(loose >= 10.0 * tight, "tightening 100x: " + sci(loose) + " -> " + sci(tight));
  const double secs = seconds_since(t0);
  o.require(secs < 300.0, "runtime " + sci(secs) + " s");
}

// --- 6: Szego identities
void szego(Outcome& o) {
  const PrimeForm E(Jacobian(HyperellipticCurve(fixtures::genus2())));
  const ThetaSetting s = ThetaSetting::standard(E);
  const SplitBundle one = SplitBundle::line(fixtures::degree0({0.13, 0.07}, {-0.21, 0.11}));
  SplitBundle two;
  two.summands = {fixtures::degree0({0.13, 0.07}, {-0.21, 0.11}), fixtures::degree0({-0.31, 0.02}, {0.17, -0.09})};

  const auto m1 = check_szego_identity(s, one, draw_samples(E, 1, 10, 21), 1e-8);
  o.require(m1.verdict == Verdict::Pass, "m=1 " + sci(m1.residual));
  for (const SplitBundle* M : {&one, static_cast<const SplitBundle*>(&two)}) {
    const auto r = check_szego_identity(s, *M, draw_samples(E, 2, 10, 22), 1e-8);
    o.require(r.verdict == Verdict::Pass, "m=2 r=" + std::to_string(M->rank()) + " " + sci(r.residual));
  }
  double drift = 0.0;
  for (const auto& p : draw_samples(E, 1, 10, 23)) {
    for (const cplx v : szego_residue(s, two, p[0], cplx(1e-4, 0.0))) drift = std::max(drift, std::abs(v - 1.0));
  }
  o.require(drift < 0.02, "residue " + sci(drift));
  for (const SplitBundle* M : {&one, static_cast<const SplitBundle*>(&two)}) {
    const auto r = check_det_equivalence(s, *M, draw_samples(E, 2, 10, 24), 1e-8);
    o.require(r.verdict == Verdict::Pass, "det-equivalence r=" + std::to_string(M->rank()) + " " + sci(r.residual));
  }
}

// --- 7: KP
void kp(Outcome& o) {
  const PrimeForm E(Jacobian(HyperellipticCurve(fixtures::genus2())));
  for (int r : {1, 2}) {
    KpOptions opt;
    opt.r = r;
    opt.n = 4;
    opt.sample_count = 10;
    opt.seed = 31;
    opt.tolerance = 1e-6;
    const auto rep = check_kp_identity(E, opt);
    o.require(rep.verdict == Verdict::Pass, "r=" + std::to_string(r) + " lambda " + sci(rep.residual));
  }
  const auto& J = E.jacobian();
  const std::vector<SectionBasis> bases{section_basis(J.curve(), 4)};
  // sample_regular_configuration(m) returns 2m points; the bases need 3.
  auto ys = J.sample_regular_configuration(2, 32);
  auto refs = J.sample_regular_configuration(2, 33);
  ys.resize(3);
  refs.resize(3);

  std::vector<CurvePoint> swapped = ys;
  std::swap(swapped[0], swapped[1]);
  const ScaledComplex l0 = kp_lambda(E, bases, ys, refs);
  const double perm = relative_difference(kp_lambda(E, bases, swapped, refs), l0);
  const cplx det0 = kp_matrix(bases, ys).determinant();
  const cplx det1 = kp_matrix(bases, swapped).determinant();
  o.require(perm < 1e-10 && std::abs(det1 + det0) < 1e-12 * std::abs(det0), "swap y1,y2 " + sci(perm));

  CMatrix shear = CMatrix::Identity(3, 3), twice = CMatrix::Identity(3, 3);
  shear(0, 1) = 3.0;
  twice(0, 0) = 2.0;
  const CMatrix a = kp_matrix(bases, ys);
  const double dshear = std::abs((shear * a).determinant() / det0 - 1.0);
  const double dtwice = std::abs((twice * a).determinant() / det0 - 2.0);
  const double lhalf = std::abs((kp_lambda(E, bases, ys, refs, twice) / l0).value() - 0.5);
  o.require(dshear < 1e-12 && dtwice < 1e-12 && lhalf < 1e-12, "basis change det x1, x2, lambda x1/2 " + sci(lhalf));
  KpOptions opt;
  opt.r = 1;
  opt.n = 4;
  opt.seed = 31;
  opt.tolerance = 1e-6;
  opt.basis_change = shear * twice;
  const auto rerun = check_kp_identity(E, opt);
  o.require(rerun.verdict == Verdict::Pass, "constancy under new basis " + sci(rerun.residual));
}

// --- 8: covering
void covering(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const DoubleCover D(fixtures::cover_f1(), fixtures::cover_f2());
  o.require(D.cover_genus() == 3, "cover genus " + std::to_string(D.cover_genus()));
  const double inv = std::max({asymmetry(D.cover().tau().tau()), D.deck_eigen_error(), D.pullback_lattice_error()});
  o.require(inv < 1e-9 && positive_definite(D.cover().tau().imag()), "tau~ invariants " + sci(inv));

  const auto pf = check_prime_form_pullback(D, draw_cover_samples(D, 1, 11, 41), 1e-6);
  o.require(pf.verdict == Verdict::Pass, "prime-form pullback " + sci(pf.residual));
  const auto N = fixtures::degree0({0.13, 0.07}, {-0.21, 0.11});
  const auto di = check_direct_image(D, N, draw_cover_samples(D, 1, 5, 42), 1e-6);
  o.require(di.verdict == Verdict::Pass, "direct image " + sci(di.residual));
  const auto ii = check_inverse_image(D, N, draw_cover_samples(D, 1, 6, 43), 1e-6);
  o.require(ii.verdict == Verdict::Pass, "inverse image " + sci(ii.residual));
  int d0 = -1, d3 = -1;
  const bool deg = check_pushforward_degree(2, 3, 0, 1, &d0) && check_pushforward_degree(2, 3, 3, 1, &d3) &&
                   d0 == 0 && d3 == 3 && !check_pushforward_degree(2, 4, 0, 1);
  o.require(deg, "degree formula");
  const double secs = seconds_since(t0);
  o.require(secs < 600.0, "runtime " + sci(secs) + " s");
}

// --- 9: harness
int cli_exit(const std::string& config) {
  const std::string cmd = std::string(THETAKIT_CLI) + " verify " + config + " --output /dev/null --quiet 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void harness(Outcome& o) {
  const std::string dir = THETAKIT_FIXTURES;
  nlohmann::json a, b;
  cli::Overrides ov;
  ov.suites = std::vector<std::string>{"fay", "szego", "properties"};
  cli::run_file(dir + "/pass.cfg", ov, a);
  cli::run_file(dir + "/pass.cfg", ov, b);
  o.require(cli::without_wall_time(a) == cli::without_wall_time(b), "identical reports");
  const int pass = cli_exit(dir + "/pass.cfg"), fail = cli_exit(dir + "/fail.cfg"), err = cli_exit(dir + "/error.cfg");
  o.require(pass == 0 && fail == 1 && err == 2,
            "exit codes " + std::to_string(pass) + "/" + std::to_string(fail) + "/" + std::to_string(err));
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"theta oracle", theta_oracle},         {"period oracle", period_oracle}, {"Abel's theorem", abel_theorem},
      {"prime form", prime_form},             {"addition formula", addition_formula},
      {"Szego identities", szego},            {"KP identity", kp},              {"coverings", covering},
      {"harness", harness}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failed;
    std::printf("criterion %zu %s: %s -- %s\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
