#include "harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <future>
#include <numbers>
#include <random>
#include <regex>
#include <sstream>

#include "thetakit/covering.hpp"
#include "thetakit/errors.hpp"
#include "thetakit/identities.hpp"
#include "thetakit/kp.hpp"
#include "thetakit/theta.hpp"

namespace thetakit::cli {

using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0";

// ---------------------------------------------------------------- parsing

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_decimal(const json& v, const std::string& field) {
  if (v.is_number()) return v.get<double>();
  if (!v.is_string()) throw FieldError(field, "expected a decimal string");
  const std::string s = trim(v.get<std::string>());
  double out = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (s.empty() || ec != std::errc() || ptr != last || !std::isfinite(out)) {
    throw FieldError(field, "malformed decimal '" + s + "'");
  }
  return out;
}

long long parse_integer(const json& v, const std::string& field) {
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_string()) {
    const std::string s = trim(v.get<std::string>());
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (!s.empty() && ec == std::errc() && ptr == s.data() + s.size()) return out;
  }
  throw FieldError(field, "expected an integer");
}

std::vector<cplx> parse_coefficients(const json& v, const std::string& field) {
  if (!v.is_array() || v.empty()) throw FieldError(field, "expected a list of (re, im) pairs");
  std::vector<cplx> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    const json& p = v[i];
    if (!p.is_array() || p.size() != 2) throw FieldError(f, "expected a (re, im) pair");
    out.emplace_back(parse_decimal(p[0], f + ".re"), parse_decimal(p[1], f + ".im"));
  }
  return out;
}

double parse_tolerance(const json& v, const std::string& field, double lo, double hi) {
  const double t = parse_decimal(v, field);
  if (!(t >= lo && t <= hi)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "outside [%g, %g]", lo, hi);
    throw FieldError(field, buf);
  }
  return t;
}

// "(0.3, 0.1), (-1.2, 0.4)" -> [["0.3","0.1"], ["-1.2","0.4"]]
json parse_pair_list(const std::string& text, const std::string& field) {
  static const std::regex pair(R"(\(\s*([^,()]*?)\s*,\s*([^,()]*?)\s*\))");
  json out = json::array();
  std::string rest = text;
  std::smatch m;
  while (std::regex_search(rest, m, pair)) {
    if (!trim(m.prefix().str()).empty() && trim(m.prefix().str()) != ",") {
      throw FieldError(field, "unexpected text '" + trim(m.prefix().str()) + "'");
    }
    out.push_back(json::array({m[1].str(), m[2].str()}));
    rest = m.suffix().str();
  }
  if (!trim(rest).empty()) throw FieldError(field, "unexpected text '" + trim(rest) + "'");
  return out;
}

json parse_key_value(const std::string& text) {
  json j = json::object();
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw FieldError("line " + std::to_string(lineno), "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "curve" || key == "cover.f1" || key == "cover.f2") {
      const json pairs = parse_pair_list(value, key);
      if (key == "curve") {
        j["curve"] = pairs;
      } else {
        j["cover"][key.substr(6)] = pairs;
      }
    } else if (key == "suites") {
      json list = json::array();
      std::istringstream items(value);
      std::string item;
      while (std::getline(items, item, ',')) {
        if (!trim(item).empty()) list.push_back(trim(item));
      }
      j["suites"] = list;
    } else if (const auto dot = key.find('.'); dot != std::string::npos) {
      j[key.substr(0, dot)][key.substr(dot + 1)] = value;
    } else {
      j[key] = value;
    }
  }
  return j;
}

std::vector<cplx> poly_product(const std::vector<cplx>& p, const std::vector<cplx>& q) {
  std::vector<cplx> r(p.size() + q.size() - 1, cplx(0.0, 0.0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t k = 0; k < q.size(); ++k) r[i + k] += p[i] * q[k];
  }
  return r;
}

SuiteParams default_params(const std::string& suite) {
  if (suite == "fay") return {1, 2, 4, 20};
  if (suite == "szego") return {1, 1, 4, 10};
  if (suite == "detcmp") return {1, 2, 4, 10};
  if (suite == "kp") return {1, 3, 4, 10};
  if (suite == "covering") return {1, 1, 4, 5};
  return {1, 1, 4, 10};
}

RunConfig from_json(const json& j, const Overrides& ov) {
  if (!j.is_object()) throw FieldError("config", "expected an object");
  RunConfig c;
  static const std::vector<std::string> top{"curve",    "cover",        "suites",  "seed",     "theta_tol",
                                            "quad_tol", "identity_tol", "workers", "ordering", "output"};
  for (const auto& [key, value] : j.items()) {
    const bool suite_key = std::find(known_suites().begin(), known_suites().end(), key) != known_suites().end();
    if (!suite_key && std::find(top.begin(), top.end(), key) == top.end()) {
      throw FieldError(key, "unknown key");
    }
  }
  if (j.contains("cover")) {
    const json& cv = j.at("cover");
    if (!cv.is_object() || !cv.contains("f1") || !cv.contains("f2")) {
      throw FieldError("cover", "expected f1 and f2 coefficient lists");
    }
    c.cover = std::make_pair(parse_coefficients(cv.at("f1"), "cover.f1"), parse_coefficients(cv.at("f2"), "cover.f2"));
  }
  if (j.contains("curve")) {
    c.curve = parse_coefficients(j.at("curve"), "curve");
  } else if (c.cover) {
    c.curve = poly_product(c.cover->first, c.cover->second);
  } else {
    throw FieldError("curve", "missing");
  }
  if (c.cover) {
    const auto prod = poly_product(c.cover->first, c.cover->second);
    double scale = 0.0, diff = 0.0;
    for (std::size_t i = 0; i < std::max(prod.size(), c.curve.size()); ++i) {
      const cplx a = i < prod.size() ? prod[i] : cplx(0.0, 0.0);
      const cplx b = i < c.curve.size() ? c.curve[i] : cplx(0.0, 0.0);
      scale = std::max(scale, std::abs(b));
      diff = std::max(diff, std::abs(a - b));
    }
    if (diff > 1e-12 * std::max(scale, 1.0)) throw FieldError("cover", "f1 * f2 does not reproduce the curve");
  }

  if (ov.suites) {
    c.suites = *ov.suites;
  } else if (j.contains("suites")) {
    if (!j.at("suites").is_array()) throw FieldError("suites", "expected a list");
    for (const auto& s : j.at("suites")) {
      if (!s.is_string()) throw FieldError("suites", "expected suite names");
      c.suites.push_back(s.get<std::string>());
    }
  }
  for (std::size_t i = 0; i < c.suites.size(); ++i) {
    if (std::find(known_suites().begin(), known_suites().end(), c.suites[i]) == known_suites().end()) {
      throw FieldError("suites[" + std::to_string(i) + "]", "unknown suite '" + c.suites[i] + "'");
    }
  }
  for (const auto& s : known_suites()) {
    SuiteParams p = default_params(s);
    if (j.contains(s)) {
      const json& o = j.at(s);
      if (!o.is_object()) throw FieldError(s, "expected an object of suite parameters");
      for (const auto& [key, value] : o.items()) {
        const std::string f = s + "." + key;
        const long long v = parse_integer(value, f);
        if (v < 1 || v > 1000) throw FieldError(f, "outside [1, 1000]");
        if (key == "r") {
          p.r = static_cast<int>(v);
        } else if (key == "m") {
          p.m = static_cast<int>(v);
        } else if (key == "n") {
          p.n = static_cast<int>(v);
        } else if (key == "sample_count") {
          p.sample_count = static_cast<int>(v);
        } else {
          throw FieldError(f, "unknown parameter");
        }
      }
    }
    c.params[s] = p;
  }

  if (ov.seed) {
    c.seed = *ov.seed;
  } else if (j.contains("seed")) {
    const long long s = parse_integer(j.at("seed"), "seed");
    if (s < 0) throw FieldError("seed", "must be non-negative");
    c.seed = static_cast<std::uint64_t>(s);
  } else {
    throw FieldError("seed", "missing (runs are never seeded from the clock)");
  }
  if (j.contains("theta_tol")) c.theta_tol = parse_tolerance(j.at("theta_tol"), "theta_tol", 1e-14, 1e-4);
  if (j.contains("quad_tol")) c.quad_tol = parse_tolerance(j.at("quad_tol"), "quad_tol", 1e-14, 1e-6);
  if (j.contains("identity_tol")) c.identity_tol = parse_tolerance(j.at("identity_tol"), "identity_tol", 1e-15, 1.0);
  if (ov.tol) {
    if (!(*ov.tol >= 1e-15 && *ov.tol <= 1.0)) throw FieldError("--tol", "outside [1e-15, 1]");
    c.identity_tol = *ov.tol;
  }
  if (j.contains("workers")) {
    const long long w = parse_integer(j.at("workers"), "workers");
    if (w < 1 || w > 64) throw FieldError("workers", "outside [1, 64]");
    c.workers = static_cast<int>(w);
  }
  if (j.contains("ordering")) {
    if (!j.at("ordering").is_string()) throw FieldError("ordering", "expected fay or as_stated");
    c.ordering = j.at("ordering").get<std::string>();
    if (c.ordering != "fay" && c.ordering != "as_stated") throw FieldError("ordering", "expected fay or as_stated");
  }
  if (j.contains("output")) {
    if (!j.at("output").is_string()) throw FieldError("output", "expected a path");
    c.output = j.at("output").get<std::string>();
  }
  return c;
}

// ---------------------------------------------------------------- report JSON

std::string decimal_component(double mant, double exponent) {
  if (mant == 0.0) return "0";
  const double l10 = std::log10(std::abs(mant)) + exponent / std::numbers::ln10;
  const double e10 = std::floor(l10);
  const double digits = std::pow(10.0, l10 - e10);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%.15fe%+.0f", mant < 0 ? "-" : "", digits, e10);
  return buf;
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

json point_json(const CurvePoint& p) {
  if (p.at_infinity) return "inf";
  return json::array({p.x.real(), p.x.imag(), p.y.real(), p.y.imag()});
}

json report_json(const IdentityReport& r, const std::string& suite) {
  json samples = json::array();
  for (const auto& s : r.samples) {
    json pts = json::array();
    for (const auto& p : s.points) pts.push_back(point_json(p));
    samples.push_back({{"points", pts}, {"lhs", scaled_json(s.lhs)}, {"rhs", scaled_json(s.rhs)}, {"residual", s.residual}});
  }
  return {{"suite", suite},
          {"name", r.name},
          {"curve_digest", r.curve_digest},
          {"seed", r.seed},
          {"samples", samples},
          {"lhs", scaled_json(r.lhs)},
          {"rhs", scaled_json(r.rhs)},
          {"residual", r.residual},
          {"tolerance", r.tolerance},
          {"verdict", to_string(r.verdict)},
          {"wall_time", r.wall_time},
          {"note", r.note}};
}

json error_json(const std::string& code, const std::string& field, const std::string& message) {
  return {{"code", code}, {"field", field}, {"message", message}};
}

std::string hex_digest(const CMatrix& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    for (double d : {m.data()[i].real(), m.data()[i].imag()}) {
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

// ---------------------------------------------------------------- suites

struct Context {
  const RunConfig& cfg;
  Jacobian J;
  PrimeForm E;
};

IdentityReport scalar_report(const std::string& name, const std::string& digest, std::uint64_t seed, double residual,
                             double tolerance, std::string note) {
  IdentityReport r;
  r.name = name;
  r.curve_digest = digest;
  r.seed = seed;
  r.tolerance = tolerance;
  r.samples.push_back({{}, ScaledComplex(cplx(residual, 0.0)), ScaledComplex::zero(), residual});
  r.finalize();
  r.note = std::move(note);
  return r;
}

// Degree-0 classes tau a + b with a, b uniform in [-1/2, 1/2)^g, redrawn
// until theta of the shifted argument is clearly nonzero.
JacobianPoint random_class(const Jacobian& J, const CVector& shift, std::mt19937_64& rng) {
  const int g = J.genus();
  for (int attempt = 0; attempt < 64; ++attempt) {
    Eigen::VectorXd a(g), b(g);
    for (int i = 0; i < g; ++i) {
      a(i) = unit_uniform(rng()) - 0.5;
      b(i) = unit_uniform(rng()) - 0.5;
    }
    const CVector v = J.tau().tau() * a.cast<cplx>() + b.cast<cplx>();
    if (J.theta_divisor_membership(v + shift) == Membership::Off) return {v, 0};
  }
  throw Error(ErrorCode::SamplingExhausted, "no degree-0 class off the theta divisor");
}

SplitBundle random_bundle(const Context& ctx, int r, std::uint64_t salt) {
  std::mt19937_64 rng(ctx.cfg.seed * 0x9e3779b97f4a7c15ULL + salt);
  const CVector shift = ctx.E.delta().shift(ctx.J.tau());
  SplitBundle M;
  for (int k = 0; k < r; ++k) M.summands.push_back(random_class(ctx.J, shift, rng));
  return M;
}

// Splits the samples over `workers` threads; the merged report is identical
// to the single-threaded one apart from wall time.
template <class Fn>
IdentityReport chunked(const std::vector<std::vector<CurvePoint>>& samples, int workers, Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  if (workers <= 1 || samples.size() < 2) return fn(samples);
  const std::size_t parts = std::min<std::size_t>(static_cast<std::size_t>(workers), samples.size());
  std::vector<std::future<IdentityReport>> futures;
  for (std::size_t p = 0; p < parts; ++p) {
    const std::size_t lo = samples.size() * p / parts;
    const std::size_t hi = samples.size() * (p + 1) / parts;
    std::vector<std::vector<CurvePoint>> chunk(samples.begin() + static_cast<std::ptrdiff_t>(lo),
                                               samples.begin() + static_cast<std::ptrdiff_t>(hi));
    futures.push_back(std::async(std::launch::async, [&fn, chunk = std::move(chunk)] { return fn(chunk); }));
  }
  IdentityReport merged;
  for (std::size_t p = 0; p < parts; ++p) {
    IdentityReport r = futures[p].get();
    if (p == 0) {
      merged = r;
      merged.samples.clear();
    }
    merged.samples.insert(merged.samples.end(), r.samples.begin(), r.samples.end());
  }
  merged.finalize();
  merged.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return merged;
}

std::vector<IdentityReport> run_identity_suite(const Context& ctx, const std::string& suite) {
  const SuiteParams& p = ctx.cfg.params.at(suite);
  const SplitBundle M = random_bundle(ctx, p.r, 1);
  const ThetaSetting s = ThetaSetting::standard(ctx.E, ctx.cfg.theta_tol);
  const auto samples = draw_samples(ctx.E, p.m, p.sample_count, ctx.cfg.seed);
  const double tol = ctx.cfg.identity_tol;
  const PairOrdering ord = ctx.cfg.ordering == "fay" ? PairOrdering::Fay : PairOrdering::AsStated;
  IdentityReport r;
  if (suite == "fay") {
    r = chunked(samples, ctx.cfg.workers, [&](const auto& ss) { return check_addition_formula(s, M, ss, tol, ord); });
  } else if (suite == "szego") {
    r = chunked(samples, ctx.cfg.workers, [&](const auto& ss) { return check_szego_identity(s, M, ss, tol, ord); });
  } else {
    r = chunked(samples, ctx.cfg.workers, [&](const auto& ss) { return check_det_equivalence(s, M, ss, tol); });
  }
  r.seed = ctx.cfg.seed;
  return {r};
}

std::vector<IdentityReport> run_kp(const Context& ctx) {
  const SuiteParams& p = ctx.cfg.params.at("kp");
  KpOptions opt;
  opt.r = p.r;
  opt.n = p.n;
  opt.sample_count = p.sample_count;
  opt.seed = ctx.cfg.seed;
  opt.tolerance = ctx.cfg.identity_tol;
  return {check_kp_identity(ctx.E, opt)};
}

std::vector<IdentityReport> run_covering(const Context& ctx) {
  if (!ctx.cfg.cover) throw FieldError("cover", "the covering suite needs cover.f1 and cover.f2");
  const SuiteParams& p = ctx.cfg.params.at("covering");
  const double tol = ctx.cfg.identity_tol;
  const std::uint64_t seed = ctx.cfg.seed;
  const DoubleCover D(ctx.cfg.cover->first, ctx.cfg.cover->second, ctx.cfg.quad_tol, ctx.cfg.theta_tol);
  const std::string digest = curve_digest(D.base().curve());
  std::vector<IdentityReport> out;

  const CMatrix& tc = D.cover().tau().tau();
  const double sym = (tc - tc.transpose()).cwiseAbs().maxCoeff();
  const double eig = D.deck_eigen_error();
  const double lat = D.pullback_lattice_error();
  out.push_back(scalar_report("cover_periods", digest, seed, std::max({sym, eig, lat}), 1e-8,
                              "tau~ symmetry, deck eigenvalues, pullback of the base lattice"));
  const double two = lattice_residual(2.0 * D.torsion(), D.base().tau());
  const double self = lattice_residual(D.torsion(), D.base().tau());
  IdentityReport tb = scalar_report("torsion_bundle", digest, seed, two, 1e-7, "2 A(L) on the lattice, A(L) off it");
  if (!(self > 1e-3)) tb.verdict = Verdict::Fail;
  out.push_back(tb);

  auto pf = check_prime_form_pullback(D, draw_cover_samples(D, 1, 2 * p.sample_count + 1, seed), tol);
  pf.seed = seed;
  out.push_back(pf);

  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 7);
  const CVector shift = D.base_prime_form().delta().shift(D.base().tau());
  JacobianPoint N;
  for (int attempt = 0;; ++attempt) {
    N = random_class(D.base(), shift, rng);
    const CVector e1 = N.vec + shift;
    if (D.base().theta_divisor_membership(e1 + D.torsion()) == Membership::Off &&
        D.cover().theta_divisor_membership(D.cover_theta_argument(e1)) == Membership::Off) {
      break;
    }
    if (attempt > 64) throw Error(ErrorCode::SamplingExhausted, "no class N with regular denominators");
  }
  auto di = check_direct_image(D, N, draw_cover_samples(D, p.m, p.sample_count, seed + 1), tol);
  di.seed = seed;
  out.push_back(di);
  auto ii = check_inverse_image(D, N, draw_cover_samples(D, p.m, p.sample_count + 1, seed + 2), tol);
  ii.seed = seed;
  out.push_back(ii);

  const int g = D.base_genus();
  const int gc = D.cover_genus();
  int d0 = -1, d3 = -1;
  const bool ok = check_pushforward_degree(g, gc, 0, 1, &d0) && check_pushforward_degree(g, gc, 3, 1, &d3) &&
                  d0 == 0 && d3 == 3 && !check_pushforward_degree(g, gc + 1, 0, 1);
  out.push_back(scalar_report("pushforward_degree", digest, seed, ok ? 0.0 : 1.0, 0.0,
                              "deg gamma_* for (d~, r~) = (0, 1), (3, 1); genus mismatch rejected"));
  return out;
}

std::vector<IdentityReport> run_properties(const Context& ctx) {
  const SuiteParams& p = ctx.cfg.params.at("properties");
  const Jacobian& J = ctx.J;
  const int g = J.genus();
  const double tol = ctx.cfg.theta_tol;
  const std::string digest = curve_digest(J.curve());
  const std::uint64_t seed = ctx.cfg.seed;
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 3);
  const Characteristic zero = Characteristic::zero(g);
  std::vector<IdentityReport> out;

  auto start = [&](const std::string& name, double tolerance) {
    IdentityReport r;
    r.name = name;
    r.curve_digest = digest;
    r.seed = seed;
    r.tolerance = tolerance;
    return r;
  };
  auto finish = [&](IdentityReport& r, std::chrono::steady_clock::time_point t0) {
    r.finalize();
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(r);
  };

  {
    const auto t0 = std::chrono::steady_clock::now();
    IdentityReport par = start("theta_parity", 1e-10);
    IdentityReport qp = start("theta_quasi_periodicity", 1e-10);
    for (int s = 0; s < p.sample_count; ++s) {
      CVector z(g);
      for (int i = 0; i < g; ++i) z(i) = cplx(unit_uniform(rng()) - 0.5, unit_uniform(rng()) - 0.5);
      const ScaledComplex a = theta(z, J.tau(), zero, tol);
      const ScaledComplex b = theta(CVector(-z), J.tau(), zero, tol);
      par.samples.push_back({{}, a, b, relative_difference(a, b)});
      const int j = s % g;
      const CVector shifted = z + J.tau().tau().col(j) + CVector::Unit(g, (s + 1) % g);
      const cplx expo =
          cplx(0.0, std::numbers::pi) * J.tau().tau()(j, j) + cplx(0.0, 2.0 * std::numbers::pi) * z(j);
      const ScaledComplex lhs = theta(shifted, J.tau(), zero, tol) * ScaledComplex::from_exp(expo);
      qp.samples.push_back({{}, lhs, a, relative_difference(lhs, a)});
    }
    finish(par, t0);
    finish(qp, t0);
  }
  {
    // div(x - x0) = P + P' - 2 inf and div(y) = sum e_k - (2g + 1) inf.
    const auto t0 = std::chrono::steady_clock::now();
    IdentityReport ab = start("abel_theorem", 1e-6);
    const CVector inf = J.abel_infinity();
    CVector dy = -static_cast<double>(2 * g + 1) * inf;
    for (int k = 0; k < 2 * g + 1; ++k) dy += J.abel_map(J.curve().branch_point(k));
    const double ry = lattice_residual(dy, J.tau());
    ab.samples.push_back({{}, ScaledComplex(cplx(ry, 0.0)), ScaledComplex::zero(), ry});
    const auto pts = J.sample_regular_configuration((p.sample_count + 1) / 2, seed ^ 0xab31ULL);
    for (const auto& q : pts) {
      const CurvePoint qc = J.curve().conjugate(q);
      const double r = lattice_residual(J.abel_map(q) + J.abel_map(qc) - 2.0 * inf, J.tau());
      ab.samples.push_back({{q, qc}, ScaledComplex(cplx(r, 0.0)), ScaledComplex::zero(), r});
    }
    finish(ab, t0);
  }
  {
    const auto t0 = std::chrono::steady_clock::now();
    IdentityReport anti = start("prime_form_antisymmetry", 1e-12);
    IdentityReport res = start("szego_residue", 2e-2);
    const ThetaSetting st = ThetaSetting::standard(ctx.E, tol);
    const SplitBundle M = random_bundle(ctx, 1, 5);
    for (const auto& pq : draw_samples(ctx.E, 1, p.sample_count, seed ^ 0x5a5aULL)) {
      const ScaledComplex a = ctx.E(pq[0], pq[1]).value;
      const ScaledComplex b = -ctx.E(pq[1], pq[0]).value;
      anti.samples.push_back({pq, a, b, relative_difference(a, b)});
      const cplx rv = szego_residue(st, M, pq[0], cplx(1e-4 * J.curve().scale(), 0.0)).front();
      res.samples.push_back({{pq[0]}, ScaledComplex(rv), ScaledComplex::one(), std::abs(rv - 1.0)});
    }
    finish(anti, t0);
    finish(res, t0);
  }
  return out;
}

std::vector<IdentityReport> run_suite(const Context& ctx, const std::string& suite) {
  if (suite == "fay" || suite == "szego" || suite == "detcmp") return run_identity_suite(ctx, suite);
  if (suite == "kp") return run_kp(ctx);
  if (suite == "covering") return run_covering(ctx);
  return run_properties(ctx);
}

}  // namespace

json scaled_json(const ScaledComplex& v) {
  const cplx m = v.mantissa();
  const double e = v.exponent();
  return {{"mantissa", cplx_json(m)},
          {"exponent", e},
          {"decimal", "(" + decimal_component(m.real(), e) + ", " + decimal_component(m.imag(), e) + ")"}};
}

json without_wall_time(json j) {
  if (j.is_object()) {
    j.erase("wall_time");
    for (auto& [k, v] : j.items()) v = without_wall_time(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = without_wall_time(v);
  }
  return j;
}

RunConfig parse_config(const std::string& text, const Overrides& ov) {
  const std::string t = trim(text);
  json j;
  if (!t.empty() && t.front() == '{') {
    try {
      j = json::parse(t);
    } catch (const json::parse_error& e) {
      throw FieldError("config", std::string("invalid JSON: ") + e.what());
    }
  } else {
    j = parse_key_value(text);
  }
  return from_json(j, ov);
}

RunConfig load_config(const std::string& path, const Overrides& ov) {
  std::ifstream in(path);
  if (!in) throw FieldError("config", "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), ov);
}

json echo(const RunConfig& c) {
  json curve = json::array();
  for (cplx z : c.curve) curve.push_back(cplx_json(z));
  json j = {{"curve", curve},
            {"suites", c.suites},
            {"seed", c.seed},
            {"theta_tol", c.theta_tol},
            {"quad_tol", c.quad_tol},
            {"identity_tol", c.identity_tol},
            {"workers", c.workers},
            {"ordering", c.ordering},
            {"output", c.output}};
  if (c.cover) {
    json f1 = json::array(), f2 = json::array();
    for (cplx z : c.cover->first) f1.push_back(cplx_json(z));
    for (cplx z : c.cover->second) f2.push_back(cplx_json(z));
    j["cover"] = {{"f1", f1}, {"f2", f2}};
  }
  for (const auto& s : c.suites) {
    const SuiteParams& p = c.params.at(s);
    j["params"][s] = {{"r", p.r}, {"m", p.m}, {"n", p.n}, {"sample_count", p.sample_count}};
  }
  return j;
}

int run(const RunConfig& c, json& report) {
  report = json::object();
  report["version"] = kVersion;
  report["config_echo"] = echo(c);
  report["suites"] = json::array();
  int pass = 0, fail = 0, indeterminate = 0, errors = 0;
  std::optional<Context> ctx;
  try {
    Jacobian J(HyperellipticCurve(c.curve), c.quad_tol);
    PrimeForm E(J, c.theta_tol);
    ctx.emplace(Context{c, J, E});
    report["curve"] = {{"genus", J.genus()}, {"tau_digest", hex_digest(J.tau().tau())}};
  } catch (const Error& e) {
    report["error"] = error_json(std::string(to_string(e.code())), "curve", e.what());
    report["summary"] = {{"pass", 0}, {"fail", 0}, {"indeterminate", 0}, {"error", 1}};
    return 2;
  }
  for (const auto& suite : c.suites) {
    try {
      for (const auto& r : run_suite(*ctx, suite)) {
        report["suites"].push_back(report_json(r, suite));
        switch (r.verdict) {
          case Verdict::Pass: ++pass; break;
          case Verdict::Fail: ++fail; break;
          case Verdict::Indeterminate: ++indeterminate; break;
        }
      }
    } catch (const FieldError& e) {
      ++errors;
      report["suites"].push_back({{"suite", suite}, {"error", error_json("ConfigError", e.field(), e.what())}});
    } catch (const Error& e) {
      ++errors;
      report["suites"].push_back(
          {{"suite", suite}, {"error", error_json(std::string(to_string(e.code())), suite, e.what())}});
    }
  }
  report["summary"] = {{"pass", pass}, {"fail", fail}, {"indeterminate", indeterminate}, {"error", errors}};
  if (errors > 0) return 2;
  return fail > 0 || indeterminate > 0 ? 1 : 0;
}

int run_file(const std::string& path, const Overrides& ov, json& report) {
  RunConfig c;
  try {
    c = load_config(path, ov);
  } catch (const FieldError& e) {
    report = {{"version", kVersion},
              {"config_echo", nullptr},
              {"suites", json::array()},
              {"error", error_json("ConfigError", e.field(), e.what())},
              {"summary", {{"pass", 0}, {"fail", 0}, {"indeterminate", 0}, {"error", 1}}}};
    return 2;
  }
  return run(c, report);
}

std::string describe(const RunConfig& c) {
  if (c.suites.empty()) return "nothing to run\n";
  const Jacobian J(HyperellipticCurve(c.curve), c.quad_tol);
  const double radius = theta_radius(J.tau(), c.theta_tol);
  std::ostringstream os;
  char buf[256];
  for (const auto& s : c.suites) {
    const SuiteParams& p = c.params.at(s);
    double r = radius;
    std::string shape;
    if (s == "kp") {
      shape = "r=" + std::to_string(p.r) + " n=" + std::to_string(p.n);
    } else if (s == "covering") {
      shape = "m=" + std::to_string(p.m) + (c.cover ? "" : " (no cover configured)");
      if (c.cover) r = theta_radius(DoubleCover(c.cover->first, c.cover->second, c.quad_tol).cover().tau(), c.theta_tol);
    } else if (s == "properties") {
      shape = "theta parity, quasi-periodicity, Abel, antisymmetry, Szego residue";
    } else {
      shape = "r=" + std::to_string(p.r) + " m=" + std::to_string(p.m);
    }
    std::snprintf(buf, sizeof buf, "%-10s samples=%-4d radius=%.2f  %s\n", s.c_str(), p.sample_count, r, shape.c_str());
    os << buf;
  }
  return os.str();
}

}  // namespace thetakit::cli
