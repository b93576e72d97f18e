#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "thetakit/curve.hpp"

namespace thetakit::cli {

/// Config error tied to a field path such as "curve[2].re".
class FieldError : public std::runtime_error {
 public:
  FieldError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct SuiteParams {
  int r = 1;
  int m = 2;
  int n = 4;
  int sample_count = 10;
};

inline const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> s{"fay", "szego", "detcmp", "kp", "covering", "properties"};
  return s;
}

struct RunConfig {
  std::vector<cplx> curve;
  std::optional<std::pair<std::vector<cplx>, std::vector<cplx>>> cover;
  std::vector<std::string> suites;
  std::map<std::string, SuiteParams> params;
  std::uint64_t seed = 0;
  double theta_tol = 1e-13;
  double quad_tol = 1e-12;
  double identity_tol = 1e-8;
  int workers = 1;
  /// "fay" or "as_stated" (y-pair ordering of the addition formula).
  std::string ordering = "fay";
  std::string output;
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<std::vector<std::string>> suites;
};

/// JSON if the first non-blank character is '{', flat key = value otherwise.
/// Throws FieldError.
RunConfig parse_config(const std::string& text, const Overrides& ov = {});
RunConfig load_config(const std::string& path, const Overrides& ov = {});

/// Canonical JSON form of a config (used as config_echo).
nlohmann::json echo(const RunConfig& c);

/// Runs the suites in order and fills the report; returns the exit code
/// (0 all pass, 1 any failure or indeterminate, 2 configuration/build error).
int run(const RunConfig& c, nlohmann::json& report);

/// Parses then runs; parse errors produce an error document and code 2.
int run_file(const std::string& path, const Overrides& ov, nlohmann::json& report);

/// Dry-run plan: one line per suite, "nothing to run" when empty.
std::string describe(const RunConfig& c);

/// Scaled number as {"mantissa": [re, im], "exponent": e, "decimal": "..."}.
nlohmann::json scaled_json(const ScaledComplex& v);

/// Copy of a report with every "wall_time" field removed.
nlohmann::json without_wall_time(nlohmann::json j);

}  // namespace thetakit::cli
