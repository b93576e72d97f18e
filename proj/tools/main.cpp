// thetakit: run identity suites from a config file.
//
//   thetakit verify <config> [--seed N] [--tol T] [--suites a,b] [--output path]
//   thetakit describe <config> [--suites a,b]
//
// Exit codes: 0 all pass, 1 any identity failure, 2 configuration/build error.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "harness.hpp"

namespace {

void print_summary(const nlohmann::json& report) {
  if (report.contains("error")) {
    std::cerr << "error: " << report["error"]["message"].get<std::string>() << "\n";
  }
  for (const auto& r : report["suites"]) {
    if (r.contains("error")) {
      std::cerr << r["suite"].get<std::string>() << ": error: " << r["error"]["message"].get<std::string>() << "\n";
      continue;
    }
    std::printf("%-10s %-24s %-13s residual %.3e  tol %.1e\n", r["suite"].get<std::string>().c_str(),
                r["name"].get<std::string>().c_str(), r["verdict"].get<std::string>().c_str(),
                r["residual"].get<double>(), r["tolerance"].get<double>());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of theta-function identities on hyperelliptic curves"};
  app.require_subcommand(1);

  std::string config;
  thetakit::cli::Overrides ov;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::vector<std::string> suites;
  std::string output;
  bool quiet = false;

  auto* verify = app.add_subcommand("verify", "Run the configured suites and write the JSON report");
  verify->add_option("config", config, "Config file (JSON or key = value)")->required();
  auto* seed_opt = verify->add_option("--seed", seed, "Override the seed");
  auto* tol_opt = verify->add_option("--tol", tol, "Override the identity tolerance");
  auto* suites_opt = verify->add_option("--suites", suites, "Override the suite list")->delimiter(',');
  verify->add_option("--output", output, "Write the report here (default: config output, else stdout)");
  verify->add_flag("-q,--quiet", quiet, "No summary lines");

  auto* desc = app.add_subcommand("describe", "Print the plan without running it");
  desc->add_option("config", config, "Config file (JSON or key = value)")->required();
  auto* dsuites_opt = desc->add_option("--suites", suites, "Override the suite list")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  if (*desc) {
    if (*dsuites_opt) ov.suites = suites;
    try {
      std::cout << thetakit::cli::describe(thetakit::cli::load_config(config, ov));
      return 0;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }

  if (*seed_opt) ov.seed = seed;
  if (*tol_opt) ov.tol = tol;
  if (*suites_opt) ov.suites = suites;
  nlohmann::json report;
  const int code = thetakit::cli::run_file(config, ov, report);
  if (output.empty() && report.contains("config_echo") && report["config_echo"].is_object()) {
    output = report["config_echo"].value("output", "");
  }
  if (output.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::ofstream out(output);
    if (!out) {
      std::cerr << "error: cannot write '" << output << "'\n";
      return 2;
    }
    out << report.dump(2) << "\n";
    if (!quiet) print_summary(report);
  }
  if (code == 2 && output.empty()) print_summary(report);
  return code;
}
