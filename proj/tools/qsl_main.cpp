#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qsl/app.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Quantum speed limits for driven finite-dimensional systems"};
  app.set_version_flag("--version", qsl::kVersion);
  app.require_subcommand(1);

  std::string run_config;
  std::string run_output;
  bool no_timing = false;
  auto* run = app.add_subcommand("run", "propagate one configuration and write the JSON report");
  run->add_option("config", run_config, "run configuration (JSON)")->required();
  run->add_option("-o,--output", run_output, "report path (stdout when omitted)");
  run->add_flag("--no-timing", no_timing, "write wall_ms as 0 so reports are byte-reproducible");

  std::string sweep_config;
  std::string sweep_output;
  qsl::SweepSpec spec;
  auto* sweep = app.add_subcommand("sweep", "rerun a configuration over values of one parameter");
  sweep->add_option("config", sweep_config, "base configuration (JSON)")->required();
  sweep->add_option("--param", spec.parameter, "dotted path into the configuration, e.g. params.gamma")
      ->required();
  sweep->add_option("--values", spec.values, "comma-separated values")->required()->delimiter(',');
  sweep->add_option("-o,--output", sweep_output, "CSV path")->required();

  std::string audit_config;
  double tol = qsl::kDefaultAuditTolerance;
  auto* audit = app.add_subcommand("audit", "run a configuration and print the inequality audit");
  audit->add_option("config", audit_config, "run configuration (JSON)")->required();
  audit->add_option("--tol", tol, "margin tolerance")->capture_default_str();

  double sigma = 1.0;
  std::string fisher_output;
  auto* fisher = app.add_subcommand("fisher", "Fisher information of a translated Gaussian family");
  fisher->add_option("--sigma", sigma, "Gaussian width")->required();
  fisher->add_option("-o,--output", fisher_output, "CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qsl::kExitConfig;
  }

  if (*run) {
    std::optional<std::filesystem::path> out;
    if (!run_output.empty()) out = run_output;
    return qsl::run_command(run_config, out, !no_timing, std::cout, std::cerr);
  }
  if (*sweep) return qsl::sweep_command(sweep_config, spec, sweep_output, std::cerr);
  if (*audit) return qsl::audit_command(audit_config, tol, std::cout, std::cerr);
  return qsl::fisher_command(sigma, fisher_output, std::cerr);
}
