#pragma once

#include <cstddef>
#include <exception>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsl/bounds.hpp"
#include "qsl/config.hpp"
#include "qsl/verify.hpp"

namespace qsl {

inline constexpr const char* kVersion = "0.1.0";

/// Population of the top two oscillator levels may grow by at most this much
/// before a truncated run is rejected.
inline constexpr double kMaxTruncationLeakage = 1e-6;

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitAudit = 4,
};

struct RunResult {
  QSLReport qsl;
  AuditReport audit;
  std::size_t steps = 0;
  /// modulated_oscillator only: growth of the top-two-level population.
  std::optional<double> truncation_leakage;
  double wall_ms = 0.0;
};

/// ground_shift -> propagate -> build_report -> audit_trajectory.
/// Throws TruncationLeakage when an oscillator run leaks past the cut.
RunResult run_pipeline(const ProtocolConfig& cfg, double tol = kDefaultAuditTolerance);

/// Report document. Non-finite numbers are written as the string "inf".
/// With include_timing = false wall_ms is written as 0, which makes the
/// output a pure function of the configuration.
nlohmann::ordered_json report_to_json(const RunResult& result, bool include_timing = true);

struct SweepSpec {
  std::string parameter;
  std::vector<double> values;
};

struct SweepRow {
  double param_value = 0.0;
  QSLReport qsl;
  bool audit_passed = false;
};

struct SweepOutcome {
  /// Completed runs, in input order.
  std::vector<SweepRow> rows;
  /// One message per failed run; failed runs have no row.
  std::vector<std::string> failures;
  int worst_exit = kExitOk;
};

/// Runs each override of `base` concurrently; rows come back in input order.
SweepOutcome run_sweep(const nlohmann::json& base, const std::filesystem::path& base_dir, const SweepSpec& spec,
                       double tol = kDefaultAuditTolerance);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

struct FisherRow {
  double t = 0.0;
  double fisher = 0.0;
  double inverse_width_sq = 0.0;
  double velocity_sq = 0.0;
};

/// Translated-Gaussian family with mean t over [t_min, t_max]; one row per
/// interior parameter sample.
std::vector<FisherRow> fisher_demo(double sigma, double t_min = 0.0, double t_max = 1.0,
                                   std::size_t samples = 101);

void write_fisher_csv(std::ostream& out, const std::vector<FisherRow>& rows);

/// %.17g, or "inf" / "-inf" / "nan".
std::string format_number(double value);

/// Maps an exception onto the CLI exit-code contract.
int exit_code_for(const std::exception& e);

// Command entry points used by the executable. Each prints diagnostics to
// `err` and returns an exit code.
int run_command(const std::filesystem::path& config, const std::optional<std::filesystem::path>& output,
                bool include_timing, std::ostream& out, std::ostream& err);
int audit_command(const std::filesystem::path& config, double tol, std::ostream& out, std::ostream& err);
int sweep_command(const std::filesystem::path& config, const SweepSpec& spec, const std::filesystem::path& output,
                  std::ostream& err);
int fisher_command(double sigma, const std::filesystem::path& output, std::ostream& err);

}  // namespace qsl
