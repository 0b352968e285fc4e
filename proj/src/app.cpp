#include "qsl/app.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <variant>

#include <fmt/format.h>

#include "qsl/errors.hpp"
#include "qsl/geometry.hpp"
#include "qsl/qdyn.hpp"

namespace qsl {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json number_json(double value) {
  if (std::isfinite(value)) return value;
  return format_number(value);
}

const char* ml_mode_name(MlMode mode) { return mode == MlMode::Linear ? "linear" : "quadratic"; }

double top_levels_population(const QuantumState& s) {
  const Eigen::Index d = s.dim();
  const Eigen::Index first = std::max<Eigen::Index>(0, d - 2);
  double pop = 0.0;
  if (s.is_pure()) {
    for (Eigen::Index i = first; i < d; ++i) pop += std::norm(s.amplitudes()[i]);
  } else {
    const Matrix rho = s.density();
    for (Eigen::Index i = first; i < d; ++i) pop += rho(i, i).real();
  }
  return pop;
}

double truncation_leakage(const Trajectory& traj) {
  const double start = top_levels_population(traj.states.front());
  double worst = 0.0;
  for (const auto& s : traj.states) worst = std::max(worst, top_levels_population(s) - start);
  return worst;
}

std::optional<std::filesystem::path> parent_dir(const std::filesystem::path& p) {
  if (p.has_parent_path()) return p.parent_path();
  return std::nullopt;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::ios_base::failure("write to '" + path.string() + "' failed");
}

int report_error(const std::exception& e, std::ostream& err) {
  err << "error: " << e.what() << '\n';
  return exit_code_for(e);
}

}  // namespace

RunResult run_pipeline(const ProtocolConfig& cfg, double tol) {
  const auto started = std::chrono::steady_clock::now();
  const HamiltonianProtocol raw = build_protocol(cfg);
  const QuantumState initial = build_initial_state(cfg, raw);
  const HamiltonianProtocol shifted = ground_shift(raw, cfg.ground_shift_mode, 2 * cfg.steps + 1);
  const Trajectory traj = propagate(shifted, initial, cfg.steps);

  RunResult result;
  result.steps = cfg.steps;
  if (std::holds_alternative<OscillatorParams>(cfg.params)) {
    const double leakage = truncation_leakage(traj);
    result.truncation_leakage = leakage;
    if (leakage > kMaxTruncationLeakage) {
      throw Error(ErrorKind::TruncationLeakage,
                  fmt::format("population of the top two levels grew by {:.3g}; raise dim or lower squeezing",
                              leakage));
    }
  }
  result.qsl = build_report(traj, cfg.ml_mode);
  result.audit = audit_trajectory(traj, tol);
  result.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return result;
}

ordered_json report_to_json(const RunResult& result, bool include_timing) {
  const QSLReport& q = result.qsl;
  ordered_json meta;
  meta["version"] = kVersion;
  meta["grid"] = result.steps;
  meta["wall_ms"] = include_timing ? result.wall_ms : 0.0;
  if (result.truncation_leakage) meta["truncation_leakage"] = *result.truncation_leakage;

  ordered_json qsl;
  qsl["tau"] = number_json(q.tau);
  qsl["bures"] = number_json(q.bures);
  qsl["e_avg"] = number_json(q.e_avg);
  qsl["de_avg"] = number_json(q.de_avg);
  qsl["tau_mt"] = number_json(q.tau_mt);
  qsl["tau_ml_quad"] = number_json(q.tau_ml_quad);
  qsl["tau_ml_lin"] = number_json(q.tau_ml_lin);
  qsl["tau_qsl"] = number_json(q.tau_qsl);
  qsl["ml_mode"] = ml_mode_name(q.mode);
  qsl["hbar"] = number_json(q.hbar);
  qsl["slacks"] = {{"mt", number_json(q.slack_mt)},
                   {"ml_quad", number_json(q.slack_ml_quad)},
                   {"ml_lin", number_json(q.slack_ml_lin)}};
  qsl["holds"] = {{"mt", q.mt_holds()}, {"ml_quad", q.ml_quad_holds()}, {"ml_lin", q.ml_lin_holds()}};

  ordered_json checks = ordered_json::array();
  for (const auto& c : result.audit.checks) {
    checks.push_back({{"name", c.name},
                      {"worst_margin", number_json(c.worst_margin)},
                      {"worst_time", number_json(c.worst_time)},
                      {"passed", c.passed},
                      {"samples_checked", c.samples_checked},
                      {"max_margin", number_json(c.max_margin)},
                      {"worst_lhs", number_json(c.worst_lhs)},
                      {"worst_rhs", number_json(c.worst_rhs)}});
  }
  ordered_json audit;
  audit["checks"] = std::move(checks);
  audit["tolerance"] = result.audit.tolerance;
  audit["passed"] = result.audit.passed();
  audit["notices"] = result.audit.notices;

  ordered_json doc;
  doc["meta"] = std::move(meta);
  doc["qsl"] = std::move(qsl);
  doc["audit"] = std::move(audit);
  return doc;
}

SweepOutcome run_sweep(const nlohmann::json& base, const std::filesystem::path& base_dir, const SweepSpec& spec,
                       double tol) {
  if (spec.values.empty()) throw Error(ErrorKind::BadConfig, "sweep needs at least one value");
  // Resolve every override before starting any run so a bad path fails fast.
  std::vector<ProtocolConfig> configs;
  configs.reserve(spec.values.size());
  for (double v : spec.values) {
    nlohmann::json doc = base;
    set_path(doc, spec.parameter, v);
    configs.push_back(parse_config(doc, base_dir));
  }

  std::vector<std::future<SweepRow>> jobs;
  jobs.reserve(configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i) {
    jobs.push_back(std::async(std::launch::async, [&cfg = configs[i], v = spec.values[i], tol] {
      const RunResult r = run_pipeline(cfg, tol);
      return SweepRow{v, r.qsl, r.audit.passed()};
    }));
  }

  SweepOutcome outcome;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    try {
      outcome.rows.push_back(jobs[i].get());
      if (!outcome.rows.back().audit_passed) outcome.worst_exit = std::max<int>(outcome.worst_exit, kExitAudit);
    } catch (const std::exception& e) {
      outcome.failures.push_back(fmt::format("{}={}: {}", spec.parameter, format_number(spec.values[i]), e.what()));
      outcome.worst_exit = std::max(outcome.worst_exit, exit_code_for(e));
    }
  }
  return outcome;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "param_value,tau,bures,e_avg,de_avg,tau_mt,tau_ml_quad,tau_ml_lin,tau_qsl,slack_min,audit_passed\n";
  for (const auto& r : rows) {
    const QSLReport& q = r.qsl;
    out << format_number(r.param_value) << ',' << format_number(q.tau) << ',' << format_number(q.bures) << ','
        << format_number(q.e_avg) << ',' << format_number(q.de_avg) << ',' << format_number(q.tau_mt) << ','
        << format_number(q.tau_ml_quad) << ',' << format_number(q.tau_ml_lin) << ','
        << format_number(q.tau_qsl) << ',' << format_number(q.slack_min()) << ','
        << (r.audit_passed ? "true" : "false") << '\n';
  }
}

std::vector<FisherRow> fisher_demo(double sigma, double t_min, double t_max, std::size_t samples) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw Error(ErrorKind::BadConfig, "sigma must be positive");
  if (samples < 3 || !(t_max > t_min)) throw Error(ErrorKind::BadConfig, "need at least three increasing samples");
  std::vector<double> ts(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    ts[i] = t_min + (t_max - t_min) * static_cast<double>(i) / static_cast<double>(samples - 1);
  }
  const auto track = DistributionTrack::translated_gaussian(sigma, ts);
  std::vector<FisherRow> rows;
  for (std::size_t i = 1; i + 1 < samples; ++i) {
    rows.push_back({ts[i], fisher_information_1d(track, ts[i]), 1.0 / (sigma * sigma),
                    statistical_velocity_sq(track, ts[i])});
  }
  return rows;
}

void write_fisher_csv(std::ostream& out, const std::vector<FisherRow>& rows) {
  out << "t,fisher_information,inverse_width_sq,wootters_velocity_sq\n";
  for (const auto& r : rows) {
    out << format_number(r.t) << ',' << format_number(r.fisher) << ',' << format_number(r.inverse_width_sq) << ','
        << format_number(r.velocity_sq) << '\n';
  }
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", value);
}

int exit_code_for(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    return err->kind() == ErrorKind::BadConfig ? kExitConfig : kExitNumerical;
  }
  if (dynamic_cast<const nlohmann::json::exception*>(&e) != nullptr) return kExitConfig;
  return kExitNumerical;
}

int run_command(const std::filesystem::path& config, const std::optional<std::filesystem::path>& output,
                bool include_timing, std::ostream& out, std::ostream& err) {
  try {
    const ProtocolConfig cfg = parse_config(read_json_file(config), parent_dir(config).value_or("."));
    const RunResult result = run_pipeline(cfg);
    const std::string text = report_to_json(result, include_timing).dump(2) + "\n";
    if (output) {
      write_text(*output, text);
    } else {
      out << text;
    }
    if (!result.audit.passed()) {
      err << "audit: inequality violated beyond tolerance\n";
      return kExitAudit;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    return report_error(e, err);
  }
}

int audit_command(const std::filesystem::path& config, double tol, std::ostream& out, std::ostream& err) {
  try {
    const ProtocolConfig cfg = parse_config(read_json_file(config), parent_dir(config).value_or("."));
    const RunResult result = run_pipeline(cfg, tol);
    out << fmt::format("{:<20} {:>14} {:>12} {:>8}  {}\n", "check", "worst_margin", "worst_time", "samples",
                       "status");
    for (const auto& c : result.audit.checks) {
      out << fmt::format("{:<20} {:>14.6e} {:>12.6g} {:>8}  {}\n", c.name, c.worst_margin, c.worst_time,
                         c.samples_checked, c.passed ? "pass" : "FAIL");
    }
    for (const auto& n : result.audit.notices) out << "note: " << n << '\n';
    return result.audit.passed() ? kExitOk : kExitAudit;
  } catch (const std::exception& e) {
    return report_error(e, err);
  }
}

int sweep_command(const std::filesystem::path& config, const SweepSpec& spec, const std::filesystem::path& output,
                  std::ostream& err) {
  try {
    const auto doc = read_json_file(config);
    const SweepOutcome outcome = run_sweep(doc, parent_dir(config).value_or("."), spec);
    std::ostringstream csv;
    write_sweep_csv(csv, outcome.rows);
    write_text(output, csv.str());
    for (const auto& f : outcome.failures) err << "error: " << f << '\n';
    return outcome.worst_exit;
  } catch (const std::exception& e) {
    return report_error(e, err);
  }
}

int fisher_command(double sigma, const std::filesystem::path& output, std::ostream& err) {
  try {
    std::ostringstream csv;
    write_fisher_csv(csv, fisher_demo(sigma));
    write_text(output, csv.str());
    return kExitOk;
  } catch (const std::exception& e) {
    return report_error(e, err);
  }
}

}  // namespace qsl
