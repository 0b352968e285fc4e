#include "qsl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qsl/errors.hpp"
#include "qsl/geometry.hpp"

namespace qsl {
namespace {

/// Accumulates rhs >= lhs samples into a CheckResult.
class CheckAccumulator {
 public:
  CheckAccumulator(std::string name, double tol) : tol_(tol) {
    result_.name = std::move(name);
    result_.worst_margin = std::numeric_limits<double>::infinity();
    result_.max_margin = -std::numeric_limits<double>::infinity();
  }

  void add(double time, double lhs, double rhs) {
    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    const double margin = (rhs - lhs) / scale;
    ++result_.samples_checked;
    result_.max_margin = std::max(result_.max_margin, margin);
    if (margin < result_.worst_margin) {
      result_.worst_margin = margin;
      result_.worst_time = time;
      result_.worst_lhs = lhs;
      result_.worst_rhs = rhs;
    }
  }

  CheckResult finish() && {
    result_.passed = result_.worst_margin >= -tol_;
    return std::move(result_);
  }

 private:
  double tol_;
  CheckResult result_;
};

std::vector<double> cumulative_trapezoid(const std::vector<double>& t, const std::vector<double>& f) {
  std::vector<double> out(t.size(), 0.0);
  for (std::size_t k = 1; k < t.size(); ++k) {
    out[k] = out[k - 1] + 0.5 * (t[k] - t[k - 1]) * (f[k] + f[k - 1]);
  }
  return out;
}

}  // namespace

bool AuditReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* AuditReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

AuditReport audit_trajectory(const Trajectory& traj, double tol, bool permissive) {
  if (traj.size() < kMinAuditSamples) {
    throw Error(ErrorKind::TooFewSamples, "audit needs at least " + std::to_string(kMinAuditSamples) +
                                              " samples, trajectory has " + std::to_string(traj.size()));
  }
  const bool pure = traj.is_pure();
  if (!pure && !permissive) {
    throw Error(ErrorKind::PureCheckOnMixedRun, "pure-state checks requested on a mixed run");
  }

  AuditReport report;
  report.tolerance = tol;
  report.trajectory_label = traj.label;

  const std::size_t n = traj.size();
  const double dt = traj.dt();
  const double hbar = traj.hbar;
  const auto& t = traj.times;
  const auto& bures = traj.bures_from_initial;

  {
    CheckAccumulator check("velocity_variance", tol);
    for (std::size_t k = 1; k + 1 < n; ++k) {
      const double speed = bures_speed(traj, k);
      const double bound = 0.5 * (traj.step_spread[k - 1] + traj.step_spread[k]) / hbar;
      check.add(t[k], speed, bound);
    }
    report.checks.push_back(std::move(check).finish());
  }

  if (pure) {
    const auto& overlap = traj.overlap_with_initial;
    CheckAccumulator overlap_check("overlap_derivative", tol);
    CheckAccumulator sin_check("sin_velocity", tol);
    for (std::size_t k = 1; k + 1 < n; ++k) {
      const double modulus_rate = std::abs(std::abs(overlap[k + 1]) - std::abs(overlap[k - 1])) / (2.0 * dt);
      const double overlap_rate = std::abs(overlap[k + 1] - overlap[k - 1]) / (2.0 * dt);
      overlap_check.add(t[k], modulus_rate, overlap_rate);

      const double velocity = std::abs(bures[k + 1] - bures[k - 1]) / (2.0 * dt);
      sin_check.add(t[k], std::sin(bures[k]) * velocity, std::abs(traj.transition_element[k]) / hbar);
    }
    report.checks.push_back(std::move(overlap_check).finish());
    report.checks.push_back(std::move(sin_check).finish());

    CheckAccumulator phase_check("phase_mean_energy", tol);
    for (std::size_t k = 0; k < n; ++k) {
      phase_check.add(t[k], std::abs(traj.transition_element[k]), traj.mean_energy[k]);
    }
    report.checks.push_back(std::move(phase_check).finish());
  } else {
    report.notices.emplace_back(
        "mixed initial state: overlap_derivative, sin_velocity, phase_mean_energy and "
        "overlap_cosine skipped");
  }

  std::vector<double> spread(n);
  std::transform(traj.energy_variance.begin(), traj.energy_variance.end(), spread.begin(),
                 [](double v) { return std::sqrt(std::max(v, 0.0)); });
  const auto spread_integral = cumulative_trapezoid(t, spread);
  const auto energy_integral = cumulative_trapezoid(t, traj.mean_energy);

  CheckAccumulator mt_check("mt_integrated", tol);
  CheckAccumulator ml_check("ml_integrated", tol);
  for (std::size_t k = 1; k < n; ++k) {
    mt_check.add(t[k], bures[k], spread_integral[k] / hbar);
    ml_check.add(t[k], std::abs(std::cos(bures[k]) - 1.0), energy_integral[k] / hbar);
  }
  report.checks.push_back(std::move(mt_check).finish());
  report.checks.push_back(std::move(ml_check).finish());

  if (pure) {
    const auto initial_phase = cumulative_trapezoid(t, traj.initial_state_energy);
    CheckAccumulator cosine_check("overlap_cosine", tol);
    for (std::size_t k = 1; k < n; ++k) {
      cosine_check.add(t[k], std::abs(std::cos(initial_phase[k] / hbar)),
                       std::abs(traj.overlap_with_initial[k]));
    }
    report.checks.push_back(std::move(cosine_check).finish());
  }
  return report;
}

double check_trig_bound(double x) {
  if (!(x >= 0.0 && x <= std::numbers::pi / 2)) {
    throw Error(ErrorKind::DomainError, "x=" + std::to_string(x) + " outside [0, pi/2]");
  }
  return std::abs(std::cos(x) - 1.0) - 4.0 / (std::numbers::pi * std::numbers::pi) * x * x;
}

double fisher_variance_bound(const Trajectory& traj) {
  if (traj.size() < 3) throw Error(ErrorKind::TooFewSamples, "no interior samples");
  const double dt = traj.dt();
  const double hbar = traj.hbar;
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k + 1 < traj.size(); ++k) {
    const Matrix drho = 0.5 * (traj.states[k + 1].density() - traj.states[k - 1].density());
    const double velocity_sq = bures_increment(traj.states[k], drho).value / (dt * dt);
    worst = std::min(worst, traj.energy_variance[k] / (hbar * hbar) - velocity_sq);
  }
  return worst;
}

}  // namespace qsl
