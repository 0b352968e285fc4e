#include "qsl/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qsl/errors.hpp"

namespace qsl {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEnergyTol = 1e-9;
constexpr double kAngleTol = 1e-9;
constexpr double kTheoremTol = 1e-6;

double trapezoid_average(const std::vector<double>& times, const std::vector<double>& values) {
  if (times.size() < 2) return values.empty() ? 0.0 : values.front();
  double integral = 0.0;
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    integral += 0.5 * (times[k + 1] - times[k]) * (values[k] + values[k + 1]);
  }
  return integral / (times.back() - times.front());
}

double checked_angle(double bures) {
  if (!(bures >= -kAngleTol && bures <= std::numbers::pi / 2 + kAngleTol)) {
    throw Error(ErrorKind::DomainError, "Bures length " + std::to_string(bures) + " outside [0, pi/2]");
  }
  return std::clamp(bures, 0.0, std::numbers::pi / 2);
}

double checked_energy(double e_avg) {
  if (e_avg < -kEnergyTol || std::isnan(e_avg)) {
    throw Error(ErrorKind::NegativeEnergy,
                "mean energy " + std::to_string(e_avg) + " is negative; was the protocol ground shifted?");
  }
  return std::max(e_avg, 0.0);
}

/// hbar * numerator / energy with the 0 and infinity conventions shared by
/// all bounds.
double ratio_bound(double bures, double numerator, double energy, double hbar) {
  if (!(hbar > 0.0)) throw Error(ErrorKind::DomainError, "hbar must be positive");
  if (bures <= kNegligibleAngle) return 0.0;
  if (energy == 0.0) return kInf;
  return hbar * numerator / energy;
}

bool holds(double tau, double bound) { return tau >= bound - kTheoremTol * tau; }

}  // namespace

double time_avg_mean_energy(const Trajectory& traj) {
  const double avg = trapezoid_average(traj.times, traj.mean_energy);
  return checked_energy(avg);
}

double time_avg_energy_variance(const Trajectory& traj) {
  std::vector<double> spread(traj.energy_variance.size());
  std::transform(traj.energy_variance.begin(), traj.energy_variance.end(), spread.begin(),
                 [](double v) { return std::sqrt(std::max(v, 0.0)); });
  return trapezoid_average(traj.times, spread);
}

double tau_mt(double bures, double de_avg, double hbar) {
  const double angle = checked_angle(bures);
  if (de_avg < 0.0 || std::isnan(de_avg)) {
    throw Error(ErrorKind::DomainError, "energy spread must be non-negative");
  }
  return ratio_bound(angle, angle, de_avg, hbar);
}

double tau_ml_quadratic(double bures, double e_avg, double hbar) {
  const double angle = checked_angle(bures);
  const double energy = checked_energy(e_avg);
  return ratio_bound(angle, 4.0 * angle * angle / (std::numbers::pi * std::numbers::pi), energy, hbar);
}

double tau_ml_linear(double bures, double e_avg, double hbar) {
  const double angle = checked_angle(bures);
  return ratio_bound(angle, angle, checked_energy(e_avg), hbar);
}

double qsl_time(double bures, double e_avg, double de_avg, double hbar, MlMode mode) {
  const double energy_branch =
      mode == MlMode::Linear ? tau_ml_linear(bures, e_avg, hbar) : tau_ml_quadratic(bures, e_avg, hbar);
  return std::max(energy_branch, tau_mt(bures, de_avg, hbar));
}

double slack_ratio(double tau, double bound) { return bound == 0.0 ? kInf : tau / bound; }

double QSLReport::slack_min() const { return std::min({slack_mt, slack_ml_quad, slack_ml_lin}); }
bool QSLReport::mt_holds() const { return holds(tau, tau_mt); }
bool QSLReport::ml_quad_holds() const { return holds(tau, tau_ml_quad); }
bool QSLReport::ml_lin_holds() const { return holds(tau, tau_ml_lin); }

QSLReport build_report(const Trajectory& traj, MlMode mode) {
  if (traj.size() < 2) throw Error(ErrorKind::TooFewSamples, "trajectory has fewer than two samples");
  QSLReport r;
  r.mode = mode;
  r.hbar = traj.hbar;
  r.tau = traj.duration();
  r.bures = checked_angle(traj.bures_from_initial.back());
  r.e_avg = time_avg_mean_energy(traj);
  r.de_avg = time_avg_energy_variance(traj);
  r.tau_mt = tau_mt(r.bures, r.de_avg, r.hbar);
  r.tau_ml_quad = tau_ml_quadratic(r.bures, r.e_avg, r.hbar);
  r.tau_ml_lin = tau_ml_linear(r.bures, r.e_avg, r.hbar);
  r.tau_qsl = qsl_time(r.bures, r.e_avg, r.de_avg, r.hbar, mode);
  r.slack_mt = slack_ratio(r.tau, r.tau_mt);
  r.slack_ml_quad = slack_ratio(r.tau, r.tau_ml_quad);
  r.slack_ml_lin = slack_ratio(r.tau, r.tau_ml_lin);

  // 4 L^2 / pi^2 <= L on [0, pi/2]; a failure here is a bug, not physics.
  if (r.tau_ml_quad > r.tau_ml_lin * (1.0 + 1e-12)) {
    throw std::logic_error("quadratic Margolus-Levitin bound exceeds the linear one");
  }
  return r;
}

}  // namespace qsl
