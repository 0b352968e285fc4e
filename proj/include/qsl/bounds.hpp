#pragma once

#include "qsl/trajectory.hpp"

namespace qsl {

enum class MlMode {
  /// Energy branch hbar L / E_tau (the unified formula as usually quoted).
  Linear,
  /// Energy branch 4 hbar L^2 / (pi^2 E_tau).
  Quadratic,
};

/// Angles at or below this are treated as "no evolution": every bound is 0.
inline constexpr double kNegligibleAngle = 1e-9;

/// Trapezoid time average of tr(rho_t H_t). Throws NegativeEnergy below
/// -1e-9, which indicates the protocol was not ground shifted.
double time_avg_mean_energy(const Trajectory& traj);

/// Trapezoid time average of the energy standard deviation.
double time_avg_energy_variance(const Trajectory& traj);

/// Mandelstam-Tamm type bound hbar L / dE. +inf for dE = 0 and L > 0.
double tau_mt(double bures, double de_avg, double hbar);
/// Margolus-Levitin type bound 4 hbar L^2 / (pi^2 E).
double tau_ml_quadratic(double bures, double e_avg, double hbar);
/// Margolus-Levitin type bound hbar L / E.
double tau_ml_linear(double bures, double e_avg, double hbar);

/// max of the energy branch (per `mode`) and the variance branch.
double qsl_time(double bures, double e_avg, double de_avg, double hbar, MlMode mode = MlMode::Linear);

struct QSLReport {
  double tau = 0.0;
  double bures = 0.0;
  double e_avg = 0.0;
  double de_avg = 0.0;
  double tau_mt = 0.0;
  double tau_ml_quad = 0.0;
  double tau_ml_lin = 0.0;
  double tau_qsl = 0.0;
  double slack_mt = 0.0;
  double slack_ml_quad = 0.0;
  double slack_ml_lin = 0.0;
  double hbar = 1.0;
  MlMode mode = MlMode::Linear;

  double slack_min() const;
  /// tau >= bound - 1e-6 tau for each bound.
  bool mt_holds() const;
  bool ml_quad_holds() const;
  bool ml_lin_holds() const;
};

/// tau / bound, +inf when the bound is 0.
double slack_ratio(double tau, double bound);

/// Fills every report field from the trajectory endpoint and time averages.
/// The trajectory must come from a ground-shifted protocol.
QSLReport build_report(const Trajectory& traj, MlMode mode = MlMode::Linear);

}  // namespace qsl
