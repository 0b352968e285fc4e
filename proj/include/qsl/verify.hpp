#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qsl/trajectory.hpp"

namespace qsl {

/// Outcome of one inequality audited along a trajectory. Margins are
/// (rhs - lhs) / max(1, |lhs|, |rhs|): positive when the inequality holds.
struct CheckResult {
  std::string name;
  double worst_margin = 0.0;
  double worst_time = 0.0;
  /// Both sides at the worst sample, unscaled.
  double worst_lhs = 0.0;
  double worst_rhs = 0.0;
  /// Largest margin seen; near zero when the inequality is saturated.
  double max_margin = 0.0;
  std::size_t samples_checked = 0;
  bool passed = true;
};

struct AuditReport {
  std::vector<CheckResult> checks;
  double tolerance = 1e-6;
  std::string trajectory_label;
  /// Checks skipped (pure-state checks on a mixed run) and why.
  std::vector<std::string> notices;

  bool passed() const;
  /// nullptr when the check did not run.
  const CheckResult* find(std::string_view name) const;
};

inline constexpr double kDefaultAuditTolerance = 1e-6;
inline constexpr std::size_t kMinAuditSamples = 16;

/// Audits the inequality chain behind the speed limits:
///   velocity_variance   Bures speed <= energy spread / hbar
///   overlap_derivative  |d_t |<psi0|psi_t>|| <= |d_t <psi0|psi_t>|          (pure)
///   sin_velocity        sin L |d_t L| <= |<psi0|H_t|psi_t>| / hbar          (pure)
///   phase_mean_energy   |<psi0|H_t|psi_t>| <= <psi_t|H_t|psi_t>              (pure)
///   mt_integrated       L(t) <= (1/hbar) int_0^t spread
///   ml_integrated       1 - cos L(t) <= (1/hbar) int_0^t <H>
///   overlap_cosine      |<psi0|psi_t>| >= |cos((1/hbar) int_0^t <psi0|H|psi0>)| (pure)
/// The integrated checks are evaluated at every sample, not only at tau.
/// On mixed runs the pure checks are skipped with a notice when
/// `permissive`, otherwise PureCheckOnMixedRun is thrown.
/// Errors: TooFewSamples.
AuditReport audit_trajectory(const Trajectory& traj, double tol = kDefaultAuditTolerance,
                             bool permissive = true);

/// |cos x - 1| - (4/pi^2) x^2 for x in [0, pi/2]; DomainError outside.
double check_trig_bound(double x);

/// min over interior samples of <dH^2>/hbar^2 - (d_t L)^2, with the squared
/// velocity taken from the Bures metric of the central difference of rho.
double fisher_variance_bound(const Trajectory& traj);

}  // namespace qsl
