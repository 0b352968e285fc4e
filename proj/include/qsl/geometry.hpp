#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qsl/linalg.hpp"
#include "qsl/state.hpp"
#include "qsl/trajectory.hpp"

namespace qsl {

// ---------------------------------------------------------------------------
// Fidelity and Bures length between quantum states

/// Caches what is needed to evaluate F(reference, .) repeatedly: the vector
/// of a pure reference, or sqrt(rho) of a mixed one.
class FidelityReference {
 public:
  explicit FidelityReference(const QuantumState& reference);

  /// Uhlmann fidelity [tr sqrt(sqrt(a) b sqrt(a))]^2, clamped to [0, 1].
  double fidelity(const QuantumState& other) const;
  /// arccos(sqrt(F)) in [0, pi/2].
  double bures_length(const QuantumState& other) const;

 private:
  QuantumState reference_;
  Matrix sqrt_density_;
};

double fidelity(const QuantumState& a, const QuantumState& b);
double bures_length(const QuantumState& a, const QuantumState& b);

// ---------------------------------------------------------------------------
// Infinitesimal Bures metric

inline constexpr double kPopulationCutoff = 1e-12;

struct BuresIncrement {
  /// Squared line element dL^2.
  double value = 0.0;
  EigenSystem eigen_basis;
};

/// dL^2 = 1/2 sum_{jk} |<j|drho|k>|^2 / (p_j + p_k) in the eigenbasis of
/// rho. Pairs with p_j + p_k <= tol_p are dropped.
/// Errors: DimensionMismatch, NotHermitian, NotTraceless.
BuresIncrement bures_increment(const QuantumState& rho, const Matrix& drho,
                               double tol_p = kPopulationCutoff);

// ---------------------------------------------------------------------------
// Classical statistical distance

/// arccos(sum_x sqrt(p0 p1) h). Both densities must be normalized on the
/// same grid. Errors: GridMismatch, NotNormalized.
double wootters_angle(std::span<const double> p0, std::span<const double> p1, double h);

/// One-parameter family of densities P_t(x) on a shared uniform grid.
class DistributionTrack {
 public:
  DistributionTrack(std::vector<double> grid, std::vector<double> parameter_values,
                    std::vector<std::vector<double>> densities);

  /// Gaussians of width sigma centred at x = t for each t in
  /// parameter_values, on a grid of spacing sigma/points_per_sigma that
  /// covers every centre with twelve widths of margin.
  static DistributionTrack translated_gaussian(double sigma, std::vector<double> parameter_values,
                                               int points_per_sigma = 40);

  const std::vector<double>& grid() const noexcept { return grid_; }
  double spacing() const noexcept { return spacing_; }
  const std::vector<double>& parameter_values() const noexcept { return parameters_; }
  std::span<const double> density(std::size_t i) const { return densities_.at(i); }
  std::size_t size() const noexcept { return parameters_.size(); }

  /// Index of the parameter sample equal to t (relative tolerance 1e-9).
  /// Throws ParameterOutOfRange when absent.
  std::size_t index_of(double t) const;

 private:
  std::vector<double> grid_;
  double spacing_ = 0.0;
  std::vector<double> parameters_;
  std::vector<std::vector<double>> densities_;
};

/// J_t = sum_x (d_t P)^2 / P h with a three-point derivative in t. Grid
/// points with P < 1e-14 are skipped. t must be an interior sample.
double fisher_information_1d(const DistributionTrack& track, double t);

/// Squared statistical velocity obtained by differencing the Wootters angle
/// between the neighbours of t. The angle is doubled (Fisher-Rao
/// normalization) so that the result equals J_t rather than J_t / 4.
double statistical_velocity_sq(const DistributionTrack& track, double t);

/// Accumulated statistical length sum_i 2 * angle(P_i, P_{i+1}), the
/// discrete counterpart of the integral of sqrt(J_t) dt.
double statistical_length(const DistributionTrack& track);

// ---------------------------------------------------------------------------
// Velocities along trajectories

struct DynamicalVelocity {
  double magnitude = 0.0;
  /// -1, 0 or +1: the distance from the initial state can shrink again.
  int sign = 0;
};

/// |d_t L(rho_0, rho_t)| at an interior sample by central difference.
/// Throws IndexOutOfRange at the ends.
DynamicalVelocity dynamical_velocity(const Trajectory& traj, std::size_t index);

/// Local Bures speed L(rho_{k-1}, rho_{k+1}) / (2 dt) at an interior sample:
/// the rate at which the trajectory moves, as opposed to the rate at which
/// its distance from rho_0 changes.
double bures_speed(const Trajectory& traj, std::size_t index);

}  // namespace qsl
