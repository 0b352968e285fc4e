#pragma once

#include <variant>

#include "qsl/linalg.hpp"

namespace qsl {

enum class StateKind { Pure, Mixed };

/// A pure state vector or a density matrix. Instances produced by the
/// factories below always satisfy the validity invariants: unit norm for
/// pure states; Hermitian, unit trace and positive semidefinite for mixed.
class QuantumState {
 public:
  /// Validates and renormalizes; throws NotNormalized when the norm is off
  /// by more than 1e-6.
  static QuantumState pure(Vector amplitudes);
  /// Validates, symmetrizes and renormalizes the trace.
  static QuantumState mixed(Matrix density);

  /// Basis state |index> of dimension `dim`.
  static QuantumState basis(Eigen::Index dim, Eigen::Index index);
  static QuantumState maximally_mixed(Eigen::Index dim);

  StateKind kind() const noexcept { return kind_; }
  bool is_pure() const noexcept { return kind_ == StateKind::Pure; }
  Eigen::Index dim() const noexcept;

  /// Amplitudes of a pure state. Precondition: is_pure().
  const Vector& amplitudes() const;
  /// Density matrix for either kind (outer product for pure states).
  Matrix density() const;

  double purity() const;

  /// U psi or U rho U^dagger.
  QuantumState evolved(const Matrix& unitary) const;

 private:
  struct Unchecked {};
  QuantumState(Unchecked, StateKind kind, Vector amplitudes, Matrix density);

  StateKind kind_;
  Vector amplitudes_;
  Matrix density_;
};

/// Re-runs the validity checks on `s` and returns the cleaned-up copy.
/// Errors: NotNormalized, NotPositive, NotHermitian.
QuantumState validate_state(const QuantumState& s);

/// tr(rho H) (or <psi|H|psi>). Throws DimensionMismatch.
double mean_energy(const QuantumState& s, const Matrix& h);

/// tr(rho H^2) - tr(rho H)^2, clamped to 0 when in [-1e-9, 0).
double energy_variance(const QuantumState& s, const Matrix& h);

}  // namespace qsl
