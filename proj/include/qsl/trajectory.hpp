#pragma once

#include <string>
#include <vector>

#include "qsl/linalg.hpp"
#include "qsl/state.hpp"

namespace qsl {

/// Uniformly sampled evolution on [0, tau] with the per-sample observables
/// the bounds and audits need. Sample k sits at times[k] = k * tau / N.
struct Trajectory {
  std::vector<double> times;
  std::vector<QuantumState> states;
  /// tr(rho_t H_t)
  std::vector<double> mean_energy;
  /// tr(rho_t H_t^2) - tr(rho_t H_t)^2
  std::vector<double> energy_variance;
  /// lowest eigenvalue of H_t
  std::vector<double> ground_energy;
  /// L(rho_0, rho_t)
  std::vector<double> bures_from_initial;
  /// tr(rho_0 H_t)
  std::vector<double> initial_state_energy;
  /// <psi_0|psi_t>; pure runs only, empty otherwise.
  std::vector<Complex> overlap_with_initial;
  /// <psi_0|H_t|psi_t>; pure runs only, empty otherwise.
  std::vector<Complex> transition_element;
  /// Energy spread of the step Hamiltonian H(t_k + dt/2) in the state at
  /// t_k, one entry per step (N entries). It is conserved over the step, so
  /// this is the exact Bures speed of the discrete evolution (times hbar)
  /// for pure states and an upper bound for mixed ones.
  std::vector<double> step_spread;
  double hbar = 1.0;
  std::string label;

  std::size_t size() const noexcept { return times.size(); }
  std::size_t steps() const noexcept { return times.empty() ? 0 : times.size() - 1; }
  double duration() const noexcept { return times.empty() ? 0.0 : times.back(); }
  double dt() const noexcept { return steps() == 0 ? 0.0 : duration() / static_cast<double>(steps()); }
  bool is_pure() const noexcept { return !states.empty() && states.front().is_pure(); }
};

}  // namespace qsl
