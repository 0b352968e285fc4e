#include "qsl/qdyn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qsl/errors.hpp"
#include "qsl/geometry.hpp"

namespace qsl {

HamiltonianProtocol ground_shift(const HamiltonianProtocol& protocol, GroundShiftMode mode,
                                 std::size_t samples) {
  const Eigen::Index d = protocol.dim();
  if (mode == GroundShiftMode::Instantaneous) {
    auto shifted = [protocol, d](double t) {
      Matrix h = protocol.at(t);
      const double ground = eigensystem(h).eigenvalues[0];
      h -= ground * Matrix::Identity(d, d);
      return h;
    };
    return HamiltonianProtocol(shifted, d, protocol.duration(), protocol.hbar(), protocol.label());
  }

  if (samples < 2) throw Error(ErrorKind::StepCountTooSmall, "global ground shift needs two samples");
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = protocol.duration() * static_cast<double>(i) / static_cast<double>(samples - 1);
    lowest = std::min(lowest, eigensystem(protocol.at(t)).eigenvalues[0]);
  }
  auto shifted = [protocol, d, lowest](double t) {
    return Matrix(protocol.at(t) - lowest * Matrix::Identity(d, d));
  };
  return HamiltonianProtocol(shifted, d, protocol.duration(), protocol.hbar(), protocol.label());
}

Trajectory propagate(const HamiltonianProtocol& protocol, const QuantumState& initial, std::size_t steps) {
  if (steps < 2) {
    throw Error(ErrorKind::StepCountTooSmall, "need at least 2 steps, got " + std::to_string(steps));
  }
  if (initial.dim() != protocol.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "initial state has dimension " + std::to_string(initial.dim()) +
                                                  ", protocol has " + std::to_string(protocol.dim()));
  }

  const std::size_t samples = steps + 1;
  const double tau = protocol.duration();
  const double dt = tau / static_cast<double>(steps);
  const double hbar = protocol.hbar();
  const bool pure = initial.is_pure();

  Trajectory traj;
  traj.hbar = hbar;
  traj.label = protocol.label();
  traj.times.reserve(samples);
  traj.states.reserve(samples);
  traj.mean_energy.reserve(samples);
  traj.energy_variance.reserve(samples);
  traj.ground_energy.reserve(samples);
  traj.bures_from_initial.reserve(samples);
  traj.initial_state_energy.reserve(samples);
  traj.step_spread.reserve(steps);
  if (pure) {
    traj.overlap_with_initial.reserve(samples);
    traj.transition_element.reserve(samples);
  }

  const FidelityReference from_initial(initial);
  QuantumState state = initial;
  for (std::size_t k = 0; k < samples; ++k) {
    // The last node is pinned to tau so the endpoint does not drift by rounding.
    const double t = (k == steps) ? tau : dt * static_cast<double>(k);
    const Matrix h = protocol.at(t);

    traj.times.push_back(t);
    traj.mean_energy.push_back(mean_energy(state, h));
    traj.energy_variance.push_back(energy_variance(state, h));
    traj.ground_energy.push_back(eigensystem(h).eigenvalues[0]);
    traj.bures_from_initial.push_back(k == 0 ? 0.0 : from_initial.bures_length(state));
    traj.initial_state_energy.push_back(mean_energy(initial, h));
    if (pure) {
      const Vector& psi0 = initial.amplitudes();
      const Vector& psi = state.amplitudes();
      traj.overlap_with_initial.push_back(psi0.dot(psi));
      traj.transition_element.push_back(psi0.dot(h * psi));
    }
    traj.states.push_back(state);

    if (k == steps) break;
    const Matrix h_mid = protocol.at(t + 0.5 * dt);
    traj.step_spread.push_back(std::sqrt(std::max(0.0, energy_variance(state, h_mid))));
    state = state.evolved(unitary_step(eigensystem(h_mid), dt, hbar));
  }
  return traj;
}

}  // namespace qsl
