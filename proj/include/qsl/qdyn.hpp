#pragma once

#include <cstddef>

#include "qsl/linalg.hpp"
#include "qsl/protocol.hpp"
#include "qsl/state.hpp"
#include "qsl/trajectory.hpp"

namespace qsl {

enum class GroundShiftMode {
  /// Subtract the lowest eigenvalue of H(t) at every t.
  Instantaneous,
  /// Subtract the minimum of the instantaneous ground energy over [0, tau].
  Global,
};

/// Returns the protocol t -> H(t) - E_g * identity. In Global mode E_g is the
/// smallest ground energy found on `samples` uniform points of [0, tau].
HamiltonianProtocol ground_shift(const HamiltonianProtocol& protocol,
                                 GroundShiftMode mode = GroundShiftMode::Instantaneous,
                                 std::size_t samples = 4097);

/// Exponential-midpoint propagation on a uniform grid of `steps` intervals:
/// each step applies exp(-i H(t_k + dt/2) dt / hbar), exactly unitary.
/// Errors: DimensionMismatch, StepCountTooSmall, NotHermitian.
Trajectory propagate(const HamiltonianProtocol& protocol, const QuantumState& initial,
                     std::size_t steps);

}  // namespace qsl
