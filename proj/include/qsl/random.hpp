#pragma once

#include <cstdint>
#include <random>

#include "qsl/linalg.hpp"
#include "qsl/protocol.hpp"
#include "qsl/state.hpp"

namespace qsl {

using Rng = std::mt19937_64;

/// GUE-like Hermitian matrix with entries of typical size `scale`.
Matrix random_hermitian(Rng& rng, Eigen::Index dim, double scale = 1.0);
/// Haar-distributed unitary (QR of a complex Ginibre matrix with phase fix).
Matrix random_unitary(Rng& rng, Eigen::Index dim);
QuantumState random_pure_state(Rng& rng, Eigen::Index dim);
/// Full-rank density matrix: Haar eigenbasis, flat-Dirichlet spectrum with a
/// floor so the smallest eigenvalue stays away from zero.
QuantumState random_mixed_state(Rng& rng, Eigen::Index dim, double min_population = 0.02);

struct RandomRunOptions {
  Eigen::Index min_dim = 2;
  Eigen::Index max_dim = 6;
  double min_duration = 0.5;
  double max_duration = 3.0;
  /// Fraction of cases that start from a mixed state.
  double mixed_fraction = 0.5;
  double hbar = 1.0;
};

struct RandomRun {
  HamiltonianProtocol protocol;
  QuantumState initial;
};

/// Smooth driven protocol H(t) = A + B cos(w1 t + phi) + C sin(w2 t) with
/// random Hermitian A, B, C and a random initial state; fully determined
/// by `seed`.
RandomRun random_run(std::uint64_t seed, const RandomRunOptions& options = {});

}  // namespace qsl
