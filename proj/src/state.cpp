#include "qsl/state.hpp"

#include <cmath>
#include <string>

#include "qsl/errors.hpp"

namespace qsl {
namespace {

constexpr double kRepairTol = 1e-6;
constexpr double kVarianceClamp = 1e-9;

void require_dim(const QuantumState& s, const Matrix& h) {
  if (h.rows() != s.dim() || h.cols() != s.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "operator is " + std::to_string(h.rows()) + "x" + std::to_string(h.cols()) +
                    ", state has dimension " + std::to_string(s.dim()));
  }
}

}  // namespace

QuantumState::QuantumState(Unchecked, StateKind kind, Vector amplitudes, Matrix density)
    : kind_(kind), amplitudes_(std::move(amplitudes)), density_(std::move(density)) {}

QuantumState QuantumState::pure(Vector amplitudes) {
  if (amplitudes.size() == 0) {
    throw Error(ErrorKind::DimensionMismatch, "empty state vector");
  }
  const double norm = amplitudes.norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kRepairTol) {
    throw Error(ErrorKind::NotNormalized, "state norm " + std::to_string(norm));
  }
  amplitudes /= norm;
  return QuantumState(Unchecked{}, StateKind::Pure, std::move(amplitudes), Matrix());
}

QuantumState QuantumState::mixed(Matrix density) {
  if (density.rows() == 0 || density.rows() != density.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "density matrix must be square and non-empty");
  }
  const double defect = hermiticity_defect(density);
  if (!(defect <= kRepairTol)) {
    throw Error(ErrorKind::NotHermitian, "hermiticity defect " + std::to_string(defect));
  }
  density = hermitian_part(density);
  const double trace = density.trace().real();
  if (std::abs(trace - 1.0) > kRepairTol) {
    throw Error(ErrorKind::NotNormalized, "trace " + std::to_string(trace));
  }
  density /= trace;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(density, Eigen::EigenvaluesOnly);
  const double lowest = solver.eigenvalues()[0];
  if (lowest < -kRepairTol) {
    throw Error(ErrorKind::NotPositive, "eigenvalue " + std::to_string(lowest));
  }
  return QuantumState(Unchecked{}, StateKind::Mixed, Vector(), std::move(density));
}

QuantumState QuantumState::basis(Eigen::Index dim, Eigen::Index index) {
  if (index < 0 || index >= dim) {
    throw Error(ErrorKind::IndexOutOfRange, "basis index outside dimension");
  }
  Vector v = Vector::Zero(dim);
  v[index] = 1.0;
  return pure(std::move(v));
}

QuantumState QuantumState::maximally_mixed(Eigen::Index dim) {
  return mixed(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

Eigen::Index QuantumState::dim() const noexcept {
  return is_pure() ? amplitudes_.size() : density_.rows();
}

const Vector& QuantumState::amplitudes() const {
  if (!is_pure()) {
    throw Error(ErrorKind::PureCheckOnMixedRun, "amplitudes requested from a mixed state");
  }
  return amplitudes_;
}

Matrix QuantumState::density() const {
  if (is_pure()) return amplitudes_ * amplitudes_.adjoint();
  return density_;
}

double QuantumState::purity() const {
  if (is_pure()) return std::pow(amplitudes_.squaredNorm(), 2);
  return (density_ * density_).trace().real();
}

QuantumState QuantumState::evolved(const Matrix& unitary) const {
  if (is_pure()) {
    return QuantumState(Unchecked{}, StateKind::Pure, unitary * amplitudes_, Matrix());
  }
  Matrix next = unitary * density_ * unitary.adjoint();
  return QuantumState(Unchecked{}, StateKind::Mixed, Vector(), hermitian_part(next));
}

QuantumState validate_state(const QuantumState& s) {
  return s.is_pure() ? QuantumState::pure(s.amplitudes()) : QuantumState::mixed(s.density());
}

double mean_energy(const QuantumState& s, const Matrix& h) {
  require_dim(s, h);
  if (s.is_pure()) {
    return s.amplitudes().dot(h * s.amplitudes()).real();
  }
  return (s.density() * h).trace().real();
}

double energy_variance(const QuantumState& s, const Matrix& h) {
  require_dim(s, h);
  const double mean = mean_energy(s, h);
  const Matrix centered = h - mean * Matrix::Identity(h.rows(), h.cols());
  double var = 0.0;
  if (s.is_pure()) {
    var = (centered * s.amplitudes()).squaredNorm();
  } else {
    var = (s.density() * centered * centered).trace().real();
  }
  if (var < 0.0 && var >= -kVarianceClamp) var = 0.0;
  return var;
}

}  // namespace qsl
