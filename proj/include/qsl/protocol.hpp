#pragma once

#include <functional>
#include <string>

#include "qsl/linalg.hpp"

namespace qsl {

/// Time-dependent Hamiltonian H(t) on [0, duration], in energy units.
class HamiltonianProtocol {
 public:
  using Evaluator = std::function<Matrix(double)>;

  HamiltonianProtocol(Evaluator evaluator, Eigen::Index dim, double duration, double hbar = 1.0,
                      std::string label = {});

  /// Evaluates H(t); throws DimensionMismatch if the evaluator returns the
  /// wrong shape. Hermiticity is checked where the matrix is diagonalized.
  Matrix at(double t) const;

  Eigen::Index dim() const noexcept { return dim_; }
  double duration() const noexcept { return duration_; }
  double hbar() const noexcept { return hbar_; }
  const std::string& label() const noexcept { return label_; }
  const Evaluator& evaluator() const noexcept { return evaluator_; }

 private:
  Evaluator evaluator_;
  Eigen::Index dim_;
  double duration_;
  double hbar_;
  std::string label_;
};

}  // namespace qsl
