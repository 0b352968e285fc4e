#include "qsl/random.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qsl {
namespace {

Matrix ginibre(Rng& rng, Eigen::Index dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = Complex(normal(rng), normal(rng));
  }
  return m;
}

}  // namespace

Matrix random_hermitian(Rng& rng, Eigen::Index dim, double scale) {
  const Matrix g = ginibre(rng, dim);
  return scale * (g + g.adjoint()) / (2.0 * std::sqrt(static_cast<double>(dim)));
}

Matrix random_unitary(Rng& rng, Eigen::Index dim) {
  Eigen::HouseholderQR<Matrix> qr(ginibre(rng, dim));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex diag = r(j, j);
    if (std::abs(diag) > 0.0) q.col(j) *= diag / std::abs(diag);
  }
  return q;
}

QuantumState random_pure_state(Rng& rng, Eigen::Index dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = Complex(normal(rng), normal(rng));
  v.normalize();
  return QuantumState::pure(std::move(v));
}

QuantumState random_mixed_state(Rng& rng, Eigen::Index dim, double min_population) {
  std::exponential_distribution<double> exponential(1.0);
  RealVector p(dim);
  for (Eigen::Index i = 0; i < dim; ++i) p[i] = exponential(rng);
  p /= p.sum();
  p = (1.0 - min_population * static_cast<double>(dim)) * p + RealVector::Constant(dim, min_population);
  const Matrix u = random_unitary(rng, dim);
  return QuantumState::mixed(u * p.cast<Complex>().asDiagonal() * u.adjoint());
}

RandomRun random_run(std::uint64_t seed, const RandomRunOptions& options) {
  Rng rng(seed);
  std::uniform_int_distribution<Eigen::Index> dims(options.min_dim, options.max_dim);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Eigen::Index d = dims(rng);
  const double tau = options.min_duration + (options.max_duration - options.min_duration) * unit(rng);
  const Matrix a = random_hermitian(rng, d, 1.0);
  const Matrix b = random_hermitian(rng, d, 0.7);
  const Matrix c = random_hermitian(rng, d, 0.7);
  const double w1 = 0.5 + 2.5 * unit(rng);
  const double w2 = 0.5 + 2.5 * unit(rng);
  const double phi = 2.0 * std::numbers::pi * unit(rng);
  const bool mixed = unit(rng) < options.mixed_fraction;
  QuantumState initial = mixed ? random_mixed_state(rng, d) : random_pure_state(rng, d);

  auto evaluator = [a, b, c, w1, w2, phi](double t) {
    return Matrix(a + std::cos(w1 * t + phi) * b + std::sin(w2 * t) * c);
  };
  HamiltonianProtocol protocol(evaluator, d, tau, options.hbar, "random-" + std::to_string(seed));
  return {std::move(protocol), std::move(initial)};
}

}  // namespace qsl
