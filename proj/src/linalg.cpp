#include "qsl/linalg.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qsl/errors.hpp"

namespace qsl {
namespace {

constexpr double kNegativeTol = 1e-6;

// Eigenvalues below the solver's resolution (a few ulps of the largest one)
// are zeroed as well, otherwise their square roots (~1e-8 for round-off of
// 1e-16) would leak into fidelities of rank-deficient states.
RealVector clamped_eigenvalues(const RealVector& values) {
  RealVector out = values;
  const double largest = out.size() == 0 ? 0.0 : out.cwiseAbs().maxCoeff();
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * largest;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (out[i] < -kNegativeTol) {
      throw Error(ErrorKind::NotPositive,
                  "eigenvalue " + std::to_string(out[i]) + " below -1e-6");
    }
    if (out[i] < floor) out[i] = 0.0;
  }
  return out;
}

}  // namespace

double hermiticity_defect(const Matrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

EigenSystem eigensystem(const Matrix& h) {
  if (h.rows() != h.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "Hamiltonian is not square");
  }
  const double defect = hermiticity_defect(h);
  if (defect > kHermitianTol * (1.0 + max_abs(h))) {
    throw Error(ErrorKind::NotHermitian,
                "hermiticity defect " + std::to_string(defect));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h));
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix unitary_step(const EigenSystem& eig, double dt, double hbar) {
  const Eigen::Index d = eig.eigenvalues.size();
  Vector phases(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    phases[i] = std::polar(1.0, -eig.eigenvalues[i] * dt / hbar);
  }
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m));
  const RealVector values = clamped_eigenvalues(solver.eigenvalues()).cwiseSqrt();
  const Matrix& v = solver.eigenvectors();
  return v * values.cast<Complex>().asDiagonal() * v.adjoint();
}

double psd_sqrt_trace(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
  return clamped_eigenvalues(solver.eigenvalues()).cwiseSqrt().sum();
}

}  // namespace qsl
