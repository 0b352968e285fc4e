#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qsl {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Eigenvalues ascending, eigenvectors as orthonormal columns.
struct EigenSystem {
  RealVector eigenvalues;
  Matrix eigenvectors;
};

inline constexpr double kHermitianTol = 1e-10;

/// max_ij |H_ij - conj(H_ji)|
double hermiticity_defect(const Matrix& m);

/// max_ij |m_ij|
double max_abs(const Matrix& m);

Matrix hermitian_part(const Matrix& m);

/// Throws NotHermitian when the defect exceeds kHermitianTol * (1 + max|H|).
EigenSystem eigensystem(const Matrix& h);

/// exp(-i H dt / hbar) assembled from the eigen-decomposition of H.
Matrix unitary_step(const EigenSystem& eig, double dt, double hbar);

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues in [-1e-6, 0) are clamped to zero; anything more negative
/// throws NotPositive.
Matrix psd_sqrt(const Matrix& m);

/// Sum of square roots of the (clamped) eigenvalues, i.e. tr sqrt(m).
double psd_sqrt_trace(const Matrix& m);

}  // namespace qsl
