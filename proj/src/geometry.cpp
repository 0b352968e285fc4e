#include "qsl/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qsl/errors.hpp"

namespace qsl {
namespace {

constexpr double kNormalizationTol = 1e-8;
constexpr double kTracelessTol = 1e-9;
constexpr double kDensityCutoff = 1e-14;

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

void require_same_dim(const QuantumState& a, const QuantumState& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "states have dimensions " + std::to_string(a.dim()) +
                                                  " and " + std::to_string(b.dim()));
  }
}

double expectation(const Vector& psi, const Matrix& rho) { return psi.dot(rho * psi).real(); }

void require_normalized(std::span<const double> p, double h) {
  double mass = 0.0;
  for (double v : p) {
    if (v < 0.0) throw Error(ErrorKind::NotNormalized, "negative density value");
    mass += v;
  }
  mass *= h;
  if (std::abs(mass - 1.0) > kNormalizationTol) {
    throw Error(ErrorKind::NotNormalized, "density integrates to " + std::to_string(mass));
  }
}

/// Three-point first derivative of f at the middle node for arbitrary
/// spacings h1 = t1 - t0 and h2 = t2 - t1.
struct Stencil {
  double left, centre, right;
};

Stencil derivative_stencil(double t0, double t1, double t2) {
  const double h1 = t1 - t0;
  const double h2 = t2 - t1;
  return {-h2 / (h1 * (h1 + h2)), (h2 - h1) / (h1 * h2), h1 / (h2 * (h1 + h2))};
}

std::size_t interior_index(const DistributionTrack& track, double t) {
  const std::size_t i = track.index_of(t);
  if (i == 0 || i + 1 >= track.size()) {
    throw Error(ErrorKind::ParameterOutOfRange, "t=" + std::to_string(t) + " has no neighbours on both sides");
  }
  return i;
}

void require_interior(const Trajectory& traj, std::size_t index) {
  if (index == 0 || index + 1 >= traj.size()) {
    throw Error(ErrorKind::IndexOutOfRange,
                "sample " + std::to_string(index) + " is not interior to a trajectory of " +
                    std::to_string(traj.size()) + " samples");
  }
}

}  // namespace

// ---------------------------------------------------------------------------

FidelityReference::FidelityReference(const QuantumState& reference) : reference_(reference) {
  if (!reference_.is_pure()) sqrt_density_ = psd_sqrt(reference_.density());
}

double FidelityReference::fidelity(const QuantumState& other) const {
  require_same_dim(reference_, other);
  if (reference_.is_pure() && other.is_pure()) {
    return clamp_unit(std::norm(reference_.amplitudes().dot(other.amplitudes())));
  }
  if (reference_.is_pure()) return clamp_unit(expectation(reference_.amplitudes(), other.density()));
  if (other.is_pure()) return clamp_unit(expectation(other.amplitudes(), reference_.density()));
  const Matrix inner = sqrt_density_ * other.density() * sqrt_density_;
  const double root_trace = psd_sqrt_trace(inner);
  return clamp_unit(root_trace * root_trace);
}

double FidelityReference::bures_length(const QuantumState& other) const {
  if (reference_.is_pure() && other.is_pure()) {
    require_same_dim(reference_, other);
    // atan2 of the orthogonal and parallel components keeps full relative
    // precision for nearly identical states, where arccos(1 - eps) does not.
    const Vector& a = reference_.amplitudes();
    const Vector& b = other.amplitudes();
    const Complex overlap = a.dot(b);
    const double orthogonal = (b - overlap * a).norm();
    return std::atan2(orthogonal, std::abs(overlap));
  }
  return std::acos(std::sqrt(clamp_unit(fidelity(other))));
}

double fidelity(const QuantumState& a, const QuantumState& b) {
  return FidelityReference(a).fidelity(b);
}

double bures_length(const QuantumState& a, const QuantumState& b) {
  return FidelityReference(a).bures_length(b);
}

// ---------------------------------------------------------------------------

BuresIncrement bures_increment(const QuantumState& rho, const Matrix& drho, double tol_p) {
  if (drho.rows() != rho.dim() || drho.cols() != rho.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "increment and state dimensions differ");
  }
  const double defect = hermiticity_defect(drho);
  if (defect > kHermitianTol * (1.0 + max_abs(drho))) {
    throw Error(ErrorKind::NotHermitian, "increment hermiticity defect " + std::to_string(defect));
  }
  const Complex trace = drho.trace();
  if (std::abs(trace) > kTracelessTol) {
    throw Error(ErrorKind::NotTraceless, "increment trace " + std::to_string(std::abs(trace)));
  }

  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.density());
  BuresIncrement out;
  out.eigen_basis = {solver.eigenvalues(), solver.eigenvectors()};
  const RealVector& p = out.eigen_basis.eigenvalues;
  const Matrix& v = out.eigen_basis.eigenvectors;
  const Matrix in_basis = v.adjoint() * hermitian_part(drho) * v;

  double sum = 0.0;
  for (Eigen::Index j = 0; j < p.size(); ++j) {
    for (Eigen::Index k = 0; k < p.size(); ++k) {
      const double weight = p[j] + p[k];
      if (weight <= tol_p) continue;
      sum += std::norm(in_basis(j, k)) / weight;
    }
  }
  out.value = 0.5 * sum;
  return out;
}

// ---------------------------------------------------------------------------

double wootters_angle(std::span<const double> p0, std::span<const double> p1, double h) {
  if (p0.size() != p1.size() || p0.empty()) {
    throw Error(ErrorKind::GridMismatch, "densities sampled on different grids");
  }
  if (!(h > 0.0)) throw Error(ErrorKind::GridMismatch, "grid spacing must be positive");
  require_normalized(p0, h);
  require_normalized(p1, h);
  double overlap = 0.0;
  for (std::size_t i = 0; i < p0.size(); ++i) overlap += std::sqrt(p0[i] * p1[i]);
  return std::acos(clamp_unit(overlap * h));
}

DistributionTrack::DistributionTrack(std::vector<double> grid, std::vector<double> parameter_values,
                                     std::vector<std::vector<double>> densities)
    : grid_(std::move(grid)), parameters_(std::move(parameter_values)), densities_(std::move(densities)) {
  if (grid_.size() < 2) throw Error(ErrorKind::GridMismatch, "grid needs at least two points");
  spacing_ = grid_[1] - grid_[0];
  for (std::size_t i = 1; i < grid_.size(); ++i) {
    if (std::abs((grid_[i] - grid_[i - 1]) - spacing_) > 1e-9 * std::abs(spacing_) || spacing_ <= 0.0) {
      throw Error(ErrorKind::GridMismatch, "grid must be uniform and increasing");
    }
  }
  if (densities_.size() != parameters_.size()) {
    throw Error(ErrorKind::GridMismatch, "one density per parameter value is required");
  }
  for (std::size_t i = 1; i < parameters_.size(); ++i) {
    if (!(parameters_[i] > parameters_[i - 1])) {
      throw Error(ErrorKind::ParameterOutOfRange, "parameter values must increase strictly");
    }
  }
  for (const auto& p : densities_) {
    if (p.size() != grid_.size()) throw Error(ErrorKind::GridMismatch, "density length differs from grid");
    require_normalized(p, spacing_);
  }
}

DistributionTrack DistributionTrack::translated_gaussian(double sigma, std::vector<double> parameter_values,
                                                         int points_per_sigma) {
  if (!(sigma > 0.0)) throw Error(ErrorKind::BadConfig, "sigma must be positive");
  if (parameter_values.empty()) throw Error(ErrorKind::BadConfig, "no parameter values");
  if (points_per_sigma < 4) throw Error(ErrorKind::BadConfig, "grid too coarse");
  const auto [lo, hi] = std::minmax_element(parameter_values.begin(), parameter_values.end());
  const double margin = 12.0 * sigma;
  const double h = sigma / points_per_sigma;
  const double start = *lo - margin;
  const auto points = static_cast<std::size_t>(std::ceil((*hi + margin - start) / h)) + 1;

  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) grid[i] = start + h * static_cast<double>(i);

  const double norm = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
  std::vector<std::vector<double>> densities;
  densities.reserve(parameter_values.size());
  for (double mean : parameter_values) {
    std::vector<double> p(points);
    for (std::size_t i = 0; i < points; ++i) {
      const double z = (grid[i] - mean) / sigma;
      p[i] = norm * std::exp(-0.5 * z * z);
    }
    densities.push_back(std::move(p));
  }
  return DistributionTrack(std::move(grid), std::move(parameter_values), std::move(densities));
}

std::size_t DistributionTrack::index_of(double t) const {
  for (std::size_t i = 0; i < parameters_.size(); ++i) {
    if (std::abs(parameters_[i] - t) <= 1e-9 * std::max(1.0, std::abs(t))) return i;
  }
  throw Error(ErrorKind::ParameterOutOfRange, "t=" + std::to_string(t) + " is not a sampled parameter value");
}

double fisher_information_1d(const DistributionTrack& track, double t) {
  const std::size_t i = interior_index(track, t);
  const auto& ts = track.parameter_values();
  const Stencil s = derivative_stencil(ts[i - 1], ts[i], ts[i + 1]);
  const auto before = track.density(i - 1);
  const auto here = track.density(i);
  const auto after = track.density(i + 1);

  double sum = 0.0;
  for (std::size_t x = 0; x < here.size(); ++x) {
    if (here[x] < kDensityCutoff) continue;
    const double rate = s.left * before[x] + s.centre * here[x] + s.right * after[x];
    sum += rate * rate / here[x];
  }
  return sum * track.spacing();
}

double statistical_velocity_sq(const DistributionTrack& track, double t) {
  const std::size_t i = interior_index(track, t);
  const auto& ts = track.parameter_values();
  const double angle = wootters_angle(track.density(i - 1), track.density(i + 1), track.spacing());
  const double velocity = 2.0 * angle / (ts[i + 1] - ts[i - 1]);
  return velocity * velocity;
}

double statistical_length(const DistributionTrack& track) {
  double length = 0.0;
  for (std::size_t i = 0; i + 1 < track.size(); ++i) {
    length += 2.0 * wootters_angle(track.density(i), track.density(i + 1), track.spacing());
  }
  return length;
}

// ---------------------------------------------------------------------------

DynamicalVelocity dynamical_velocity(const Trajectory& traj, std::size_t index) {
  require_interior(traj, index);
  const double rate =
      (traj.bures_from_initial[index + 1] - traj.bures_from_initial[index - 1]) / (2.0 * traj.dt());
  return {std::abs(rate), (rate > 0.0) - (rate < 0.0)};
}

double bures_speed(const Trajectory& traj, std::size_t index) {
  require_interior(traj, index);
  return bures_length(traj.states[index - 1], traj.states[index + 1]) / (2.0 * traj.dt());
}

}  // namespace qsl
