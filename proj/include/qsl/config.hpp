#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsl/bounds.hpp"
#include "qsl/linalg.hpp"
#include "qsl/protocol.hpp"
#include "qsl/qdyn.hpp"
#include "qsl/state.hpp"

namespace qsl {

struct ConstantParams {
  Matrix matrix;
};

struct PiecewiseSegment {
  Matrix matrix;
  double duration = 0.0;
};
struct PiecewiseParams {
  std::vector<PiecewiseSegment> segments;
};

/// H(t) = (omega0/2) sigma_z + amplitude cos(drive_frequency t) sigma_x
struct RabiParams {
  double omega0 = 0.0;
  double amplitude = 0.0;
  double drive_frequency = 0.0;
};

/// H(t) = (velocity (t - tau/2) / 2) sigma_z + (gap / 2) sigma_x
struct LandauZenerParams {
  double velocity = 0.0;
  double gap = 0.0;
};

/// H(t) = hbar omega0 e^{gamma t} diag(0, 1, ..., d-1) + squeezing (a^2 + a^dag^2)
/// on the ladder truncated at d levels.
struct OscillatorParams {
  double omega0 = 0.0;
  double gamma = 0.0;
  double squeezing = 0.0;
};

/// Linear interpolation between Hermitian samples; times strictly
/// increasing and covering [0, tau].
struct SampledParams {
  std::vector<double> times;
  std::vector<Matrix> matrices;
};

using ProtocolParams =
    std::variant<ConstantParams, PiecewiseParams, RabiParams, LandauZenerParams, OscillatorParams, SampledParams>;

inline constexpr std::size_t kMinConfigSteps = 16;
inline constexpr std::size_t kDefaultSteps = 2048;

struct ProtocolConfig {
  std::string kind;
  Eigen::Index dim = 0;
  double hbar = 1.0;
  double duration = 0.0;
  std::size_t steps = kDefaultSteps;
  ProtocolParams params;
  /// "ground", "equal_superposition", "maximally_mixed", {"amplitudes": [...]}
  /// or {"density": [[...]]}.
  nlohmann::json initial_state;
  GroundShiftMode ground_shift_mode = GroundShiftMode::Instantaneous;
  MlMode ml_mode = MlMode::Linear;
  /// Interpret durations and time-dependent parameters in units of hbar /
  /// [energy]: the physical duration becomes duration * hbar and
  /// H_phys(t) = H(t / hbar). Fixes the state sequence while hbar varies.
  bool scale_time_by_hbar = false;
  std::string label;
};

/// Parses a run configuration. `base_dir` resolves relative file references
/// (matrix_samples "file"). Errors: BadConfig naming the offending field,
/// NotHermitian for non-Hermitian matrices.
ProtocolConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});

/// Reads and parses a JSON document; BadConfig when unreadable or malformed.
nlohmann::json read_json_file(const std::filesystem::path& path);

HamiltonianProtocol build_protocol(const ProtocolConfig& cfg);

/// Initial state named by the config; "ground" is the ground state of H(0).
QuantumState build_initial_state(const ProtocolConfig& cfg, const HamiltonianProtocol& protocol);

/// Accepts {"re": x, "im": y}, [x, y] or a plain number.
Complex parse_complex(const nlohmann::json& value, const std::string& field);
Matrix parse_matrix(const nlohmann::json& value, const std::string& field);

/// Sets the value at a dotted path ("params.gamma", "hbar") inside a config
/// document. The parent object must exist. BadConfig otherwise.
void set_path(nlohmann::json& doc, const std::string& path, double value);

}  // namespace qsl
