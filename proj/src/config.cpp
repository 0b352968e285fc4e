#include "qsl/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qsl/errors.hpp"

namespace qsl {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& message) { throw Error(ErrorKind::BadConfig, message); }

const json& require(const json& obj, const std::string& key, const std::string& scope) {
  if (!obj.is_object() || !obj.contains(key)) bad("missing field '" + scope + key + "'");
  return obj.at(key);
}

double number(const json& value, const std::string& field) {
  if (!value.is_number()) bad("field '" + field + "' must be a number");
  const double v = value.get<double>();
  if (!std::isfinite(v)) bad("field '" + field + "' must be finite");
  return v;
}

double required_number(const json& obj, const std::string& key, const std::string& scope) {
  return number(require(obj, key, scope), scope + key);
}

double optional_number(const json& obj, const std::string& key, double fallback, const std::string& scope) {
  if (!obj.contains(key)) return fallback;
  return number(obj.at(key), scope + key);
}

Matrix pauli_x() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  return m;
}

Matrix pauli_z() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

Matrix hermitian_matrix(const json& value, const std::string& field, Eigen::Index dim) {
  Matrix m = parse_matrix(value, field);
  if (m.rows() != dim) {
    bad("field '" + field + "' is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
        ", expected dimension " + std::to_string(dim));
  }
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianTol * (1.0 + max_abs(m))) {
    throw Error(ErrorKind::NotHermitian, "field '" + field + "' is not Hermitian (defect " +
                                             std::to_string(defect) + ")");
  }
  return hermitian_part(m);
}

SampledParams parse_samples(const json& list, const std::string& field, Eigen::Index dim, double duration) {
  if (!list.is_array() || list.size() < 2) bad("field '" + field + "' must list at least two samples");
  SampledParams out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string scope = field + "[" + std::to_string(i) + "].";
    const double t = required_number(list[i], "t", scope);
    if (!out.times.empty() && !(t > out.times.back())) bad("field '" + scope + "t' must increase strictly");
    out.times.push_back(t);
    out.matrices.push_back(hermitian_matrix(require(list[i], "matrix", scope), scope + "matrix", dim));
  }
  if (out.times.front() > 0.0 || out.times.back() < duration) {
    bad("field '" + field + "' must cover [0, duration]");
  }
  return out;
}

ProtocolParams parse_params(const std::string& kind, const json& params, Eigen::Index dim, double duration,
                            const std::filesystem::path& base_dir) {
  const std::string scope = "params.";
  if (kind == "constant") {
    return ConstantParams{hermitian_matrix(require(params, "matrix", scope), "params.matrix", dim)};
  }
  if (kind == "piecewise_const") {
    const json& segments = require(params, "segments", scope);
    if (!segments.is_array() || segments.empty()) bad("field 'params.segments' must be a non-empty list");
    PiecewiseParams out;
    double total = 0.0;
    for (std::size_t i = 0; i < segments.size(); ++i) {
      const std::string seg = "params.segments[" + std::to_string(i) + "].";
      PiecewiseSegment s;
      s.matrix = hermitian_matrix(require(segments[i], "matrix", seg), seg + "matrix", dim);
      s.duration = required_number(segments[i], "duration", seg);
      if (!(s.duration > 0.0)) bad("field '" + seg + "duration' must be positive");
      total += s.duration;
      out.segments.push_back(std::move(s));
    }
    if (total < duration * (1.0 - 1e-12)) bad("field 'params.segments' durations do not cover the run");
    return out;
  }
  if (kind == "rabi_qubit") {
    if (dim != 2) bad("field 'dim' must be 2 for rabi_qubit");
    return RabiParams{required_number(params, "omega0", scope), required_number(params, "amplitude", scope),
                      required_number(params, "drive_frequency", scope)};
  }
  if (kind == "landau_zener") {
    if (dim != 2) bad("field 'dim' must be 2 for landau_zener");
    return LandauZenerParams{required_number(params, "velocity", scope), required_number(params, "gap", scope)};
  }
  if (kind == "modulated_oscillator") {
    if (dim < 2) bad("field 'dim' must be at least 2 for modulated_oscillator");
    return OscillatorParams{required_number(params, "omega0", scope), required_number(params, "gamma", scope),
                            optional_number(params, "squeezing", 0.0, scope)};
  }
  if (kind == "matrix_samples") {
    if (params.contains("samples")) return parse_samples(params.at("samples"), "params.samples", dim, duration);
    const json& file = require(params, "file", scope);
    if (!file.is_string()) bad("field 'params.file' must be a path");
    std::filesystem::path path = file.get<std::string>();
    if (path.is_relative()) path = base_dir / path;
    return parse_samples(read_json_file(path), path.string(), dim, duration);
  }
  bad("field 'kind' has unknown value '" + kind + "'");
}

/// t -> H(t) in config time units.
HamiltonianProtocol::Evaluator make_evaluator(const ProtocolConfig& cfg) {
  const Eigen::Index d = cfg.dim;
  const double tau = cfg.duration;
  const double hbar = cfg.hbar;
  return std::visit(
      [&](const auto& p) -> HamiltonianProtocol::Evaluator {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, ConstantParams>) {
          return [m = p.matrix](double) { return m; };
        } else if constexpr (std::is_same_v<P, PiecewiseParams>) {
          return [segments = p.segments](double t) {
            double start = 0.0;
            for (const auto& s : segments) {
              if (t < start + s.duration) return s.matrix;
              start += s.duration;
            }
            return segments.back().matrix;
          };
        } else if constexpr (std::is_same_v<P, RabiParams>) {
          return [p](double t) {
            return Matrix(0.5 * p.omega0 * pauli_z() + p.amplitude * std::cos(p.drive_frequency * t) * pauli_x());
          };
        } else if constexpr (std::is_same_v<P, LandauZenerParams>) {
          return [p, tau](double t) {
            return Matrix(0.5 * p.velocity * (t - 0.5 * tau) * pauli_z() + 0.5 * p.gap * pauli_x());
          };
        } else if constexpr (std::is_same_v<P, OscillatorParams>) {
          Matrix number = Matrix::Zero(d, d);
          Matrix pair = Matrix::Zero(d, d);  // a^2 + a^dag^2
          for (Eigen::Index n = 0; n < d; ++n) number(n, n) = static_cast<double>(n);
          for (Eigen::Index n = 0; n + 2 < d; ++n) {
            const double amp = std::sqrt(static_cast<double>((n + 1) * (n + 2)));
            pair(n, n + 2) = amp;
            pair(n + 2, n) = amp;
          }
          return [p, number, pair, hbar](double t) {
            return Matrix(hbar * p.omega0 * std::exp(p.gamma * t) * number + p.squeezing * pair);
          };
        } else {
          return [p](double t) {
            const auto& ts = p.times;
            if (t <= ts.front()) return p.matrices.front();
            if (t >= ts.back()) return p.matrices.back();
            const auto it = std::upper_bound(ts.begin(), ts.end(), t);
            const std::size_t hi = static_cast<std::size_t>(it - ts.begin());
            const std::size_t lo = hi - 1;
            const double w = (t - ts[lo]) / (ts[hi] - ts[lo]);
            return Matrix((1.0 - w) * p.matrices[lo] + w * p.matrices[hi]);
          };
        }
      },
      cfg.params);
}

}  // namespace

Complex parse_complex(const json& value, const std::string& field) {
  if (value.is_number()) return {number(value, field), 0.0};
  if (value.is_array() && value.size() == 2) return {number(value[0], field), number(value[1], field)};
  if (value.is_object()) {
    return {optional_number(value, "re", 0.0, field + "."), optional_number(value, "im", 0.0, field + ".")};
  }
  bad("field '" + field + "' must be a complex number ({re, im}, [re, im] or a number)");
}

Matrix parse_matrix(const json& value, const std::string& field) {
  if (!value.is_array() || value.empty()) bad("field '" + field + "' must be a non-empty list of rows");
  const auto n = static_cast<Eigen::Index>(value.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = value[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) bad("field '" + field + "' must be square");
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = parse_complex(row[static_cast<std::size_t>(j)], field);
  }
  return m;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    bad("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

ProtocolConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) bad("configuration must be a JSON object");
  ProtocolConfig cfg;
  const json& kind = require(doc, "kind", "");
  if (!kind.is_string()) bad("field 'kind' must be a string");
  cfg.kind = kind.get<std::string>();

  const double dim = required_number(doc, "dim", "");
  if (dim < 1 || dim != std::floor(dim)) bad("field 'dim' must be a positive integer");
  cfg.dim = static_cast<Eigen::Index>(dim);

  cfg.hbar = optional_number(doc, "hbar", 1.0, "");
  if (!(cfg.hbar > 0.0)) bad("field 'hbar' must be positive");
  cfg.duration = required_number(doc, "duration", "");
  if (!(cfg.duration > 0.0)) bad("field 'duration' must be positive");

  const double steps = optional_number(doc, "steps", static_cast<double>(kDefaultSteps), "");
  if (steps < static_cast<double>(kMinConfigSteps) || steps != std::floor(steps)) {
    bad("field 'steps' must be an integer >= " + std::to_string(kMinConfigSteps));
  }
  cfg.steps = static_cast<std::size_t>(steps);

  const json empty = json::object();
  cfg.params = parse_params(cfg.kind, doc.contains("params") ? doc.at("params") : empty, cfg.dim, cfg.duration,
                            base_dir);

  cfg.initial_state = doc.contains("initial_state") ? doc.at("initial_state") : json("equal_superposition");

  if (doc.contains("ground_shift_mode")) {
    const auto mode = doc.at("ground_shift_mode");
    if (mode == "instantaneous") {
      cfg.ground_shift_mode = GroundShiftMode::Instantaneous;
    } else if (mode == "global") {
      cfg.ground_shift_mode = GroundShiftMode::Global;
    } else {
      bad("field 'ground_shift_mode' must be 'instantaneous' or 'global'");
    }
  }
  if (doc.contains("ml_mode")) {
    const auto mode = doc.at("ml_mode");
    if (mode == "linear") {
      cfg.ml_mode = MlMode::Linear;
    } else if (mode == "quadratic") {
      cfg.ml_mode = MlMode::Quadratic;
    } else {
      bad("field 'ml_mode' must be 'linear' or 'quadratic'");
    }
  }
  if (doc.contains("scale_time_by_hbar")) {
    if (!doc.at("scale_time_by_hbar").is_boolean()) bad("field 'scale_time_by_hbar' must be a boolean");
    cfg.scale_time_by_hbar = doc.at("scale_time_by_hbar").get<bool>();
  }
  cfg.label = doc.value("label", cfg.kind);
  return cfg;
}

HamiltonianProtocol build_protocol(const ProtocolConfig& cfg) {
  auto evaluator = make_evaluator(cfg);
  if (!cfg.scale_time_by_hbar) {
    return HamiltonianProtocol(std::move(evaluator), cfg.dim, cfg.duration, cfg.hbar, cfg.label);
  }
  const double hbar = cfg.hbar;
  return HamiltonianProtocol([evaluator, hbar](double t) { return evaluator(t / hbar); }, cfg.dim,
                             cfg.duration * hbar, hbar, cfg.label);
}

QuantumState build_initial_state(const ProtocolConfig& cfg, const HamiltonianProtocol& protocol) {
  const json& spec = cfg.initial_state;
  const Eigen::Index d = cfg.dim;
  if (spec.is_string()) {
    const auto label = spec.get<std::string>();
    if (label == "ground") {
      return QuantumState::pure(eigensystem(protocol.at(0.0)).eigenvectors.col(0));
    }
    if (label == "equal_superposition") {
      return QuantumState::pure(Vector::Constant(d, 1.0 / std::sqrt(static_cast<double>(d))));
    }
    if (label == "maximally_mixed") return QuantumState::maximally_mixed(d);
    bad("field 'initial_state' has unknown label '" + label + "'");
  }
  if (spec.is_object() && spec.contains("amplitudes")) {
    const json& amps = spec.at("amplitudes");
    if (!amps.is_array() || static_cast<Eigen::Index>(amps.size()) != d) {
      bad("field 'initial_state.amplitudes' must list " + std::to_string(d) + " amplitudes");
    }
    Vector v(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      v[i] = parse_complex(amps[static_cast<std::size_t>(i)], "initial_state.amplitudes");
    }
    return QuantumState::pure(std::move(v));
  }
  if (spec.is_object() && spec.contains("density")) {
    Matrix m = parse_matrix(spec.at("density"), "initial_state.density");
    if (m.rows() != d) bad("field 'initial_state.density' has the wrong dimension");
    return QuantumState::mixed(std::move(m));
  }
  bad("field 'initial_state' must be a label, {amplitudes} or {density}");
}

void set_path(json& doc, const std::string& path, double value) {
  if (path.empty()) bad("empty sweep parameter path");
  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (key.empty() || !node->is_object()) bad("sweep parameter path '" + path + "' does not resolve");
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    if (!node->contains(key)) bad("sweep parameter path '" + path + "' does not resolve");
    node = &(*node)[key];
    start = dot + 1;
  }
}

}  // namespace qsl
