#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsl/app.hpp"
#include "qsl/bounds.hpp"
#include "qsl/config.hpp"
#include "qsl/errors.hpp"
#include "qsl/geometry.hpp"
#include "qsl/qdyn.hpp"
#include "qsl/verify.hpp"

namespace py = pybind11;
using namespace qsl;

namespace {

/// 1-D arrays are state vectors, 2-D arrays density matrices.
QuantumState to_state(const py::array& a) {
  if (a.ndim() == 1) return QuantumState::pure(a.cast<Vector>());
  if (a.ndim() == 2) return QuantumState::mixed(a.cast<Matrix>());
  throw Error(ErrorKind::DimensionMismatch, "state must be a 1-D vector or a 2-D density matrix");
}

MlMode to_ml_mode(const std::string& mode) {
  if (mode == "linear") return MlMode::Linear;
  if (mode == "quadratic") return MlMode::Quadratic;
  throw Error(ErrorKind::BadConfig, "ml_mode must be 'linear' or 'quadratic'");
}

GroundShiftMode to_shift_mode(const std::string& mode) {
  if (mode == "instantaneous") return GroundShiftMode::Instantaneous;
  if (mode == "global") return GroundShiftMode::Global;
  throw Error(ErrorKind::BadConfig, "ground_shift must be 'instantaneous' or 'global'");
}

py::array_t<double> as_array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

py::dict report_dict(const QSLReport& q) {
  py::dict d;
  d["tau"] = q.tau;
  d["bures"] = q.bures;
  d["e_avg"] = q.e_avg;
  d["de_avg"] = q.de_avg;
  d["tau_mt"] = q.tau_mt;
  d["tau_ml_quad"] = q.tau_ml_quad;
  d["tau_ml_lin"] = q.tau_ml_lin;
  d["tau_qsl"] = q.tau_qsl;
  d["slack_mt"] = q.slack_mt;
  d["slack_ml_quad"] = q.slack_ml_quad;
  d["slack_ml_lin"] = q.slack_ml_lin;
  d["hbar"] = q.hbar;
  return d;
}

py::list audit_list(const AuditReport& a) {
  py::list out;
  for (const auto& c : a.checks) {
    py::dict d;
    d["name"] = c.name;
    d["worst_margin"] = c.worst_margin;
    d["worst_time"] = c.worst_time;
    d["worst_lhs"] = c.worst_lhs;
    d["worst_rhs"] = c.worst_rhs;
    d["samples_checked"] = c.samples_checked;
    d["passed"] = c.passed;
    out.append(d);
  }
  return out;
}

py::dict evolve(const std::function<Matrix(double)>& hamiltonian, Eigen::Index dim, double duration,
                const py::array& initial, std::size_t steps, double hbar, const std::string& ground_shift_mode,
                const std::string& ml_mode, double tol) {
  const HamiltonianProtocol raw(hamiltonian, dim, duration, hbar, "python");
  const HamiltonianProtocol shifted = ground_shift(raw, to_shift_mode(ground_shift_mode), 2 * steps + 1);
  const Trajectory traj = propagate(shifted, to_state(initial), steps);
  py::dict out;
  out["times"] = as_array(traj.times);
  out["bures"] = as_array(traj.bures_from_initial);
  out["mean_energy"] = as_array(traj.mean_energy);
  out["energy_variance"] = as_array(traj.energy_variance);
  out["report"] = report_dict(build_report(traj, to_ml_mode(ml_mode)));
  out["audit"] = audit_list(audit_trajectory(traj, tol));
  return out;
}

std::string run_config_json(const std::string& text, const std::string& base_dir, double tol) {
  const ProtocolConfig cfg = parse_config(nlohmann::json::parse(text), base_dir);
  return report_to_json(run_pipeline(cfg, tol), false).dump();
}

py::array_t<double> fisher_table(double sigma, double t_min, double t_max, std::size_t samples) {
  const auto rows = fisher_demo(sigma, t_min, t_max, samples);
  py::array_t<double> out({static_cast<py::ssize_t>(rows.size()), py::ssize_t{4}});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto r = static_cast<py::ssize_t>(i);
    view(r, 0) = rows[i].t;
    view(r, 1) = rows[i].fisher;
    view(r, 2) = rows[i].inverse_width_sq;
    view(r, 3) = rows[i].velocity_sq;
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quantum speed limits for driven systems";
  m.attr("__version__") = kVersion;

  static py::exception<Error> error(m, "QslError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    } catch (const nlohmann::json::exception& e) {
      py::set_error(error, (std::string("BadConfig: ") + e.what()).c_str());
    }
  });

  m.def("fidelity", [](const py::array& a, const py::array& b) { return fidelity(to_state(a), to_state(b)); },
        py::arg("a"), py::arg("b"));
  m.def("bures_length", [](const py::array& a, const py::array& b) { return bures_length(to_state(a), to_state(b)); },
        py::arg("a"), py::arg("b"));
  m.def(
      "bures_increment",
      [](const py::array& rho, const Matrix& drho, double tol_p) {
        return bures_increment(to_state(rho), drho, tol_p).value;
      },
      py::arg("rho"), py::arg("drho"), py::arg("tol_p") = 1e-12);
  m.def(
      "wootters_angle",
      [](const std::vector<double>& p0, const std::vector<double>& p1, double h) { return wootters_angle(p0, p1, h); },
      py::arg("p0"), py::arg("p1"), py::arg("h"));
  m.def("mean_energy", [](const py::array& s, const Matrix& h) { return mean_energy(to_state(s), h); },
        py::arg("state"), py::arg("hamiltonian"));
  m.def("energy_variance", [](const py::array& s, const Matrix& h) { return energy_variance(to_state(s), h); },
        py::arg("state"), py::arg("hamiltonian"));

  m.def("tau_mt", &tau_mt, py::arg("bures"), py::arg("de_avg"), py::arg("hbar") = 1.0);
  m.def("tau_ml_quadratic", &tau_ml_quadratic, py::arg("bures"), py::arg("e_avg"), py::arg("hbar") = 1.0);
  m.def("tau_ml_linear", &tau_ml_linear, py::arg("bures"), py::arg("e_avg"), py::arg("hbar") = 1.0);
  m.def(
      "qsl_time",
      [](double l, double e, double de, double hbar, const std::string& mode) {
        return qsl_time(l, e, de, hbar, to_ml_mode(mode));
      },
      py::arg("bures"), py::arg("e_avg"), py::arg("de_avg"), py::arg("hbar") = 1.0, py::arg("ml_mode") = "linear");
  m.def("check_trig_bound", &check_trig_bound, py::arg("x"));

  m.def("evolve", &evolve, py::arg("hamiltonian"), py::arg("dim"), py::arg("duration"), py::arg("initial"),
        py::arg("steps") = kDefaultSteps, py::arg("hbar") = 1.0, py::arg("ground_shift") = "instantaneous",
        py::arg("ml_mode") = "linear", py::arg("tol") = kDefaultAuditTolerance,
        "Propagate under t -> H(t), then report the speed-limit bounds and the audit.");
  m.def("_run_config_json", &run_config_json, py::arg("text"), py::arg("base_dir") = ".",
        py::arg("tol") = kDefaultAuditTolerance);
  m.def("fisher_demo", &fisher_table, py::arg("sigma"), py::arg("t_min") = 0.0, py::arg("t_max") = 1.0,
        py::arg("samples") = 101, "Rows of (t, J_t, 1/sigma^2, Wootters velocity squared).");
}
