#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "qsl/bounds.hpp"
#include "qsl/config.hpp"
#include "qsl/errors.hpp"
#include "qsl/qdyn.hpp"
#include "test_helpers.hpp"

using namespace qsl;
using namespace qsl::test;
using nlohmann::json;

namespace {

json two_level(double e = 1.0) {
  return json{{"kind", "constant"},
              {"dim", 2},
              {"duration", kPi / e},
              {"params", {{"matrix", {{0, 0}, {0, e}}}}},
              {"initial_state", "equal_superposition"}};
}

std::string config_error(const json& doc) {
  try {
    parse_config(doc);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadConfig);
    return e.what();
  }
  FAIL("expected BadConfig");
  return {};
}

Trajectory run(const ProtocolConfig& cfg) {
  const auto p = build_protocol(cfg);
  return propagate(ground_shift(p, cfg.ground_shift_mode), build_initial_state(cfg, p), cfg.steps);
}

}  // namespace

TEST_CASE("defaults") {
  const auto cfg = parse_config(two_level());
  CHECK(cfg.kind == "constant");
  CHECK(cfg.dim == 2);
  CHECK(cfg.hbar == 1.0);
  CHECK(cfg.steps == kDefaultSteps);
  CHECK(cfg.ground_shift_mode == GroundShiftMode::Instantaneous);
  CHECK(cfg.ml_mode == MlMode::Linear);
  CHECK_FALSE(cfg.scale_time_by_hbar);
  CHECK(cfg.label == "constant");
}

TEST_CASE("optional fields") {
  auto doc = two_level();
  doc["hbar"] = 0.5;
  doc["steps"] = 64;
  doc["ground_shift_mode"] = "global";
  doc["ml_mode"] = "quadratic";
  doc["scale_time_by_hbar"] = true;
  doc["label"] = "saturation";
  const auto cfg = parse_config(doc);
  CHECK(cfg.hbar == 0.5);
  CHECK(cfg.steps == 64);
  CHECK(cfg.ground_shift_mode == GroundShiftMode::Global);
  CHECK(cfg.ml_mode == MlMode::Quadratic);
  CHECK(cfg.scale_time_by_hbar);
  CHECK(cfg.label == "saturation");
}

TEST_CASE("field-level errors") {
  auto missing = two_level();
  missing.erase("duration");
  CHECK(config_error(missing).find("duration") != std::string::npos);

  auto bad_kind = two_level();
  bad_kind["kind"] = "harmonic";
  CHECK(config_error(bad_kind).find("kind") != std::string::npos);

  auto few_steps = two_level();
  few_steps["steps"] = 8;
  CHECK(config_error(few_steps).find("steps") != std::string::npos);

  auto bad_hbar = two_level();
  bad_hbar["hbar"] = 0.0;
  CHECK(config_error(bad_hbar).find("hbar") != std::string::npos);

  auto bad_duration = two_level();
  bad_duration["duration"] = -1.0;
  CHECK(config_error(bad_duration).find("duration") != std::string::npos);

  auto no_params = two_level();
  no_params.erase("params");
  CHECK(config_error(no_params).find("params.matrix") != std::string::npos);

  auto wrong_shape = two_level();
  wrong_shape["params"]["matrix"] = {{0, 0, 0}, {0, 1, 0}, {0, 0, 2}};
  CHECK(config_error(wrong_shape).find("params.matrix") != std::string::npos);

  auto bad_mode = two_level();
  bad_mode["ml_mode"] = "cubic";
  CHECK(config_error(bad_mode).find("ml_mode") != std::string::npos);

  auto rabi = json{{"kind", "rabi_qubit"}, {"dim", 2}, {"duration", 1.0}, {"params", {{"omega0", 1.0}}}};
  CHECK(config_error(rabi).find("params.amplitude") != std::string::npos);

  auto non_hermitian = two_level();
  non_hermitian["params"]["matrix"] = {{0, 1}, {0, 1}};
  try {
    parse_config(non_hermitian);
    FAIL("expected NotHermitian");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotHermitian);
  }
}

TEST_CASE("complex numbers and matrices") {
  CHECK(parse_complex(json(1.5), "x") == Complex(1.5, 0));
  CHECK(parse_complex(json::array({1.0, -2.0}), "x") == Complex(1, -2));
  CHECK(parse_complex(json{{"re", 0.5}, {"im", 0.25}}, "x") == Complex(0.5, 0.25));
  CHECK(parse_complex(json{{"im", 1.0}}, "x") == Complex(0, 1));
  CHECK_THROWS_AS(parse_complex(json("one"), "x"), Error);
  const Matrix m = parse_matrix(json{{1, json{{"re", 0}, {"im", -1}}}, {json{{"re", 0}, {"im", 1}}, 2}}, "m");
  CHECK(m(0, 1) == Complex(0, -1));
  CHECK(m(1, 0) == Complex(0, 1));
  CHECK_THROWS_AS(parse_matrix(json{{1, 2}, {3}}, "m"), Error);
}

TEST_CASE("initial states") {
  auto doc = two_level(2.0);
  const auto check_state = [&](const json& spec, auto&& predicate) {
    doc["initial_state"] = spec;
    const auto cfg = parse_config(doc);
    predicate(build_initial_state(cfg, build_protocol(cfg)));
  };
  check_state("ground", [](const QuantumState& s) {
    REQUIRE(s.is_pure());
    CHECK(std::abs(s.amplitudes()[0]) == doctest::Approx(1.0));
  });
  check_state("equal_superposition",
              [](const QuantumState& s) { CHECK(std::abs(s.amplitudes()[1]) == doctest::Approx(std::sqrt(0.5))); });
  check_state("maximally_mixed", [](const QuantumState& s) { CHECK(s.purity() == doctest::Approx(0.5)); });
  check_state(json{{"amplitudes", {0.6, json::array({0.0, 0.8})}}}, [](const QuantumState& s) {
    CHECK(s.amplitudes()[1] == Complex(0, 0.8));
  });
  check_state(json{{"density", {{0.7, 0.1}, {0.1, 0.3}}}},
              [](const QuantumState& s) { CHECK(s.density()(0, 1).real() == doctest::Approx(0.1)); });

  doc["initial_state"] = "excited";
  auto cfg = parse_config(doc);
  CHECK_THROWS_AS(build_initial_state(cfg, build_protocol(cfg)), Error);
  doc["initial_state"] = json{{"amplitudes", {1.0}}};
  cfg = parse_config(doc);
  CHECK_THROWS_AS(build_initial_state(cfg, build_protocol(cfg)), Error);
  doc["initial_state"] = json{{"amplitudes", {1.0, 1.0}}};
  cfg = parse_config(doc);
  try {
    build_initial_state(cfg, build_protocol(cfg));
    FAIL("expected NotNormalized");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotNormalized);
  }
}

TEST_CASE("constant kind gives the saturating benchmark") {
  const auto traj = run(parse_config(two_level(1.0)));
  CHECK(traj.duration() == doctest::Approx(kPi));
  CHECK(traj.bures_from_initial.back() == doctest::Approx(kPi / 2).epsilon(1e-9));
  const auto report = build_report(traj);
  CHECK(report.slack_mt == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("piecewise segments") {
  const json doc{{"kind", "piecewise_const"},
                 {"dim", 2},
                 {"duration", 2.0},
                 {"params",
                  {{"segments",
                    {{{"matrix", {{0, 0}, {0, 1}}}, {"duration", 1.0}}, {{"matrix", {{0, 1}, {1, 0}}}, {"duration", 1.0}}}}}}};
  const auto p = build_protocol(parse_config(doc));
  CHECK(p.at(0.5)(1, 1).real() == 1.0);
  CHECK(p.at(1.5)(0, 1).real() == 1.0);
  auto short_doc = doc;
  short_doc["duration"] = 3.0;
  CHECK(config_error(short_doc).find("segments") != std::string::npos);
}

TEST_CASE("rabi without drive reduces to the constant protocol") {
  const json rabi{{"kind", "rabi_qubit"},
                  {"dim", 2},
                  {"duration", 3.0},
                  {"steps", 512},
                  {"params", {{"omega0", 1.4}, {"amplitude", 0.0}, {"drive_frequency", 2.0}}},
                  {"initial_state", {{"amplitudes", {0.6, 0.8}}}}};
  json constant = rabi;
  constant["kind"] = "constant";
  constant["params"] = {{"matrix", {{0.7, 0}, {0, -0.7}}}};
  const auto a = run(parse_config(rabi));
  const auto b = run(parse_config(constant));
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK((a.states[k].amplitudes() - b.states[k].amplitudes()).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(std::abs(a.mean_energy[k] - b.mean_energy[k]) <= 1e-10);
  }
  auto wrong_dim = rabi;
  wrong_dim["dim"] = 3;
  CHECK(config_error(wrong_dim).find("dim") != std::string::npos);
}

TEST_CASE("Landau-Zener sweep") {
  const json doc{{"kind", "landau_zener"}, {"dim", 2}, {"duration", 4.0}, {"params", {{"velocity", 1.0}, {"gap", 1.0}}}};
  const auto p = build_protocol(parse_config(doc));
  CHECK(p.at(2.0)(0, 0).real() == doctest::Approx(0.0));
  CHECK(p.at(0.0)(0, 0).real() == doctest::Approx(-1.0));
  CHECK(p.at(4.0)(0, 0).real() == doctest::Approx(1.0));
  CHECK(p.at(1.0)(0, 1).real() == doctest::Approx(0.5));
}

TEST_CASE("modulated oscillator") {
  json doc{{"kind", "modulated_oscillator"},
           {"dim", 5},
           {"duration", 1.0},
           {"steps", 256},
           {"params", {{"omega0", 1.0}, {"gamma", 0.0}}},
           {"initial_state", {{"amplitudes", {0.0, 1.0, 0.0, 0.0, 0.0}}}}};
  SUBCASE("ladder structure") {
    doc["params"]["squeezing"] = 0.1;
    doc["params"]["gamma"] = 0.5;
    doc["hbar"] = 2.0;
    const auto p = build_protocol(parse_config(doc));
    const Matrix h = p.at(1.0);
    CHECK(h(3, 3).real() == doctest::Approx(2.0 * std::exp(0.5) * 3));
    CHECK(h(0, 2).real() == doctest::Approx(0.1 * std::sqrt(2.0)));
    CHECK(h(2, 4).real() == doctest::Approx(0.1 * std::sqrt(12.0)));
    CHECK(h(0, 1) == Complex(0, 0));
  }
  SUBCASE("mean energy grows with the pump rate") {
    double previous = -1.0;
    for (double gamma : {0.0, 0.5, 1.0, 2.0}) {
      doc["params"]["gamma"] = gamma;
      const double e_avg = time_avg_mean_energy(run(parse_config(doc)));
      CHECK(e_avg > previous);
      if (gamma == 0.0) CHECK(e_avg == doctest::Approx(1.0));
      if (gamma > 0.0) CHECK(e_avg == doctest::Approx((std::exp(gamma) - 1) / gamma).epsilon(1e-5));
      previous = e_avg;
    }
  }
}

TEST_CASE("matrix samples") {
  const json samples = json::array({json{{"t", 0.0}, {"matrix", {{0, 0}, {0, 1}}}},
                                    json{{"t", 2.0}, {"matrix", {{json{{"re", 0}}, 1}, {1, 3}}}}});
  json doc{{"kind", "matrix_samples"}, {"dim", 2}, {"duration", 2.0}, {"params", {{"samples", samples}}}};
  SUBCASE("inline samples interpolate linearly") {
    const auto p = build_protocol(parse_config(doc));
    CHECK(p.at(1.0)(1, 1).real() == doctest::Approx(2.0));
    CHECK(p.at(0.5)(0, 1).real() == doctest::Approx(0.25));
  }
  SUBCASE("from a file next to the config") {
    const auto dir = std::filesystem::temp_directory_path() / "qsl_test_samples";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "h.json") << samples.dump();
    doc["params"] = {{"file", "h.json"}};
    const auto p = build_protocol(parse_config(doc, dir));
    CHECK(p.at(1.0)(1, 1).real() == doctest::Approx(2.0));
    doc["params"] = {{"file", "missing.json"}};
    CHECK_THROWS_AS(parse_config(doc, dir), Error);
  }
  SUBCASE("samples must cover the run and increase") {
    doc["duration"] = 3.0;
    CHECK(config_error(doc).find("cover") != std::string::npos);
    doc["duration"] = 2.0;
    doc["params"]["samples"][1]["t"] = 0.0;
    CHECK(config_error(doc).find("increase") != std::string::npos);
  }
  SUBCASE("non-Hermitian samples") {
    doc["params"]["samples"][1]["matrix"] = {{0, 1}, {0, 3}};
    try {
      parse_config(doc);
      FAIL("expected NotHermitian");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotHermitian);
    }
  }
}

TEST_CASE("scaling time by hbar fixes the state sequence") {
  json doc{{"kind", "rabi_qubit"},
           {"dim", 2},
           {"duration", 2.0},
           {"steps", 256},
           {"scale_time_by_hbar", true},
           {"params", {{"omega0", 1.0}, {"amplitude", 0.7}, {"drive_frequency", 1.3}}},
           {"initial_state", "ground"}};
  const auto reference = run(parse_config(doc));
  doc["hbar"] = 2.5;
  const auto scaled = run(parse_config(doc));
  CHECK(scaled.duration() == doctest::Approx(5.0));
  for (std::size_t k = 0; k < reference.size(); ++k) {
    CHECK(std::abs(reference.bures_from_initial[k] - scaled.bures_from_initial[k]) <= 1e-12);
  }
}

TEST_CASE("dotted override paths") {
  json doc = two_level();
  set_path(doc, "hbar", 2.0);
  CHECK(doc["hbar"] == 2.0);
  doc["params"]["gamma"] = 0.0;
  set_path(doc, "params.gamma", 1.5);
  CHECK(doc["params"]["gamma"] == 1.5);
  CHECK_THROWS_AS(set_path(doc, "nothing.here", 1.0), Error);
  CHECK_THROWS_AS(set_path(doc, "", 1.0), Error);
  CHECK_THROWS_AS(set_path(doc, "kind.sub", 1.0), Error);
}
