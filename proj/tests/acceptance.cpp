// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "qsl/app.hpp"
#include "qsl/bounds.hpp"
#include "qsl/geometry.hpp"
#include "qsl/qdyn.hpp"
#include "qsl/random.hpp"
#include "qsl/verify.hpp"

using namespace qsl;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kCorpusSize = 500;
constexpr std::size_t kCorpusSteps = 2048;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Tally {
  int failed = 0;
  void line(int id, bool ok, const std::string& what, const std::string& detail) {
    if (!ok) ++failed;
    fmt::print("[{}] {}. {}: {}\n", ok ? "PASS" : "FAIL", id, what, detail);
    std::fflush(stdout);
  }
};

std::filesystem::path config_path(const char* name) { return std::filesystem::path(QSL_CONFIG_DIR) / name; }

struct CorpusCase {
  std::uint64_t seed = 0;
  bool pure = false;
  Eigen::Index dim = 0;
  QSLReport report;
  AuditReport audit;
};

CorpusCase run_case(std::uint64_t seed) {
  const RandomRun run = random_run(seed);
  const Trajectory traj = propagate(ground_shift(run.protocol), run.initial, kCorpusSteps);
  return {seed, run.initial.is_pure(), run.initial.dim(), build_report(traj), audit_trajectory(traj, 1e-6)};
}

std::vector<CorpusCase> run_corpus() {
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::future<std::vector<CorpusCase>>> jobs;
  for (unsigned w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [w, workers] {
      std::vector<CorpusCase> part;
      for (std::uint64_t s = w; s < kCorpusSize; s += workers) part.push_back(run_case(s));
      return part;
    }));
  }
  std::vector<CorpusCase> all;
  for (auto& j : jobs) {
    auto part = j.get();
    all.insert(all.end(), part.begin(), part.end());
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.seed < b.seed; });
  return all;
}

nlohmann::json load(const char* name) { return read_json_file(config_path(name)); }

void saturation_benchmark(Tally& tally) {
  const auto start = Clock::now();
  const RunResult r = run_pipeline(parse_config(load("saturation.json")));
  const double elapsed = seconds_since(start);
  const QSLReport& q = r.qsl;
  const double l_err = std::abs(q.bures - kPi / 2);
  const double mt_err = std::abs(q.tau_mt - q.tau) / q.tau;
  const double ml_err = std::abs(q.tau_ml_lin - q.tau) / q.tau;
  const bool ok = l_err <= 1e-6 && mt_err <= 1e-4 && ml_err <= 1e-4 && elapsed < 1.0;
  tally.line(1, ok, "saturation benchmark",
             fmt::format("|L - pi/2| = {:.2e}, tau_mt rel err {:.2e}, tau_ml_lin rel err {:.2e}, {:.3f} s", l_err,
                         mt_err, ml_err, elapsed));
}

void theorem_suite(Tally& tally, const std::vector<CorpusCase>& corpus, double elapsed) {
  int mt = 0, quad = 0, lin_pure = 0, lin_mixed = 0, pure = 0;
  std::uint64_t first_lin = 0;
  double worst_lin = std::numeric_limits<double>::infinity();
  for (const auto& c : corpus) {
    if (!c.report.mt_holds()) ++mt;
    if (!c.report.ml_quad_holds()) ++quad;
    if (c.pure) {
      ++pure;
      if (!c.report.ml_lin_holds()) {
        if (lin_pure == 0) first_lin = c.seed;
        ++lin_pure;
      }
      worst_lin = std::min(worst_lin, c.report.slack_ml_lin);
    } else if (!c.report.ml_lin_holds()) {
      ++lin_mixed;
    }
  }
  const bool ok = mt == 0 && quad == 0 && lin_pure == 0 && elapsed < 120.0;
  tally.line(2, ok, "theorem property suite",
             fmt::format("{} runs ({} pure): MT violations {}, quadratic ML violations {}, linear ML violations on "
                         "pure runs {} (first seed {}, smallest slack {:.4f}); mixed runs, recorded only: {}; "
                         "{:.1f} s",
                         corpus.size(), pure, mt, quad, lin_pure, lin_pure ? std::to_string(first_lin) : "-",
                         worst_lin, lin_mixed, elapsed));
}

void audit_suite(Tally& tally, const std::vector<CorpusCase>& corpus) {
  std::map<std::string, int> failures;
  std::map<std::string, double> worst;
  int equality_misses = 0;
  double worst_equality = 0.0;
  for (const auto& c : corpus) {
    for (const auto& check : c.audit.checks) {
      if (!failures.count(check.name)) {
        failures[check.name] = 0;
        worst[check.name] = check.worst_margin;
      }
      if (!check.passed) ++failures[check.name];
      worst[check.name] = std::min(worst[check.name], check.worst_margin);
    }
    if (c.pure) {
      const CheckResult* v = c.audit.find("velocity_variance");
      const double gap = std::max(std::abs(v->max_margin), std::abs(v->worst_margin));
      worst_equality = std::max(worst_equality, gap);
      if (gap > 1e-3) ++equality_misses;
    }
  }
  bool ok = equality_misses == 0;
  std::string detail;
  for (const char* name : {"velocity_variance", "overlap_derivative", "sin_velocity", "phase_mean_energy",
                           "mt_integrated", "ml_integrated", "overlap_cosine"}) {
    const int n = failures.count(name) ? failures[name] : -1;
    if (n != 0) ok = false;
    detail += fmt::format("{} {} (worst {:.2e}); ", name, n, worst.count(name) ? worst[name] : 0.0);
  }
  detail += fmt::format("velocity equality on pure runs: largest gap {:.2e}, misses {}", worst_equality,
                        equality_misses);
  tally.line(3, ok, "pointwise audit suite", "violating runs per check: " + detail);
}

void bures_consistency(Tally& tally) {
  // Pooled relative error of the metric increment against the squared
  // fidelity-based length, at three step sizes.
  const std::vector<double> steps{0.04, 0.02, 0.01};
  std::vector<double> pooled(steps.size(), 0.0);
  RandomRunOptions opts;
  opts.min_dim = opts.max_dim = 2;
  opts.mixed_fraction = 1.0;
  const std::size_t grid = 4096;
  int used = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const RandomRun run = random_run(10'000 + seed, opts);
    const Trajectory traj = propagate(run.protocol, run.initial, grid);
    const std::size_t k = grid / 4;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const auto m = static_cast<std::size_t>(std::lround(steps[i] / traj.dt()));
      const QuantumState& a = traj.states[k];
      const QuantumState& b = traj.states[k + m];
      const double l = bures_length(a, b);
      const double inc = bures_increment(a, b.density() - a.density()).value;
      pooled[i] += std::abs(inc - l * l) / (l * l);
    }
    ++used;
  }
  const double order1 = std::log2(pooled[0] / pooled[1]);
  const double order2 = std::log2(pooled[1] / pooled[2]);
  const bool ok = order1 >= 1.8 && order2 >= 1.8;
  tally.line(4, ok, "Bures metric consistency",
             fmt::format("{} qubit trajectories, mean relative error {:.2e} / {:.2e} / {:.2e} at dt = "
                         "0.04 / 0.02 / 0.01, observed orders {:.3f}, {:.3f}",
                         used, pooled[0] / used, pooled[1] / used, pooled[2] / used, order1, order2));
}

void fisher_demo_check(Tally& tally) {
  double worst_j = 0.0;
  double worst_paths = 0.0;
  for (double sigma : {0.5, 1.0, 2.0}) {
    for (const auto& row : fisher_demo(sigma)) {
      worst_j = std::max(worst_j, std::abs(row.fisher * sigma * sigma - 1.0));
      worst_paths = std::max(worst_paths, std::abs(row.velocity_sq - row.fisher) / row.fisher);
    }
  }
  const bool ok = worst_j <= 1e-3 && worst_paths <= 1e-2;
  tally.line(5, ok, "Fisher demo",
             fmt::format("sigma in {{0.5, 1, 2}}: max |J sigma^2 - 1| = {:.2e}, max path disagreement {:.2e}",
                         worst_j, worst_paths));
}

void ordering_and_prefactor(Tally& tally, const std::vector<CorpusCase>& corpus) {
  int order_violations = 0;
  for (const auto& c : corpus) {
    if (!(c.report.tau_ml_quad <= c.report.tau_ml_lin + 1e-12)) ++order_violations;
  }
  double interior_min = std::numeric_limits<double>::infinity();
  int interior_zeros = 0;
  const double step = 1e-4;
  const auto n = static_cast<std::size_t>(std::floor((kPi / 2) / step));
  for (std::size_t i = 1; i <= n; ++i) {
    const double x = step * static_cast<double>(i);
    if (x >= kPi / 2) break;
    const double v = check_trig_bound(x);
    interior_min = std::min(interior_min, v);
    if (v <= 0.0) ++interior_zeros;
  }
  const double at_zero = check_trig_bound(0.0);
  const double at_end = check_trig_bound(kPi / 2);
  const bool ok =
      order_violations == 0 && interior_zeros == 0 && std::abs(at_zero) <= 1e-15 && std::abs(at_end) <= 1e-15;
  tally.line(6, ok, "ordering and prefactor",
             fmt::format("quadratic > linear on {} of {} runs; trig scan interior min {:.3e} ({} non-positive), "
                         "endpoints {:.1e}, {:.1e}",
                         order_violations, corpus.size(), interior_min, interior_zeros, at_zero, at_end));
}

void driving_dependence(Tally& tally) {
  const std::vector<double> gammas{0.0, 0.5, 1.0, 2.0};
  const SweepOutcome out = run_sweep(load("oscillator.json"), QSL_CONFIG_DIR, {"params.gamma", gammas});
  bool ok = out.failures.empty() && out.rows.size() == gammas.size();
  const double l_ref = kPi / 4;
  std::string energies, bounds;
  for (std::size_t i = 0; ok && i < out.rows.size(); ++i) {
    const QSLReport& q = out.rows[i].qsl;
    const double bound = tau_ml_linear(l_ref, q.e_avg, q.hbar);
    energies += fmt::format("{}{:.6g}", i ? ", " : "", q.e_avg);
    bounds += fmt::format("{}{:.6g}", i ? ", " : "", bound);
    if (i > 0) {
      const QSLReport& p = out.rows[i - 1].qsl;
      if (!(q.e_avg > p.e_avg)) ok = false;
      if (bound > tau_ml_linear(l_ref, p.e_avg, p.hbar)) ok = false;
    }
  }
  tally.line(7, ok, "driving dependence",
             fmt::format("gamma = 0, 0.5, 1, 2: E_tau = [{}], tau_ml_lin at L = pi/4 = [{}]", energies, bounds));
}

void hbar_scaling(Tally& tally) {
  const std::vector<double> hbars{0.5, 1.0, 2.0};
  const SweepOutcome out = run_sweep(load("rabi.json"), QSL_CONFIG_DIR, {"hbar", hbars});
  bool ok = out.failures.empty() && out.rows.size() == hbars.size();
  double worst = 0.0;
  if (ok) {
    const QSLReport& ref = out.rows[1].qsl;
    for (const auto& row : out.rows) {
      const double h = row.qsl.hbar;
      for (auto [value, reference] : {std::pair{row.qsl.tau_mt, ref.tau_mt}, {row.qsl.tau_ml_quad, ref.tau_ml_quad},
                                      {row.qsl.tau_ml_lin, ref.tau_ml_lin}, {row.qsl.tau_qsl, ref.tau_qsl}}) {
        worst = std::max(worst, std::abs(value / (h * reference) - 1.0));
      }
    }
  }
  ok = ok && worst <= 1e-9;
  tally.line(8, ok, "hbar scaling", fmt::format("hbar = 0.5, 1, 2: max |bound / (hbar bound_1) - 1| = {:.2e}", worst));
}

void determinism(Tally& tally) {
  const auto dir = std::filesystem::temp_directory_path() / "qsl_acceptance";
  std::filesystem::create_directories(dir);
  std::ostringstream sink;
  std::vector<std::string> outputs;
  bool ok = true;
  for (int i = 0; i < 3; ++i) {
    const auto path = dir / fmt::format("run{}.json", i);
    ok = ok && run_command(config_path("saturation.json"), path, false, sink, sink) == kExitOk;
    std::ifstream in(path, std::ios::binary);
    outputs.emplace_back(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  ok = ok && !outputs[0].empty() && outputs[0] == outputs[1] && outputs[1] == outputs[2];
  tally.line(9, ok, "determinism",
             fmt::format("3 timing-free runs of the saturation benchmark, {} bytes, identical: {}", outputs[0].size(),
                         ok ? "yes" : "no"));
}

}  // namespace

int main() {
  Tally tally;
  saturation_benchmark(tally);

  const auto start = Clock::now();
  const std::vector<CorpusCase> corpus = run_corpus();
  const double corpus_seconds = seconds_since(start);
  theorem_suite(tally, corpus, corpus_seconds);
  audit_suite(tally, corpus);
  bures_consistency(tally);
  fisher_demo_check(tally);
  ordering_and_prefactor(tally, corpus);
  driving_dependence(tally);
  hbar_scaling(tally);
  determinism(tally);

  fmt::print("{} of 9 criteria passed\n", 9 - tally.failed);
  return tally.failed == 0 ? 0 : 1;
}
