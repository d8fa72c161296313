// Acceptance suite. Prints one PASS/FAIL line per criterion.
//
//   acceptance            run every criterion
//   acceptance --only N   run criterion N (traces for 9 are produced on demand)

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "fixtures.hpp"
#include "oracle/brute_force.hpp"
#include "upmsp/upmsp.hpp"

using namespace upmsp;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Shared fixtures ------------------------------------------------------------

struct TinyCase {
  Instance instance;
  ExactResult exact;
  Time brute;
};

// 200 instances, m in {1,2,3}, n in {3..6}, P and S in [1, 9].
const std::vector<TinyCase>& oracle_cases(double* elapsed = nullptr) {
  static std::vector<TinyCase> cases;
  static double seconds = 0;
  if (cases.empty()) {
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < 200; ++i) {
      Instance inst = upmsp::testing::tiny(10'000 + i, 1 + i % 3, 3 + (i / 3) % 4);
      ExactResult exact = solve_exact(inst);
      const Time brute = oracle::brute_force_optimum(inst);
      cases.push_back({std::move(inst), std::move(exact), brute});
    }
    seconds = seconds_since(start);
  }
  if (elapsed) *elapsed = seconds;
  return cases;
}

// Every trace exported by criteria 5-7.
std::vector<std::vector<TracePoint>>& exported_traces() {
  static std::vector<std::vector<TracePoint>> traces;
  return traces;
}

std::vector<InstanceSource> balanced_suite() {
  std::vector<InstanceSource> suite;
  for (std::uint64_t s = 1; s <= 15; ++s) {
    GeneratorSpec g;
    g.seed = s;
    g.machines = 2;
    g.jobs = 20;  // P and S uniform on [50, 100]
    suite.emplace_back(g);
  }
  return suite;
}

// Criteria -------------------------------------------------------------------

Outcome oracle_equivalence() {
  double elapsed = 0;
  const auto& cases = oracle_cases(&elapsed);
  int agree = 0, proven = 0;
  for (const auto& c : cases) {
    proven += c.exact.proven;
    agree += c.exact.proven && c.exact.optimum == c.brute &&
             oracle::pairwise_makespan(c.exact.witness, c.instance) == c.exact.optimum;
  }
  const bool pass = agree == 200 && elapsed < 120.0;
  return {pass, fmt::format("{}/200 agree ({} proven), {:.2f}s (limit 120s)", agree, proven, elapsed)};
}

Outcome lower_bound_sandwich() {
  int ok = 0;
  double tightest = 1e9;
  for (const auto& c : oracle_cases()) {
    const double lb = lower_bounds(c.instance).lb();
    ok += lb <= static_cast<double>(c.brute);
    tightest = std::min(tightest, static_cast<double>(c.brute) - lb);
  }
  return {ok == 200, fmt::format("{}/200 with lb <= optimum (smallest gap {:.2f})", ok, tightest)};
}

Outcome metric_arithmetic() {
  const double r = rho(1189.60, 1185.83);
  const double d = delta(1204.8667, 1189.60);
  const bool pass = std::abs(r - 0.318) <= 0.001 && std::abs(d - 1.283) <= 0.001;
  return {pass, fmt::format("rho = {:.4f}% (want 0.318 +- 0.001), delta = {:.4f}% (want 1.283 +- 0.001)", r, d)};
}

Outcome local_search_contract() {
  long increases = 0, violations = 0, calls = 0, improved = 0;
  Rng rng(4242);
  LocalSearchConfig config;
  for (int i = 0; i < 50; ++i) {
    const int m = 1 + i % 6, n = 5 + (i * 7) % 26;
    const Instance inst = upmsp::testing::tiny(20'000 + i, m, n, 1, 100);
    const auto ap = adjusted_times(inst);
    std::uniform_real_distribution<double> key(0.0, m);
    for (int t = 0; t < 200; ++t) {
      KeyVector keys(n);
      for (int j = 0; j < n; ++j) keys(j) = key(rng);
      Schedule s = decode(keys, inst);
      const Time before = makespan(s, ap);
      const Time after = improve_in_place(s, before, config, rng, [&](const Schedule& c) -> std::optional<Time> {
        if (!is_valid(c, inst)) ++violations;
        return makespan(c, ap);
      });
      ++calls;
      if (!is_valid(s, inst)) ++violations;
      if (after > before || makespan(s, ap) != after) ++increases;
      improved += after < before;
    }
  }
  return {calls == 10'000 && increases == 0 && violations == 0,
          fmt::format("{} calls, {} increases, {} validity violations ({} improved)", calls, increases, violations,
                      improved)};
}

Outcome tiny_optimality() {
  const auto start = std::chrono::steady_clock::now();
  AlgorithmConfig config;
  config.population = 10;
  config.max_evaluations = 5000;
  config.seed = 1;

  const RunResult t1 = run(upmsp::testing::t1(), config);
  exported_traces().push_back(t1.trace);

  int hits = 0;
  for (int i = 0; i < 100; ++i) {
    const Instance inst = upmsp::testing::tiny(30'000 + i, 2, 3 + i % 4);
    const ExactResult exact = solve_exact(inst);
    config.seed = static_cast<std::uint64_t>(i);
    const RunResult r = run(inst, config);
    exported_traces().push_back(r.trace);
    hits += exact.proven && r.best_fitness == exact.optimum;
  }
  const double elapsed = seconds_since(start);
  const bool pass = t1.best_fitness == 10 && hits >= 95 && elapsed < 60.0;
  return {pass, fmt::format("T1 best {} (optimum 10); {}/100 optimal (need 95); {:.2f}s (limit 60s)", t1.best_fitness,
                            hits, elapsed)};
}

Outcome desk_quality() {
  const auto start = std::chrono::steady_clock::now();
  ExperimentSpec spec;
  spec.suite = balanced_suite();
  AlgorithmConfig fa;
  fa.population = 40;
  fa.max_evaluations = 100'000;
  spec.algorithms = {fa};
  spec.replications = 1;
  spec.seed_base = 1;
  const ExperimentReport report = run_experiment(spec);

  double rho_sum = 0;
  int improved = 0;
  for (const auto& run : report.runs) {
    exported_traces().push_back(run.result.trace);
    rho_sum += rho(static_cast<double>(run.result.best_fitness), run.lb);
    improved += run.result.best_fitness < run.result.initial_best;
  }
  const double mean_rho = rho_sum / static_cast<double>(report.runs.size());
  const double elapsed = seconds_since(start);
  const bool pass = mean_rho <= 3.0 && improved == 15 && elapsed < 300.0;
  return {pass, fmt::format("mean rho {:.3f}% (limit 3%), improved on initial best in {}/15 runs, {:.1f}s (limit 300s)",
                            mean_rho, improved, elapsed)};
}

Outcome hybrid_ordering() {
  ExperimentSpec spec;
  spec.suite = balanced_suite();
  for (Algorithm a : {Algorithm::FA, Algorithm::FAIWO}) {
    AlgorithmConfig c;
    c.algorithm = a;
    c.population = 50;
    c.max_evaluations = 20'000;
    spec.algorithms.push_back(c);
  }
  spec.replications = 1;
  spec.seed_base = 1;
  const ExperimentReport report = run_experiment(spec);
  double fa = 0, faiwo = 0;
  for (const auto& run : report.runs) {
    exported_traces().push_back(run.result.trace);
    (run.algorithm == "FA" ? fa : faiwo) += static_cast<double>(run.result.best_fitness) / 15.0;
  }
  const bool met = faiwo <= fa * 1.005;
  // A miss is reported, not failed.
  return {true, fmt::format("{}: FAIWO mean {:.2f} vs FA mean {:.2f} (threshold {:.2f})",
                            met ? "ordering reproduced" : "SOFT MISS", faiwo, fa, fa * 1.005)};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  ExperimentSpec spec;
  spec.suite = balanced_suite();
  spec.suite.resize(3);
  spec.suite.emplace_back(upmsp::testing::t1());
  for (Algorithm a : kAllAlgorithms) {
    AlgorithmConfig c;
    c.algorithm = a;
    c.population = 10;
    c.max_evaluations = 2000;
    spec.algorithms.push_back(c);
  }
  spec.replications = 2;
  const fs::path base = fs::temp_directory_path() / "upmsp_acceptance_determinism";
  fs::remove_all(base);
  spec.workers = 1;
  write_report(run_experiment(spec), (base / "first").string());
  spec.workers = 4;
  write_report(run_experiment(spec), (base / "second").string());

  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  int compared = 0, differing = 0;
  for (const auto& entry : fs::recursive_directory_iterator(base / "first")) {
    if (!entry.is_regular_file() || entry.path().extension() != ".csv") continue;
    ++compared;
    differing += slurp(entry.path()) != slurp(base / "second" / fs::relative(entry.path(), base / "first"));
  }
  fs::remove_all(base);
  const int expected = 2 + 4 * 11 * 2;
  return {compared == expected && differing == 0,
          fmt::format("{} CSV files compared (expected {}), {} differ", compared, expected, differing)};
}

Outcome trace_monotonicity() {
  if (exported_traces().empty()) {
    tiny_optimality();
    desk_quality();
    hybrid_ordering();
  }
  int bad = 0;
  for (const auto& t : exported_traces())
    for (std::size_t i = 1; i < t.size(); ++i)
      if (t[i].best > t[i - 1].best) {
        ++bad;
        break;
      }
  return {bad == 0, fmt::format("{} traces, {} with an increase", exported_traces().size(), bad)};
}

Outcome decode_fuzz() {
  Rng rng(99);
  long ok = 0, failures = 0;
  constexpr long total = 1'000'000;
  std::vector<Instance> instances;
  for (int i = 0; i < 40; ++i) instances.push_back(upmsp::testing::tiny(40'000 + i, 1 + i % 12, 1 + (i * 5) % 40));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (long t = 0; t < total; ++t) {
    const Instance& inst = instances[t % instances.size()];
    KeyVector keys(inst.jobs);
    // Mix in-range keys with out-of-range positions repaired by reflection.
    const double span = (t % 3 == 0) ? 3.0 * inst.machines : static_cast<double>(inst.machines);
    for (int j = 0; j < inst.jobs; ++j) keys(j) = (t % 3 == 0 ? -span : 0.0) + unit(rng) * (t % 3 == 0 ? 2 * span : span);
    try {
      reflect_into_range(keys, inst.machines);
      ok += is_valid(decode(keys, inst), inst);
    } catch (...) {
      ++failures;
    }
  }
  return {ok == total && failures == 0, fmt::format("{}/{} valid, {} exceptions", ok, total, failures)};
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*check)();
};

const Criterion kCriteria[] = {
    {1, "oracle equivalence", oracle_equivalence},
    {2, "lower-bound sandwich", lower_bound_sandwich},
    {3, "metric arithmetic", metric_arithmetic},
    {4, "local-search contract", local_search_contract},
    {5, "tiny-instance optimality", tiny_optimality},
    {6, "desk-scale quality", desk_quality},
    {7, "hybrid ordering (soft)", hybrid_ordering},
    {8, "determinism", determinism},
    {9, "convergence monotonicity", trace_monotonicity},
    {10, "decode totality fuzz", decode_fuzz},
};

}  // namespace

int main(int argc, char** argv) {
  std::optional<int> only;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);

  int failed = 0;
  for (const auto& c : kCriteria) {
    if (only && *only != c.id) continue;
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] criterion %d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
