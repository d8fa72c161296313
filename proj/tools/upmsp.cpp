#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>

#include "upmsp/upmsp.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
};

// Writes to --out when given, else stdout.
void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw std::runtime_error("cannot write " + g.out);
  f << text;
}

json schedule_json(const upmsp::Schedule& s) {
  json machines = json::array();
  for (const auto& seq : s.sequences) {
    json row = json::array();
    for (int j : seq) row.push_back(j + 1);
    machines.push_back(row);
  }
  return machines;
}

struct GenerateOpts {
  upmsp::GeneratorSpec spec;
  int count = 1;
};

int cmd_generate(const Globals& g, GenerateOpts o) {
  std::vector<upmsp::Instance> made;
  for (int r = 0; r < o.count; ++r) {
    auto spec = o.spec;
    spec.seed = g.seed + static_cast<std::uint64_t>(r);
    made.push_back(upmsp::generate(spec));
  }
  if (g.out.empty()) {
    for (const auto& inst : made) std::cout << upmsp::serialize(inst);
    return 0;
  }
  if (o.count == 1 && fs::path(g.out).has_extension()) {
    upmsp::save_instance(made.front(), g.out);
    return 0;
  }
  fs::create_directories(g.out);
  for (const auto& inst : made) {
    const auto path = fs::path(g.out) / (inst.id + ".upmsp");
    upmsp::save_instance(inst, path.string());
    std::cout << path.string() << '\n';
  }
  return 0;
}

struct SolveOpts {
  std::string instance;
  std::string algorithm = "FA";
  int population = 40;
  long max_evals = 500'000;
  std::optional<double> p_swap, p_revert;
  double budget_factor = 0.7;
  bool dump_schedule = false;
  std::string trace;
};

int cmd_solve(const Globals& g, const SolveOpts& o) {
  const auto inst = upmsp::load_instance(o.instance);
  const auto alg = upmsp::parse_algorithm(o.algorithm);
  if (!alg) throw std::invalid_argument("unknown algorithm " + o.algorithm);

  upmsp::AlgorithmConfig cfg;
  cfg.algorithm = *alg;
  cfg.population = o.population;
  cfg.max_evaluations = o.max_evals;
  cfg.seed = g.seed;
  if (o.p_swap || o.p_revert) {
    const upmsp::SchemeProbabilities d;
    cfg.local_search.probabilities =
        upmsp::SchemeProbabilities::from_swap_revert(o.p_swap.value_or(d.swap), o.p_revert.value_or(d.revert));
  }
  cfg.local_search.budget_factor = o.budget_factor;
  cfg.check();

  const auto res = upmsp::run(inst, cfg);
  const auto lb = upmsp::lower_bounds(inst).lb();

  if (!o.trace.empty()) {
    std::ofstream f(o.trace);
    if (!f) throw std::runtime_error("cannot write " + o.trace);
    f << upmsp::trace_csv(res);
  }

  std::string text;
  if (g.format == "json") {
    json j{{"instance", inst.id},
           {"algorithm", cfg.name()},
           {"seed", cfg.seed},
           {"best_cmax", res.best_fitness},
           {"evals", res.evaluations_used},
           {"lb", lb},
           {"rho_pct", upmsp::rho(static_cast<double>(res.best_fitness), lb)}};
    if (o.dump_schedule) j["schedule"] = schedule_json(res.best_schedule);
    text = j.dump(2) + "\n";
  } else {
    text = "instance_id,algorithm,seed,best_cmax,evals,lb,rho_pct\n";
    text += fmt::format("{},{},{},{},{},{:.4f},{:.4f}\n", inst.id, cfg.name(), cfg.seed, res.best_fitness,
                        res.evaluations_used, lb, upmsp::rho(static_cast<double>(res.best_fitness), lb));
    if (o.dump_schedule) text += upmsp::to_text(res.best_schedule);
  }
  emit(g, text);
  return 0;
}

struct BenchOpts {
  std::string preset = "exp1";
  bool desk = false;
  std::vector<int> machines;
  std::vector<int> jobs;
  int per_class = 1;
  int replications = 15;
  bool wall_time = false;
  std::vector<std::string> instances;
  int workers = 0;
};

int cmd_bench(const Globals& g, const BenchOpts& o) {
  const auto preset = upmsp::parse_preset(o.preset);
  if (!preset) throw std::invalid_argument("unknown preset " + o.preset);

  upmsp::ExperimentSpec spec;
  spec.algorithms = upmsp::preset_algorithms(*preset, o.desk);
  spec.replications = o.replications;
  spec.seed_base = g.seed;
  spec.workers = o.workers;
  if (!o.instances.empty()) {
    for (const auto& p : o.instances) spec.suite.emplace_back(p);
  } else {
    upmsp::SuiteGrid grid;
    if (!o.machines.empty()) grid.machines = o.machines;
    if (!o.jobs.empty()) grid.jobs = o.jobs;
    grid.instances_per_class = o.per_class;
    spec.suite = upmsp::make_suite(grid, g.seed);
  }

  const auto report = upmsp::run_experiment(spec);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';

  const std::string dir = g.out.empty() ? "bench-out" : g.out;
  upmsp::write_report(report, dir, o.wall_time);

  if (g.format == "json") {
    json cells = json::array();
    for (const auto& c : report.cells) {
      json cell{{"instance", c.instance_id}, {"algorithm", c.algorithm}, {"lb", c.lb},
                {"mean", c.stats.mean},      {"best", c.stats.best},       {"worst", c.stats.worst},
                {"median", c.stats.median},  {"std", c.stats.std}};
      cell["rho_pct"] = c.deviation.rho ? json(*c.deviation.rho) : json(nullptr);
      cell["delta_pct"] = c.deviation.delta ? json(*c.deviation.delta) : json(nullptr);
      cells.push_back(cell);
    }
    std::cout << json{{"output", dir}, {"cells", cells}}.dump(2) << '\n';
  } else {
    std::cout << upmsp::aggregate_csv(report);
  }
  return 0;
}

struct ExactOpts {
  std::string instance;
  upmsp::ExactLimits limits;
};

int cmd_exact(const Globals& g, const ExactOpts& o) {
  const auto inst = upmsp::load_instance(o.instance);
  const auto res = upmsp::solve_exact(inst, o.limits);
  std::string text;
  if (g.format == "json") {
    json j{{"instance", inst.id},
           {"optimum", res.optimum},
           {"proven", res.proven},
           {"nodes", res.nodes},
           {"schedule", schedule_json(res.witness)}};
    text = j.dump(2) + "\n";
  } else {
    text = fmt::format("optimum {}\nproven {}\nnodes {}\n", res.optimum, res.proven ? "yes" : "no", res.nodes);
    text += upmsp::to_text(res.witness);
  }
  emit(g, text);
  return 0;
}

int cmd_lb(const Globals& g, const std::string& path) {
  const auto inst = upmsp::load_instance(path);
  const auto b = upmsp::lower_bounds(inst);
  std::string text;
  if (g.format == "json") {
    text = json{{"instance", inst.id}, {"lb1", b.lb1()}, {"lb2", b.lb2}, {"lb", b.lb()}}.dump(2) + "\n";
  } else {
    text = fmt::format("{:.2f} {:.2f} {:.2f}\n", b.lb1(), static_cast<double>(b.lb2), b.lb());
  }
  emit(g, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unrelated parallel machine scheduling with setup times: solver and benchmark harness"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Random seed (bench: seed base)");
  app.add_option("--out", g.out, "Output file, or directory for generate/bench");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  GenerateOpts gen;
  auto* generate = app.add_subcommand("generate", "Generate random instances");
  generate->add_option("-m,--machines", gen.spec.machines, "Machine count");
  generate->add_option("-n,--jobs", gen.spec.jobs, "Job count");
  generate->add_option("--p-low", gen.spec.p_low, "Processing time lower bound");
  generate->add_option("--p-high", gen.spec.p_high, "Processing time upper bound");
  generate->add_option("--s-low", gen.spec.s_low, "Setup time lower bound");
  generate->add_option("--s-high", gen.spec.s_high, "Setup time upper bound");
  generate->add_option("--count", gen.count, "Number of replicas, seeds seed..seed+count-1")
      ->check(CLI::PositiveNumber);

  SolveOpts so;
  auto* solve = app.add_subcommand("solve", "Run one algorithm on one instance");
  solve->add_option("--instance", so.instance, "Instance file")->required()->check(CLI::ExistingFile);
  solve->add_option("-a,--algorithm", so.algorithm, "FA, DE, PSO, ABC, TLBO, IWO, FADE, FAPSO, FAABC, FATLBO, FAIWO");
  solve->add_option("--population", so.population, "Population size");
  solve->add_option("--max-evals", so.max_evals, "Evaluation budget");
  solve->add_option("--ls-pswap", so.p_swap, "Local search swap probability");
  solve->add_option("--ls-prevert", so.p_revert, "Local search revert probability");
  solve->add_option("--ls-budget-factor", so.budget_factor, "Move attempts per scheme, times machine count");
  solve->add_flag("--dump-schedule", so.dump_schedule, "Print the best schedule");
  solve->add_option("--trace", so.trace, "Write the convergence trace CSV here");

  BenchOpts bo;
  auto* bench = app.add_subcommand("bench", "Run an experiment preset and write CSV reports");
  bench->add_option("--preset", bo.preset, "exp1, exp2 or exp3");
  bench->add_flag("--desk", bo.desk, "Divide evaluation budgets by 10");
  bench->add_option("--machines", bo.machines, "Machine counts of the generated suite")->delimiter(',');
  bench->add_option("--jobs", bo.jobs, "Job counts of the generated suite")->delimiter(',');
  bench->add_option("--instances-per-class", bo.per_class, "Generated instances per (m, n) class");
  bench->add_option("--replications", bo.replications, "Runs per cell");
  bench->add_option("--instances", bo.instances, "Instance files instead of a generated suite")
      ->check(CLI::ExistingFile);
  bench->add_option("--workers", bo.workers, "Worker threads, 0 for UPMSP_WORKERS or all CPUs");
  bench->add_flag("--wall-time", bo.wall_time, "Record wall-clock times in results.csv");

  ExactOpts eo;
  auto* exact = app.add_subcommand("exact", "Solve a small instance to optimality");
  exact->add_option("--instance", eo.instance, "Instance file")->required()->check(CLI::ExistingFile);
  exact->add_option("--node-cap", eo.limits.node_cap, "Node limit");
  exact->add_option("--time-cap", eo.limits.time_cap_ms, "Time limit in milliseconds");

  std::string lb_path;
  auto* lb = app.add_subcommand("lb", "Print lower bounds lb1 lb2 lb");
  lb->add_option("--instance", lb_path, "Instance file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) return cmd_generate(g, gen);
    if (*solve) return cmd_solve(g, so);
    if (*bench) return cmd_bench(g, bo);
    if (*exact) return cmd_exact(g, eo);
    if (*lb) return cmd_lb(g, lb_path);
  } catch (const upmsp::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
