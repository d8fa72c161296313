#include "upmsp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "upmsp/bounds.hpp"

namespace upmsp {

double rho(double cmax, double lb) {
  if (!(lb > 0.0)) throw std::domain_error("degenerate bound");
  return (cmax - lb) / lb * 100.0;
}

double delta(double cmax_other, double cmax_fa) {
  if (!(cmax_fa > 0.0)) throw std::domain_error("degenerate control makespan");
  return (cmax_other - cmax_fa) / cmax_fa * 100.0;
}

CellStatistics CellStatistics::from(std::span<const Time> cmax, std::span<const double> wall_ms) {
  if (cmax.empty()) throw std::invalid_argument("cell statistics need at least one sample");
  CellStatistics s;
  std::vector<Time> sorted(cmax.begin(), cmax.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t count = sorted.size();
  const double sum = static_cast<double>(std::accumulate(sorted.begin(), sorted.end(), Time{0}));
  s.mean = sum / static_cast<double>(count);
  s.best = static_cast<double>(sorted.front());
  s.worst = static_cast<double>(sorted.back());
  s.median = count % 2 ? static_cast<double>(sorted[count / 2])
                       : 0.5 * static_cast<double>(sorted[count / 2 - 1] + sorted[count / 2]);
  if (count > 1) {
    double ss = 0.0;
    for (Time v : cmax) ss += (static_cast<double>(v) - s.mean) * (static_cast<double>(v) - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(count - 1));
  }
  if (!wall_ms.empty())
    s.mean_wall_ms = std::accumulate(wall_ms.begin(), wall_ms.end(), 0.0) / static_cast<double>(wall_ms.size());
  return s;
}

void ExperimentSpec::check() const {
  if (replications < 1) throw std::invalid_argument("experiment: replications must be >= 1");
  if (suite.empty()) throw std::invalid_argument("experiment: suite is empty");
  if (algorithms.empty()) throw std::invalid_argument("experiment: no algorithms");
  for (const auto& a : algorithms) a.check();
}

namespace {

Instance materialize(const InstanceSource& source) {
  struct Visitor {
    Instance operator()(const std::string& path) const { return load_instance(path); }
    Instance operator()(const GeneratorSpec& g) const { return generate(g); }
    Instance operator()(const Instance& i) const { return i; }
  };
  Instance inst = std::visit(Visitor{}, source);
  inst.check();
  return inst;
}

int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("UPMSP_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  spec.check();

  struct Loaded {
    Instance instance;
    AdjustedTimes ap;
    double lb;
  };
  std::vector<Loaded> suite;
  for (const auto& source : spec.suite) {
    Instance inst = materialize(source);
    AdjustedTimes ap = adjusted_times(inst);
    const double lb = lower_bounds(ap).lb();
    suite.push_back({std::move(inst), std::move(ap), lb});
  }

  const std::size_t algorithms = spec.algorithms.size();
  const std::size_t reps = static_cast<std::size_t>(spec.replications);
  const std::size_t total = suite.size() * algorithms * reps;

  ExperimentReport report;
  report.runs.resize(total);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      const std::size_t s = idx / (algorithms * reps);
      const std::size_t a = (idx / reps) % algorithms;
      const std::size_t r = idx % reps;
      try {
        AlgorithmConfig config = spec.algorithms[a];
        config.seed = spec.seed_base + r;
        RunRecord& rec = report.runs[idx];
        rec.instance_id = suite[s].instance.id;
        rec.algorithm = config.name();
        rec.replication = static_cast<int>(r);
        rec.seed = config.seed;
        rec.lb = suite[s].lb;
        rec.result = run(suite[s].instance, suite[s].ap, config);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int workers = std::min<int>(worker_count(spec.workers), static_cast<int>(total));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  // Control cell for the deviation from FA: an algorithm labelled "FA", else the first FA entry.
  std::optional<std::size_t> control;
  for (std::size_t a = 0; a < algorithms && !control; ++a)
    if (spec.algorithms[a].name() == "FA") control = a;
  for (std::size_t a = 0; a < algorithms && !control; ++a)
    if (spec.algorithms[a].algorithm == Algorithm::FA) control = a;
  if (!control) report.warnings.push_back("no FA control cell in the experiment; delta omitted");

  for (std::size_t s = 0; s < suite.size(); ++s) {
    std::vector<CellReport> cells;
    for (std::size_t a = 0; a < algorithms; ++a) {
      std::vector<Time> cmax;
      std::vector<double> wall;
      for (std::size_t r = 0; r < reps; ++r) {
        const RunRecord& rec = report.runs[(s * algorithms + a) * reps + r];
        cmax.push_back(rec.result.best_fitness);
        wall.push_back(rec.result.wall_ms);
      }
      CellReport cell;
      cell.instance_id = suite[s].instance.id;
      cell.algorithm = spec.algorithms[a].name();
      cell.lb = suite[s].lb;
      cell.stats = CellStatistics::from(cmax, wall);
      if (cell.lb > 0) cell.deviation.rho = rho(cell.stats.mean, cell.lb);
      cells.push_back(std::move(cell));
    }
    if (control && cells[*control].stats.mean > 0)
      for (auto& cell : cells) cell.deviation.delta = delta(cell.stats.mean, cells[*control].stats.mean);
    for (auto& cell : cells) report.cells.push_back(std::move(cell));
  }
  return report;
}

std::vector<InstanceSource> make_suite(const SuiteGrid& grid, std::uint64_t seed_base) {
  std::vector<InstanceSource> suite;
  std::uint64_t seed = seed_base;
  for (int m : grid.machines)
    for (int n : grid.jobs)
      for (int r = 0; r < grid.instances_per_class; ++r) {
        GeneratorSpec g;
        g.seed = seed++;
        g.machines = m;
        g.jobs = n;
        g.p_low = grid.p_low;
        g.p_high = grid.p_high;
        g.s_low = grid.s_low;
        g.s_high = grid.s_high;
        suite.emplace_back(g);
      }
  return suite;
}

std::vector<AlgorithmConfig> preset_algorithms(Preset preset, bool desk) {
  auto make = [desk](Algorithm a, int population, long max_fe, std::string label = {}) {
    AlgorithmConfig c;
    c.algorithm = a;
    c.population = population;
    c.max_evaluations = desk ? max_fe / 10 : max_fe;
    c.label = std::move(label);
    return c;
  };
  std::vector<AlgorithmConfig> out;
  switch (preset) {
    case Preset::Exp1:
      for (Algorithm a : {Algorithm::FA, Algorithm::DE, Algorithm::PSO, Algorithm::ABC, Algorithm::TLBO, Algorithm::IWO})
        out.push_back(make(a, 40, 500'000));
      break;
    case Preset::Exp2:
      for (int psi : {20, 30, 40}) out.push_back(make(Algorithm::FA, psi, 500'000, fmt::format("FA-psi{}", psi)));
      break;
    case Preset::Exp3:
      for (Algorithm a : {Algorithm::FA, Algorithm::FADE, Algorithm::FAPSO, Algorithm::FAABC, Algorithm::FATLBO,
                          Algorithm::FAIWO})
        out.push_back(make(a, 200, 5'000));
      break;
  }
  return out;
}

std::optional<Preset> parse_preset(std::string_view name) {
  if (name == "exp1") return Preset::Exp1;
  if (name == "exp2") return Preset::Exp2;
  if (name == "exp3") return Preset::Exp3;
  return std::nullopt;
}

}  // namespace upmsp
