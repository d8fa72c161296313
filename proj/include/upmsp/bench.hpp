#ifndef UPMSP_BENCH_HPP
#define UPMSP_BENCH_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "upmsp/engine.hpp"
#include "upmsp/instance.hpp"

namespace upmsp {

/// Percent excess of `cmax` over the lower bound. Throws std::domain_error
/// ("degenerate bound") when lb <= 0.
double rho(double cmax, double lb);

/// Percent difference from the FA control; positive means larger makespan.
double delta(double cmax_other, double cmax_fa);

struct CellStatistics {
  double mean = 0;
  double best = 0;
  double worst = 0;
  double median = 0;
  double std = 0;  // sample standard deviation, 0 for a single run
  double mean_wall_ms = 0;

  static CellStatistics from(std::span<const Time> cmax, std::span<const double> wall_ms = {});
};

struct DeviationReport {
  std::optional<double> rho;
  std::optional<double> delta;
};

/// A suite entry: an instance file, a generator spec, or an instance in memory.
using InstanceSource = std::variant<std::string, GeneratorSpec, Instance>;

struct ExperimentSpec {
  std::vector<InstanceSource> suite;
  std::vector<AlgorithmConfig> algorithms;  // seeds are overwritten per replication
  int replications = 15;
  std::uint64_t seed_base = 1;
  int workers = 0;  // 0: UPMSP_WORKERS, else logical CPUs

  void check() const;
};

struct RunRecord {
  std::string instance_id;
  std::string algorithm;
  int replication = 0;
  std::uint64_t seed = 0;
  double lb = 0;
  RunResult result;
};

struct CellReport {
  std::string instance_id;
  std::string algorithm;
  double lb = 0;
  CellStatistics stats;
  DeviationReport deviation;
};

struct ExperimentReport {
  std::vector<RunRecord> runs;    // instance-major, then algorithm, then replication
  std::vector<CellReport> cells;  // instance-major, then algorithm
  std::vector<std::string> warnings;
};

/// Runs every (instance, algorithm, replication) with seed seed_base + r.
/// Deterministic for a given ExperimentSpec regardless of worker count.
ExperimentReport run_experiment(const ExperimentSpec& spec);

enum class Preset { Exp1, Exp2, Exp3 };

struct SuiteGrid {
  std::vector<int> machines{2, 4, 6, 8, 10, 12};
  std::vector<int> jobs{20, 40, 60, 80, 100, 120};
  int instances_per_class = 1;
  Time p_low = 50, p_high = 100, s_low = 50, s_high = 100;
};

std::vector<InstanceSource> make_suite(const SuiteGrid& grid, std::uint64_t seed_base);

/// Algorithm set and budgets of the three experiments. `desk` divides maxFE by 10.
std::vector<AlgorithmConfig> preset_algorithms(Preset preset, bool desk);
std::optional<Preset> parse_preset(std::string_view name);

// Output files. Wall-clock columns are written as 0 unless `wall_time` is set,
// so repeated runs produce byte-identical files.
std::string results_csv(const ExperimentReport& report, bool wall_time = false);
std::string aggregate_csv(const ExperimentReport& report);
std::string trace_csv(const RunResult& result);
std::string convergence_svg(const ExperimentReport& report, const std::string& instance_id);
std::string trace_file_name(const RunRecord& record);

/// Writes results.csv, aggregate.csv, traces/*.csv and charts/*.svg under `dir`.
void write_report(const ExperimentReport& report, const std::string& dir, bool wall_time = false);

}  // namespace upmsp

#endif  // UPMSP_BENCH_HPP
