#ifndef UPMSP_ENGINE_HPP
#define UPMSP_ENGINE_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "upmsp/instance.hpp"
#include "upmsp/neighborhood.hpp"
#include "upmsp/schedule.hpp"

namespace upmsp {

enum class Algorithm { FA, DE, PSO, ABC, TLBO, IWO, FADE, FAPSO, FAABC, FATLBO, FAIWO };
enum class PartnerKind { DE, PSO, ABC, TLBO, IWO };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::FA,    Algorithm::DE,     Algorithm::PSO,   Algorithm::ABC,
                                               Algorithm::TLBO,  Algorithm::IWO,    Algorithm::FADE,  Algorithm::FAPSO,
                                               Algorithm::FAABC, Algorithm::FATLBO, Algorithm::FAIWO};

std::string_view to_string(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(std::string_view name);
bool uses_firefly(Algorithm algorithm);
std::optional<PartnerKind> partner_of(Algorithm algorithm);

struct FireflyParams {
  double gamma = 1.0;   // light absorption
  double beta0 = 2.0;   // attractiveness at r = 0
  double alpha = 0.2;   // random-walk scale
  double alpha_decay = 0.97;
  double alpha_floor = 0.01;
};

struct DeParams {
  double f = 0.5;
  double cr = 0.9;
};

struct PsoParams {
  double inertia = 0.729;
  double cognitive = 1.49445;
  double social = 1.49445;
  double velocity_clamp = 0.5;  // times machine count
};

struct AbcParams {
  long limit = 0;  // 0 means population * jobs
};

struct IwoParams {
  int min_seeds = 1;
  int max_seeds = 5;
  double sigma_initial = 0.5;  // times machine count
  double sigma_final = 0.01;
  double modulation = 3.0;
};

struct PartnerParams {
  DeParams de;
  PsoParams pso;
  AbcParams abc;
  IwoParams iwo;
};

struct AlgorithmConfig {
  Algorithm algorithm = Algorithm::FA;
  std::string label;  // report name; empty means the algorithm name
  int population = 40;
  long max_evaluations = 500'000;
  FireflyParams fa;
  PartnerParams partner;
  LocalSearchConfig local_search;
  /// Uniform mutation rate: local-search calls on the best individual per generation.
  int ls_invocations = 2;
  std::uint64_t seed = 0;

  std::string name() const { return label.empty() ? std::string(to_string(algorithm)) : label; }
  void check() const;
};

struct Individual {
  KeyVector position;
  Schedule schedule;
  Time fitness = 0;

  /// Monotone decreasing in fitness; only the ordering is ever used.
  double intensity() const { return 1.0 / (1.0 + static_cast<double>(fitness)); }
};

using Population = std::vector<Individual>;

struct TracePoint {
  long evaluations;
  Time best;

  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct RunResult {
  Time best_fitness = 0;
  Schedule best_schedule;
  std::vector<TracePoint> trace;
  long evaluations_used = 0;
  double wall_ms = 0.0;
  Time initial_best = 0;  // best makespan of the initial population
};

/// Evaluation budget, best-so-far bookkeeping and the random stream of one run.
class SearchContext {
 public:
  SearchContext(const Instance& instance, const AdjustedTimes& ap, long max_evaluations, std::uint64_t seed);

  const Instance& instance() const { return instance_; }
  const AdjustedTimes& ap() const { return ap_; }
  Rng& rng() { return rng_; }

  long used() const { return used_; }
  long budget() const { return budget_; }
  bool exhausted() const { return used_ >= budget_; }
  double progress() const { return static_cast<double>(used_) / static_cast<double>(budget_); }

  /// Counts one fitness evaluation. nullopt when the budget is spent.
  std::optional<Time> evaluate(const Schedule& schedule);

  /// Reflects, decodes and evaluates `position` into `target`. Leaves
  /// `target` untouched and returns false when the budget is spent.
  bool assign(Individual& target, KeyVector position);

  Time best() const { return best_; }
  const Schedule& best_schedule() const { return best_schedule_; }
  const std::vector<TracePoint>& trace() const { return trace_; }

  /// Appends the closing (used, best) point when it is not already there.
  void close_trace();

 private:
  const Instance& instance_;
  const AdjustedTimes& ap_;
  Rng rng_;
  long budget_;
  long used_ = 0;
  Time best_ = std::numeric_limits<Time>::max();
  Schedule best_schedule_;
  std::vector<TracePoint> trace_;
};

/// Uniform keys on [0, m)^n, decoded and evaluated. Consumes `size` evaluations.
Population init_population(SearchContext& ctx, int size);

/// beta0 * exp(-gamma * r^2).
template <typename Scalar>
Scalar attractiveness(Scalar r, Scalar gamma, Scalar beta0) {
  return beta0 * std::exp(-gamma * r * r);
}

std::size_t best_index(const Population& population);

/// Passes the best individual through the local search `times` times and
/// re-encodes its position from the improved schedule.
void improve_best(Population& population, SearchContext& ctx, const LocalSearchConfig& config, int times);

/// One firefly generation: every individual moves towards each one at least as bright (ties move),
/// alpha decays, the best is improved by local search. `alpha` is updated.
void fa_generation(Population& population, SearchContext& ctx, const FireflyParams& params, double& alpha,
                   const LocalSearchConfig& local_search, int ls_invocations);

/// Memory carried between partner sweeps (velocities, personal bests, trial counters).
struct PartnerState {
  std::vector<KeyVector> velocity;
  std::vector<KeyVector> personal_best;
  std::vector<Time> personal_best_fitness;
  std::vector<long> trials;
};

/// One canonical sweep of the partner method over the shared population.
void partner_update(Population& population, PartnerKind kind, const PartnerParams& params, PartnerState& state,
                    SearchContext& ctx);

RunResult run(const Instance& instance, const AlgorithmConfig& config);
RunResult run(const Instance& instance, const AdjustedTimes& ap, const AlgorithmConfig& config);

}  // namespace upmsp

#endif  // UPMSP_ENGINE_HPP
