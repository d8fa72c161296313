#include "upmsp/engine.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace upmsp {

namespace {

struct AlgorithmName {
  Algorithm algorithm;
  std::string_view name;
};

constexpr AlgorithmName kNames[] = {
    {Algorithm::FA, "FA"},       {Algorithm::DE, "DE"},         {Algorithm::PSO, "PSO"},
    {Algorithm::ABC, "ABC"},     {Algorithm::TLBO, "TLBO"},     {Algorithm::IWO, "IWO"},
    {Algorithm::FADE, "FADE"},   {Algorithm::FAPSO, "FAPSO"},   {Algorithm::FAABC, "FAABC"},
    {Algorithm::FATLBO, "FATLBO"}, {Algorithm::FAIWO, "FAIWO"},
};

}  // namespace

std::string_view to_string(Algorithm algorithm) {
  for (const auto& entry : kNames)
    if (entry.algorithm == algorithm) return entry.name;
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (const auto& entry : kNames)
    if (entry.name == name) return entry.algorithm;
  return std::nullopt;
}

bool uses_firefly(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::FA:
    case Algorithm::FADE:
    case Algorithm::FAPSO:
    case Algorithm::FAABC:
    case Algorithm::FATLBO:
    case Algorithm::FAIWO:
      return true;
    default:
      return false;
  }
}

std::optional<PartnerKind> partner_of(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::DE:
    case Algorithm::FADE:
      return PartnerKind::DE;
    case Algorithm::PSO:
    case Algorithm::FAPSO:
      return PartnerKind::PSO;
    case Algorithm::ABC:
    case Algorithm::FAABC:
      return PartnerKind::ABC;
    case Algorithm::TLBO:
    case Algorithm::FATLBO:
      return PartnerKind::TLBO;
    case Algorithm::IWO:
    case Algorithm::FAIWO:
      return PartnerKind::IWO;
    case Algorithm::FA:
      break;
  }
  return std::nullopt;
}

void AlgorithmConfig::check() const {
  if (population < 2) throw std::invalid_argument("population must be >= 2");
  if (max_evaluations < population) throw std::invalid_argument("max evaluations must be >= population");
  if (!(fa.gamma > 0.0) || !(fa.beta0 > 0.0)) throw std::invalid_argument("gamma and beta0 must be positive");
  if (!(fa.alpha >= 0.0 && fa.alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
  if (!(fa.alpha_decay > 0.0 && fa.alpha_decay <= 1.0)) throw std::invalid_argument("alpha decay must lie in (0, 1]");
  if (ls_invocations < 0) throw std::invalid_argument("local-search invocations must be >= 0");
  local_search.check();
}

SearchContext::SearchContext(const Instance& instance, const AdjustedTimes& ap, long max_evaluations,
                             std::uint64_t seed)
    : instance_(instance), ap_(ap), rng_(seed), budget_(max_evaluations) {}

std::optional<Time> SearchContext::evaluate(const Schedule& schedule) {
  if (exhausted()) return std::nullopt;
  ++used_;
  const Time value = makespan(schedule, ap_);
  if (value < best_) {
    best_ = value;
    best_schedule_ = schedule;
    trace_.push_back({used_, best_});
  }
  return value;
}

bool SearchContext::assign(Individual& target, KeyVector position) {
  if (exhausted()) return false;
  reflect_into_range(position, instance_.machines);
  Schedule schedule = decode(position, instance_.machines);
  target.fitness = *evaluate(schedule);
  target.schedule = std::move(schedule);
  target.position = std::move(position);
  return true;
}

void SearchContext::close_trace() {
  if (trace_.empty() || trace_.back().evaluations != used_) trace_.push_back({used_, best_});
}

Population init_population(SearchContext& ctx, int size) {
  const int n = ctx.instance().jobs;
  const double upper = ctx.instance().machines;
  std::uniform_real_distribution<double> key(0.0, upper);
  Population population;
  population.reserve(size);
  for (int i = 0; i < size; ++i) {
    KeyVector x(n);
    for (int j = 0; j < n; ++j) x(j) = key(ctx.rng());
    Individual ind;
    if (!ctx.assign(ind, std::move(x))) break;
    population.push_back(std::move(ind));
  }
  return population;
}

std::size_t best_index(const Population& population) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < population.size(); ++i)
    if (population[i].fitness < population[best].fitness) best = i;
  return best;
}

void improve_best(Population& population, SearchContext& ctx, const LocalSearchConfig& config, int times) {
  if (population.empty()) return;
  Individual& best = population[best_index(population)];
  const MoveEvaluator counted = [&ctx](const Schedule& s) { return ctx.evaluate(s); };
  bool changed = false;
  for (int t = 0; t < times && !ctx.exhausted(); ++t) {
    const Time before = best.fitness;
    best.fitness = improve_in_place(best.schedule, best.fitness, config, ctx.rng(), counted);
    changed = changed || best.fitness < before;
  }
  if (changed) best.position = encode(best.schedule);
}

void fa_generation(Population& population, SearchContext& ctx, const FireflyParams& params, double& alpha,
                   const LocalSearchConfig& local_search, int ls_invocations) {
  const int n = ctx.instance().jobs;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < population.size(); ++i) {
    for (std::size_t j = 0; j < population.size(); ++j) {
      if (i == j || population[j].fitness > population[i].fitness) continue;
      const KeyVector& xi = population[i].position;
      const KeyVector& xj = population[j].position;
      const double beta = attractiveness((xi - xj).norm(), params.gamma, params.beta0);
      KeyVector walk(n);
      for (int d = 0; d < n; ++d) walk(d) = unit(ctx.rng()) - 0.5;
      KeyVector moved = xi + beta * (xj - xi) + alpha * walk;
      if (!ctx.assign(population[i], std::move(moved))) return;
    }
  }
  alpha = std::max(params.alpha_floor, alpha * params.alpha_decay);
  improve_best(population, ctx, local_search, ls_invocations);
}

RunResult run(const Instance& instance, const AlgorithmConfig& config) {
  const AdjustedTimes ap = adjusted_times(instance);
  return run(instance, ap, config);
}

RunResult run(const Instance& instance, const AdjustedTimes& ap, const AlgorithmConfig& config) {
  config.check();
  const auto start = std::chrono::steady_clock::now();
  SearchContext ctx(instance, ap, config.max_evaluations, config.seed);

  Population population = init_population(ctx, config.population);
  RunResult result;
  result.initial_best = ctx.best();

  const bool firefly = uses_firefly(config.algorithm);
  const auto partner = partner_of(config.algorithm);
  double alpha = config.fa.alpha;
  PartnerState state;

  while (!ctx.exhausted()) {
    const long before = ctx.used();
    if (firefly) fa_generation(population, ctx, config.fa, alpha, config.local_search, config.ls_invocations);
    if (partner) {
      partner_update(population, *partner, config.partner, state, ctx);
      if (!firefly) improve_best(population, ctx, config.local_search, config.ls_invocations);
    }
    if (ctx.used() == before) break;
  }

  ctx.close_trace();
  result.best_fitness = ctx.best();
  result.best_schedule = ctx.best_schedule();
  result.trace = ctx.trace();
  result.evaluations_used = ctx.used();
  result.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace upmsp
