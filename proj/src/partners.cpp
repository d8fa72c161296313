#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "upmsp/engine.hpp"

namespace upmsp {

namespace {

int pick_other(Rng& rng, int size, int excluded) {
  int k = std::uniform_int_distribution<int>(0, size - 2)(rng);
  return k >= excluded ? k + 1 : k;
}

/// Evaluates `position` and keeps it in `target` when it is no worse.
/// Returns the evaluated fitness, or nullopt when the budget is spent.
std::optional<Time> greedy_replace(Individual& target, KeyVector position, SearchContext& ctx) {
  Individual trial;
  if (!ctx.assign(trial, std::move(position))) return std::nullopt;
  const Time value = trial.fitness;
  if (value <= target.fitness) target = std::move(trial);
  return value;
}

// rand/1/bin with greedy selection.
void de_sweep(Population& pop, const DeParams& p, SearchContext& ctx) {
  const int size = static_cast<int>(pop.size());
  const int n = ctx.instance().jobs;
  Rng& rng = ctx.rng();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> dim(0, n - 1);
  for (int i = 0; i < size; ++i) {
    int r[3];
    for (int t = 0; t < 3; ++t) {
      // Distinct donors when the population allows it.
      do {
        r[t] = pick_other(rng, size, i);
      } while (size > 4 && ((t > 0 && r[t] == r[0]) || (t > 1 && r[t] == r[1])));
    }
    const KeyVector mutant = pop[r[0]].position + p.f * (pop[r[1]].position - pop[r[2]].position);
    KeyVector trial = pop[i].position;
    const int forced = p.cr > 0.0 ? dim(rng) : -1;
    bool changed = false;
    for (int d = 0; d < n; ++d) {
      if (d == forced || unit(rng) < p.cr) {
        changed = changed || trial(d) != mutant(d);
        trial(d) = mutant(d);
      }
    }
    if (!changed) continue;
    if (!greedy_replace(pop[i], std::move(trial), ctx)) return;
  }
}

void pso_sweep(Population& pop, const PsoParams& p, PartnerState& st, SearchContext& ctx) {
  const int size = static_cast<int>(pop.size());
  const int n = ctx.instance().jobs;
  const double vmax = p.velocity_clamp * ctx.instance().machines;
  Rng& rng = ctx.rng();
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  if (st.velocity.size() != pop.size()) {
    st.velocity.assign(size, KeyVector::Zero(n));
    st.personal_best.clear();
    st.personal_best_fitness.clear();
    for (const auto& ind : pop) {
      st.personal_best.push_back(ind.position);
      st.personal_best_fitness.push_back(ind.fitness);
    }
  }
  // Other passes may have moved individuals since the last sweep.
  for (int i = 0; i < size; ++i) {
    if (pop[i].fitness < st.personal_best_fitness[i]) {
      st.personal_best[i] = pop[i].position;
      st.personal_best_fitness[i] = pop[i].fitness;
    }
  }
  auto global = std::min_element(st.personal_best_fitness.begin(), st.personal_best_fitness.end()) -
                st.personal_best_fitness.begin();

  for (int i = 0; i < size; ++i) {
    KeyVector& v = st.velocity[i];
    const KeyVector& x = pop[i].position;
    for (int d = 0; d < n; ++d) {
      const double cognitive = p.cognitive * unit(rng) * (st.personal_best[i](d) - x(d));
      const double social = p.social * unit(rng) * (st.personal_best[global](d) - x(d));
      v(d) = std::clamp(p.inertia * v(d) + cognitive + social, -vmax, vmax);
    }
    if (!ctx.assign(pop[i], x + v)) return;
    if (pop[i].fitness < st.personal_best_fitness[i]) {
      st.personal_best[i] = pop[i].position;
      st.personal_best_fitness[i] = pop[i].fitness;
      if (pop[i].fitness < st.personal_best_fitness[global]) global = i;
    }
  }
}

// Employed bees, onlookers chosen by fitness-proportionate roulette, one scout.
void abc_sweep(Population& pop, const AbcParams& p, PartnerState& st, SearchContext& ctx) {
  const int size = static_cast<int>(pop.size());
  const int n = ctx.instance().jobs;
  const long limit = p.limit > 0 ? p.limit : static_cast<long>(size) * n;
  Rng& rng = ctx.rng();
  std::uniform_real_distribution<double> phi(-1.0, 1.0);
  std::uniform_int_distribution<int> dim(0, n - 1);
  if (st.trials.size() != pop.size()) st.trials.assign(size, 0);

  auto explore = [&](int i) -> bool {
    const int k = pick_other(rng, size, i);
    const int d = dim(rng);
    KeyVector v = pop[i].position;
    v(d) += phi(rng) * (pop[i].position(d) - pop[k].position(d));
    const Time before = pop[i].fitness;
    auto value = greedy_replace(pop[i], std::move(v), ctx);
    if (!value) return false;
    if (*value < before)
      st.trials[i] = 0;
    else
      ++st.trials[i];
    return true;
  };

  for (int i = 0; i < size; ++i)
    if (!explore(i)) return;

  std::vector<double> weights(size);
  for (int t = 0; t < size; ++t) {
    for (int i = 0; i < size; ++i) weights[i] = pop[i].intensity();
    if (!explore(static_cast<int>(roulette_select(weights, rng)))) return;
  }

  const auto scout = std::max_element(st.trials.begin(), st.trials.end()) - st.trials.begin();
  if (st.trials[scout] > limit) {
    std::uniform_real_distribution<double> key(0.0, ctx.instance().machines);
    KeyVector x(n);
    for (int d = 0; d < n; ++d) x(d) = key(rng);
    if (!ctx.assign(pop[scout], std::move(x))) return;
    st.trials[scout] = 0;
  }
}

void tlbo_sweep(Population& pop, SearchContext& ctx) {
  const int size = static_cast<int>(pop.size());
  const int n = ctx.instance().jobs;
  Rng& rng = ctx.rng();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> teaching_factor(1, 2);

  auto random_vector = [&] {
    KeyVector r(n);
    for (int d = 0; d < n; ++d) r(d) = unit(rng);
    return r;
  };

  KeyVector mean = KeyVector::Zero(n);
  for (const auto& ind : pop) mean += ind.position;
  mean /= static_cast<double>(size);
  const KeyVector teacher = pop[best_index(pop)].position;

  for (int i = 0; i < size; ++i) {
    const double tf = teaching_factor(rng);
    KeyVector x = pop[i].position + random_vector().cwiseProduct(teacher - tf * mean);
    if (!greedy_replace(pop[i], std::move(x), ctx)) return;
  }
  for (int i = 0; i < size; ++i) {
    const int j = pick_other(rng, size, i);
    const KeyVector step = pop[i].fitness < pop[j].fitness ? KeyVector(pop[i].position - pop[j].position)
                                                           : KeyVector(pop[j].position - pop[i].position);
    KeyVector x = pop[i].position + random_vector().cwiseProduct(step);
    if (!greedy_replace(pop[i], std::move(x), ctx)) return;
  }
}

void iwo_sweep(Population& pop, const IwoParams& p, SearchContext& ctx) {
  const int size = static_cast<int>(pop.size());
  const int n = ctx.instance().jobs;
  Rng& rng = ctx.rng();

  const double remaining = std::max(0.0, 1.0 - ctx.progress());
  const double sigma_initial = p.sigma_initial * ctx.instance().machines;
  const double sigma = std::pow(remaining, p.modulation) * (sigma_initial - p.sigma_final) + p.sigma_final;
  std::normal_distribution<double> spread(0.0, sigma);

  Time best = pop.front().fitness, worst = pop.front().fitness;
  for (const auto& ind : pop) {
    best = std::min(best, ind.fitness);
    worst = std::max(worst, ind.fitness);
  }

  Population offspring;
  for (int i = 0; i < size && !ctx.exhausted(); ++i) {
    const double ratio =
        worst == best ? 1.0 : static_cast<double>(worst - pop[i].fitness) / static_cast<double>(worst - best);
    const int seeds = static_cast<int>(std::floor(p.min_seeds + (p.max_seeds - p.min_seeds) * ratio));
    for (int s = 0; s < seeds; ++s) {
      KeyVector x = pop[i].position;
      for (int d = 0; d < n; ++d) x(d) += spread(rng);
      Individual child;
      if (!ctx.assign(child, std::move(x))) break;
      offspring.push_back(std::move(child));
    }
  }

  for (auto& child : offspring) pop.push_back(std::move(child));
  std::stable_sort(pop.begin(), pop.end(), [](const Individual& a, const Individual& b) { return a.fitness < b.fitness; });
  pop.resize(size);
}

}  // namespace

void partner_update(Population& population, PartnerKind kind, const PartnerParams& params, PartnerState& state,
                    SearchContext& ctx) {
  if (population.size() < 2) throw std::invalid_argument("partner_update: population needs at least two individuals");
  switch (kind) {
    case PartnerKind::DE:
      de_sweep(population, params.de, ctx);
      return;
    case PartnerKind::PSO:
      pso_sweep(population, params.pso, state, ctx);
      return;
    case PartnerKind::ABC:
      abc_sweep(population, params.abc, state, ctx);
      return;
    case PartnerKind::TLBO:
      tlbo_sweep(population, ctx);
      return;
    case PartnerKind::IWO:
      iwo_sweep(population, params.iwo, ctx);
      return;
  }
  throw std::invalid_argument("partner_update: unknown partner kind");
}

}  // namespace upmsp
