#include "upmsp/neighborhood.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace upmsp {

SchemeProbabilities SchemeProbabilities::from_swap_revert(double p_swap, double p_revert) {
  SchemeProbabilities p{p_swap, p_revert, 1.0 - (p_swap + p_revert)};
  p.check();
  return p;
}

void SchemeProbabilities::check() const {
  for (double v : weights())
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("scheme probabilities must lie in [0, 1]");
  if (std::abs(swap + revert + insert - 1.0) > 1e-9) throw std::invalid_argument("scheme probabilities must sum to 1");
}

int LocalSearchConfig::move_budget(int machines) const {
  return std::max(1, static_cast<int>(std::lround(budget_factor * machines)));
}

void LocalSearchConfig::check() const {
  probabilities.check();
  if (passes < 1) throw std::invalid_argument("local search passes must be >= 1");
  if (!(budget_factor > 0.0)) throw std::invalid_argument("local search budget factor must be positive");
}

std::size_t roulette_select(std::span<const double> weights, Rng& rng) {
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0 || !std::isfinite(w)) throw std::invalid_argument("roulette weights must be finite and nonnegative");
    total += w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("degenerate roulette");
  const double r = std::uniform_real_distribution<double>(0.0, total)(rng);
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    acc += weights[i];
    last_positive = i;
    if (r < acc) return i;
  }
  return last_positive;
}

namespace {

void require_slot(const Schedule& s, Slot slot, const char* what) {
  if (slot.machine < 0 || slot.machine >= s.machines() || slot.index < 0 ||
      slot.index >= static_cast<int>(s.sequences[slot.machine].size()))
    throw std::invalid_argument(std::string(what) + ": stale or out-of-range slot");
}

}  // namespace

Schedule apply_swap(const Schedule& schedule, Slot a, Slot b) {
  require_slot(schedule, a, "apply_swap");
  require_slot(schedule, b, "apply_swap");
  if (a.machine == b.machine) throw std::invalid_argument("apply_swap: jobs must be on different machines");
  Schedule out = schedule;
  int& ja = out.sequences[a.machine][a.index];
  int& jb = out.sequences[b.machine][b.index];
  std::swap(ja, jb);
  out.assignment[ja] = a.machine;
  out.assignment[jb] = b.machine;
  return out;
}

Schedule apply_insert(const Schedule& schedule, Slot from, int target_machine, int target_index) {
  require_slot(schedule, from, "apply_insert");
  if (target_machine < 0 || target_machine >= schedule.machines())
    throw std::invalid_argument("apply_insert: target machine out of range");
  Schedule out = schedule;
  auto& src = out.sequences[from.machine];
  const int job = src[from.index];
  src.erase(src.begin() + from.index);
  auto& dst = out.sequences[target_machine];
  if (target_index < 0 || target_index > static_cast<int>(dst.size()))
    throw std::invalid_argument("apply_insert: target position out of range");
  dst.insert(dst.begin() + target_index, job);
  out.assignment[job] = target_machine;
  return out;
}

Schedule apply_revert(const Schedule& schedule, int machine, int first, int last) {
  if (machine < 0 || machine >= schedule.machines()) throw std::invalid_argument("apply_revert: machine out of range");
  const auto& seq = schedule.sequences[machine];
  if (first < 0 || first > last || last >= static_cast<int>(seq.size()))
    throw std::invalid_argument("apply_revert: span out of range");
  Schedule out = schedule;
  auto& s = out.sequences[machine];
  std::reverse(s.begin() + first, s.begin() + last + 1);
  return out;
}

namespace {

constexpr int kRedraws = 10;

int uniform_index(Rng& rng, int count) { return std::uniform_int_distribution<int>(0, count - 1)(rng); }

int other_machine(Rng& rng, int machines, int excluded) {
  int k = uniform_index(rng, machines - 1);
  return k >= excluded ? k + 1 : k;
}

std::optional<Schedule> propose_swap(const Schedule& s, int pi, Rng& rng) {
  const int m = s.machines();
  if (m < 2 || s.sequences[pi].empty()) return std::nullopt;
  for (int draw = 0; draw < kRedraws; ++draw) {
    const int k = other_machine(rng, m, pi);
    if (s.sequences[k].empty()) continue;
    Slot a{pi, uniform_index(rng, static_cast<int>(s.sequences[pi].size()))};
    Slot b{k, uniform_index(rng, static_cast<int>(s.sequences[k].size()))};
    return apply_swap(s, a, b);
  }
  return std::nullopt;
}

std::optional<Schedule> propose_insert(const Schedule& s, int pi, Rng& rng) {
  const int m = s.machines();
  const int len = static_cast<int>(s.sequences[pi].size());
  if (len == 0) return std::nullopt;
  for (int draw = 0; draw < kRedraws; ++draw) {
    const int k = uniform_index(rng, m);
    const int from = uniform_index(rng, len);
    if (k == pi) {
      // Intra-machine: reinsert before another randomly chosen job.
      if (len < 2) continue;
      const int to = uniform_index(rng, len);
      if (to == from) continue;
      return apply_insert(s, Slot{pi, from}, pi, to);
    }
    const int to = uniform_index(rng, static_cast<int>(s.sequences[k].size()) + 1);
    return apply_insert(s, Slot{pi, from}, k, to);
  }
  return std::nullopt;
}

std::optional<Schedule> propose_revert(const Schedule& s, int l, int r, Rng& rng) {
  for (int draw = 0; draw < kRedraws; ++draw) {
    const int pi = (l == r || uniform_index(rng, 2) == 0) ? l : r;
    const int len = static_cast<int>(s.sequences[pi].size());
    if (len < 2) continue;
    int a = uniform_index(rng, len);
    int b = uniform_index(rng, len);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    return apply_revert(s, pi, a, b);
  }
  return std::nullopt;
}

// Branch order follows the scheme counter: swap, insert, revert.
constexpr std::array<Scheme, 3> kBranchOrder{Scheme::Swap, Scheme::Insert, Scheme::Revert};

}  // namespace

Time improve_in_place(Schedule& schedule, Time current, const LocalSearchConfig& config, Rng& rng,
                      const MoveEvaluator& evaluate_move) {
  const int m = schedule.machines();
  const int budget = config.move_budget(m);
  const auto weights = config.probabilities.weights();

  auto consider = [&](std::optional<Schedule>&& candidate) -> bool {
    if (!candidate) return true;
    auto value = evaluate_move(*candidate);
    if (!value) return false;
    if (*value < current) {
      schedule = std::move(*candidate);
      current = *value;
    }
    return true;
  };

  for (int pass = 0; pass < config.passes; ++pass) {
    const auto drawn = static_cast<Scheme>(roulette_select(weights, rng));
    const auto start = std::find(kBranchOrder.begin(), kBranchOrder.end(), drawn) - kBranchOrder.begin();
    for (int step = 0; step < 3; ++step) {
      const Scheme scheme = kBranchOrder[(start + step) % 3];
      if (scheme == Scheme::Swap && m < 2) continue;
      const int l = uniform_index(rng, m);
      const int r = m < 2 ? l : other_machine(rng, m, l);
      for (int attempt = 0; attempt < budget; ++attempt) {
        if (scheme == Scheme::Revert) {
          if (!consider(propose_revert(schedule, l, r, rng))) return current;
          continue;
        }
        for (int pi : {l, r}) {
          auto candidate = scheme == Scheme::Swap ? propose_swap(schedule, pi, rng) : propose_insert(schedule, pi, rng);
          if (!consider(std::move(candidate))) return current;
          if (l == r) break;
        }
      }
    }
  }
  return current;
}

Schedule improve(const Schedule& schedule, const AdjustedTimes& ap, const LocalSearchConfig& config, Rng& rng) {
  Schedule out = schedule;
  improve_in_place(out, makespan(schedule, ap), config, rng,
                   [&](const Schedule& s) -> std::optional<Time> { return makespan(s, ap); });
  return out;
}

}  // namespace upmsp
