#ifndef UPMSP_NEIGHBORHOOD_HPP
#define UPMSP_NEIGHBORHOOD_HPP

#include <array>
#include <functional>
#include <optional>
#include <span>

#include "upmsp/schedule.hpp"

namespace upmsp {

/// Order matters: index 0 swap, 1 revert, 2 insert.
struct SchemeProbabilities {
  double swap = 0.2;
  double revert = 0.5;
  double insert = 0.3;

  /// Builds the triple from p_swap and p_revert, insert takes the rest.
  static SchemeProbabilities from_swap_revert(double p_swap, double p_revert);
  void check() const;
  std::array<double, 3> weights() const { return {swap, revert, insert}; }
};

enum class Scheme { Swap = 0, Revert = 1, Insert = 2 };

struct LocalSearchConfig {
  SchemeProbabilities probabilities;
  int passes = 1;
  /// Random move attempts per scheme = round(budget_factor * machines), at least 1.
  double budget_factor = 0.7;

  int move_budget(int machines) const;
  void check() const;
};

/// Fitness-proportionate choice: index i with probability w_i / sum(w).
/// Throws std::invalid_argument("degenerate roulette") when no weight is positive.
std::size_t roulette_select(std::span<const double> weights, Rng& rng);

/// A job slot: machine and position in that machine's chain.
struct Slot {
  int machine;
  int index;
};

/// Exchange the jobs at `a` and `b`; the two slots must be on different machines.
Schedule apply_swap(const Schedule& schedule, Slot a, Slot b);

/// Move the job at `from` into `target_machine` at `target_index`, counted in
/// the target chain after the job has been removed. Same machine = intra move.
Schedule apply_insert(const Schedule& schedule, Slot from, int target_machine, int target_index);

/// Reverse positions first..last (inclusive) of one machine chain.
Schedule apply_revert(const Schedule& schedule, int machine, int first, int last);

/// Scores a candidate schedule. Returning nullopt aborts the search (budget spent).
using MoveEvaluator = std::function<std::optional<Time>(const Schedule&)>;

/// Mutation-based improvement. Draws a starting scheme by roulette over the
/// scheme probabilities, then runs swap, revert and insert branches in cyclic
/// order from it, each with move_budget random attempts on two random machines.
/// A move is kept only when it strictly lowers the makespan.
/// Returns the makespan of `schedule` on exit.
Time improve_in_place(Schedule& schedule, Time current, const LocalSearchConfig& config, Rng& rng,
                      const MoveEvaluator& evaluate_move);

Schedule improve(const Schedule& schedule, const AdjustedTimes& ap, const LocalSearchConfig& config, Rng& rng);

}  // namespace upmsp

#endif  // UPMSP_NEIGHBORHOOD_HPP
