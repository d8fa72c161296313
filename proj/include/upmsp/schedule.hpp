#ifndef UPMSP_SCHEDULE_HPP
#define UPMSP_SCHEDULE_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "upmsp/instance.hpp"
#include "upmsp/types.hpp"

namespace upmsp {

/// Two-stage solution: machine of every job plus the job chain of every
/// machine. Indices are 0-based; text output is 1-based.
struct Schedule {
  std::vector<int> assignment;               // job -> machine
  std::vector<std::vector<int>> sequences;   // machine -> ordered jobs

  int machines() const { return static_cast<int>(sequences.size()); }
  int jobs() const { return static_cast<int>(assignment.size()); }

  /// Rebuilds `assignment` from `sequences`. Jobs not present keep -1.
  void sync_assignment();

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

/// Builds a schedule from machine chains given with 0-based job indices.
Schedule from_sequences(int jobs, std::vector<std::vector<int>> sequences);

/// One line per machine, `k: j1 j2 ...`, 1-based.
std::string to_text(const Schedule& schedule);

enum class Rule {
  MachineCount,          // one sequence per machine
  JobRange,              // job and machine indices inside their domains
  JobMultiplicity,       // every job scheduled exactly once
  RepeatWithinSequence,  // a job cannot precede or follow itself
  AssignmentMismatch,    // assignment vector agrees with the chains
};

struct Violation {
  Rule rule;
  std::string message;
};

/// Empty when the schedule is feasible for `instance`.
std::vector<Violation> validate(const Schedule& schedule, const Instance& instance);
inline bool is_valid(const Schedule& schedule, const Instance& instance) {
  return validate(schedule, instance).empty();
}

struct EvaluationReport {
  std::vector<Time> completion;         // per job
  std::vector<Time> per_machine_finish; // per machine
  Time makespan = 0;
};

/// Completion times along each machine chain. Throws std::invalid_argument
/// if the schedule does not fit the dimensions of `ap`.
EvaluationReport evaluate(const Schedule& schedule, const AdjustedTimes& ap);

/// Unchecked makespan for the search hot path. `schedule` must be valid.
inline Time makespan(const Schedule& schedule, const AdjustedTimes& ap) {
  Time cmax = 0;
  for (int k = 0; k < schedule.machines(); ++k) {
    const auto& seq = schedule.sequences[k];
    if (seq.empty()) continue;
    Time finish = ap.first(k, seq.front());
    for (std::size_t p = 1; p < seq.size(); ++p) finish += ap.after(k, seq[p - 1], seq[p]);
    if (finish > cmax) cmax = finish;
  }
  return cmax;
}

inline Time machine_finish(const std::vector<int>& seq, int machine, const AdjustedTimes& ap) {
  if (seq.empty()) return 0;
  Time finish = ap.first(machine, seq.front());
  for (std::size_t p = 1; p < seq.size(); ++p) finish += ap.after(machine, seq[p - 1], seq[p]);
  return finish;
}

/// Folds every coordinate back into [0, machines) by mirror reflection.
template <typename Derived>
void reflect_into_range(Eigen::MatrixBase<Derived>& keys, int machines) {
  using Scalar = typename Derived::Scalar;
  const Scalar upper = static_cast<Scalar>(machines);
  const Scalar period = 2 * upper;
  for (Eigen::Index j = 0; j < keys.size(); ++j) {
    Scalar x = keys(j);
    if (!std::isfinite(x)) x = Scalar(0);
    if (x >= Scalar(0) && x < upper) continue;
    x = std::fmod(x, period);
    if (x < 0) x += period;
    if (x >= upper) x = period - x;
    if (x >= upper) x = std::nextafter(upper, Scalar(0));
    if (x < 0) x = Scalar(0);
    keys(j) = x;
  }
}

/// Random-key decode: integer part picks the machine, fractional part ranks
/// the job on it (ties by job index).
template <typename Derived>
Schedule decode(const Eigen::MatrixBase<Derived>& keys, int machines) {
  using Scalar = typename Derived::Scalar;
  const int n = static_cast<int>(keys.size());
  Schedule s;
  s.assignment.resize(n);
  s.sequences.assign(machines, {});
  std::vector<Scalar> frac(n);
  for (int j = 0; j < n; ++j) {
    Scalar x = keys(j);
    Scalar whole = std::floor(x);
    int k = static_cast<int>(whole);
    if (!(x >= Scalar(0)) || k < 0) k = 0, whole = 0;
    if (k >= machines) k = machines - 1, whole = static_cast<Scalar>(k);
    s.assignment[j] = k;
    frac[j] = x - whole;
    s.sequences[k].push_back(j);
  }
  for (auto& seq : s.sequences)
    std::stable_sort(seq.begin(), seq.end(), [&](int a, int b) { return frac[a] < frac[b]; });
  return s;
}

template <typename Derived>
Schedule decode(const Eigen::MatrixBase<Derived>& keys, const Instance& instance) {
  if (keys.size() != instance.jobs) throw std::invalid_argument("decode: key vector length must equal job count");
  return decode(keys, instance.machines);
}

/// A key vector that decodes back to `schedule`.
KeyVector encode(const Schedule& schedule);

}  // namespace upmsp

#endif  // UPMSP_SCHEDULE_HPP
