#include "upmsp/schedule.hpp"

#include <sstream>

#include <fmt/format.h>

namespace upmsp {

void Schedule::sync_assignment() {
  for (auto& a : assignment) a = -1;
  for (int k = 0; k < machines(); ++k)
    for (int j : sequences[k])
      if (j >= 0 && j < jobs()) assignment[j] = k;
}

Schedule from_sequences(int jobs, std::vector<std::vector<int>> sequences) {
  Schedule s;
  s.assignment.assign(jobs, -1);
  s.sequences = std::move(sequences);
  s.sync_assignment();
  return s;
}

std::string to_text(const Schedule& schedule) {
  std::string out;
  for (int k = 0; k < schedule.machines(); ++k) {
    out += fmt::format("{}:", k + 1);
    for (int j : schedule.sequences[k]) out += fmt::format(" {}", j + 1);
    out += '\n';
  }
  return out;
}

std::vector<Violation> validate(const Schedule& schedule, const Instance& instance) {
  std::vector<Violation> out;
  const int n = instance.jobs;
  const int m = instance.machines;

  if (schedule.machines() != m)
    out.push_back({Rule::MachineCount, fmt::format("machine count: {} sequences for {} machines",
                                                   schedule.machines(), m)});
  if (schedule.jobs() != n)
    out.push_back({Rule::JobRange, fmt::format("job range: assignment covers {} jobs, instance has {}",
                                               schedule.jobs(), n)});

  std::vector<int> seen(n, 0);
  std::vector<int> where(n, -1);
  for (int k = 0; k < schedule.machines(); ++k) {
    std::vector<char> in_this(n, 0);
    for (int j : schedule.sequences[k]) {
      if (j < 0 || j >= n) {
        out.push_back({Rule::JobRange, fmt::format("job range: job {} on machine {} does not exist", j + 1, k + 1)});
        continue;
      }
      if (in_this[j]) {
        out.push_back({Rule::RepeatWithinSequence,
                       fmt::format("repeat within sequence: job {} appears twice on machine {}", j + 1, k + 1)});
        continue;
      }
      in_this[j] = 1;
      ++seen[j];
      where[j] = k;
    }
  }
  for (int j = 0; j < n; ++j) {
    if (seen[j] == 0)
      out.push_back({Rule::JobMultiplicity, fmt::format("job multiplicity: job {} is not scheduled", j + 1)});
    else if (seen[j] > 1)
      out.push_back({Rule::JobMultiplicity,
                     fmt::format("job multiplicity: job {} is scheduled on {} machines", j + 1, seen[j])});
  }
  for (int j = 0; j < std::min(n, schedule.jobs()); ++j) {
    int a = schedule.assignment[j];
    if (a < 0 || a >= m) {
      out.push_back({Rule::JobRange, fmt::format("job range: job {} assigned to machine {}", j + 1, a + 1)});
    } else if (seen[j] == 1 && where[j] != a) {
      out.push_back({Rule::AssignmentMismatch,
                     fmt::format("assignment mismatch: job {} assigned to machine {} but sequenced on {}", j + 1,
                                 a + 1, where[j] + 1)});
    }
  }
  return out;
}

EvaluationReport evaluate(const Schedule& schedule, const AdjustedTimes& ap) {
  if (schedule.machines() != ap.machines || schedule.jobs() != ap.jobs)
    throw std::invalid_argument("evaluate: schedule does not match instance dimensions");
  EvaluationReport r;
  r.completion.assign(ap.jobs, 0);
  r.per_machine_finish.assign(ap.machines, 0);
  for (int k = 0; k < ap.machines; ++k) {
    Time t = 0;
    int prev = -1;
    for (int j : schedule.sequences[k]) {
      if (j < 0 || j >= ap.jobs || j == prev) throw std::invalid_argument("evaluate: invalid schedule");
      t += prev < 0 ? ap.first(k, j) : ap.after(k, prev, j);
      r.completion[j] = t;
      prev = j;
    }
    r.per_machine_finish[k] = t;
    r.makespan = std::max(r.makespan, t);
  }
  return r;
}

KeyVector encode(const Schedule& schedule) {
  KeyVector keys(schedule.jobs());
  for (int k = 0; k < schedule.machines(); ++k) {
    const auto& seq = schedule.sequences[k];
    const double q = static_cast<double>(seq.size());
    for (std::size_t r = 0; r < seq.size(); ++r) keys(seq[r]) = k + (static_cast<double>(r) + 0.5) / q;
  }
  return keys;
}

}  // namespace upmsp
