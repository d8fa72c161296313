#ifndef UPMSP_EXACT_HPP
#define UPMSP_EXACT_HPP

#include <cstdint>

#include "upmsp/schedule.hpp"

namespace upmsp {

struct ExactLimits {
  int max_jobs = 9;
  std::int64_t node_cap = 50'000'000;
  double time_cap_ms = 60'000.0;
};

struct ExactResult {
  Time optimum = 0;
  Schedule witness;
  std::int64_t nodes = 0;
  bool proven = false;  // search exhausted within the caps
};

/// Depth-first branch and bound. Machines are filled one after another; a
/// node either appends an unscheduled job to the open machine or closes it.
/// Each schedule is reached exactly once. Throws std::invalid_argument when
/// the instance has more than `limits.max_jobs` jobs.
ExactResult solve_exact(const Instance& instance, const ExactLimits& limits = {});

}  // namespace upmsp

#endif  // UPMSP_EXACT_HPP
