#include "upmsp/bounds.hpp"

#include <limits>

namespace upmsp {

Time min_adjusted(const AdjustedTimes& ap, int job) {
  Time best = std::numeric_limits<Time>::max();
  for (int k = 0; k < ap.machines; ++k)
    for (int row = 0; row <= ap.jobs; ++row)
      if (row != job + 1) best = std::min(best, ap.at(k, row, job));
  return best;
}

Time min_adjusted(const Instance& instance, int job) { return min_adjusted(adjusted_times(instance), job); }

BoundReport lower_bounds(const AdjustedTimes& ap) {
  BoundReport r;
  r.machines = ap.machines;
  for (int j = 0; j < ap.jobs; ++j) {
    Time v = min_adjusted(ap, j);
    r.lb1_sum += v;
    r.lb2 = std::max(r.lb2, v);
  }
  return r;
}

BoundReport lower_bounds(const Instance& instance) { return lower_bounds(adjusted_times(instance)); }

}  // namespace upmsp
