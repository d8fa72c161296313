#ifndef UPMSP_BOUNDS_HPP
#define UPMSP_BOUNDS_HPP

#include <algorithm>

#include "upmsp/instance.hpp"

namespace upmsp {

/// Makespan lower bounds. `lb1` is the exact rational lb1_sum / machines.
struct BoundReport {
  Time lb1_sum = 0;
  int machines = 1;
  Time lb2 = 0;

  double lb1() const { return static_cast<double>(lb1_sum) / machines; }
  Time lb1_ceil() const { return (lb1_sum + machines - 1) / machines; }
  double lb() const { return std::max(lb1(), static_cast<double>(lb2)); }
  /// Smallest integer makespan the bounds allow.
  Time lb_ceil() const { return std::max(lb1_ceil(), lb2); }
};

/// Cheapest adjusted time job `job` can ever incur: minimum over machines
/// and over every possible predecessor, the dummy start included.
Time min_adjusted(const AdjustedTimes& ap, int job);
Time min_adjusted(const Instance& instance, int job);

BoundReport lower_bounds(const AdjustedTimes& ap);
BoundReport lower_bounds(const Instance& instance);

}  // namespace upmsp

#endif  // UPMSP_BOUNDS_HPP
