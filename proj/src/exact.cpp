#include "upmsp/exact.hpp"

#include <chrono>
#include <limits>
#include <stdexcept>

#include "upmsp/bounds.hpp"

namespace upmsp {

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const Instance& instance, const ExactLimits& limits)
      : limits_(limits), ap_(adjusted_times(instance)), m_(instance.machines), n_(instance.jobs) {
    // cheapest[k](j): least adjusted time of job j on machine k or any later machine.
    cheapest_.assign(m_, std::vector<Time>(n_, std::numeric_limits<Time>::max()));
    for (int k = m_ - 1; k >= 0; --k)
      for (int j = 0; j < n_; ++j) {
        Time best = k + 1 < m_ ? cheapest_[k + 1][j] : std::numeric_limits<Time>::max();
        for (int row = 0; row <= n_; ++row)
          if (row != j + 1) best = std::min(best, ap_.at(k, row, j));
        cheapest_[k][j] = best;
      }
    scheduled_.assign(n_, 0);
    chains_.assign(m_, {});
  }

  ExactResult solve() {
    start_ = std::chrono::steady_clock::now();
    seed_incumbent();
    aborted_ = false;
    search(0, 0, 0, n_);
    ExactResult r;
    r.optimum = incumbent_;
    r.witness = from_sequences(n_, incumbent_chains_);
    r.nodes = nodes_;
    r.proven = !aborted_;
    return r;
  }

 private:
  // Greedy: each job to the machine where it finishes earliest.
  void seed_incumbent() {
    std::vector<std::vector<int>> chains(m_);
    std::vector<Time> finish(m_, 0);
    for (int j = 0; j < n_; ++j) {
      int best_k = 0;
      Time best_t = std::numeric_limits<Time>::max();
      for (int k = 0; k < m_; ++k) {
        const Time t = finish[k] + (chains[k].empty() ? ap_.first(k, j) : ap_.after(k, chains[k].back(), j));
        if (t < best_t) best_t = t, best_k = k;
      }
      chains[best_k].push_back(j);
      finish[best_k] = best_t;
    }
    incumbent_ = *std::max_element(finish.begin(), finish.end());
    incumbent_chains_ = std::move(chains);
  }

  bool out_of_budget() {
    if (nodes_ >= limits_.node_cap) return true;
    if ((nodes_ & 0x3FF) == 0) {
      const double ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
      if (ms > limits_.time_cap_ms) return true;
    }
    return false;
  }

  // Residual bound: closed machines keep their finish; the remaining jobs
  // share the open machine and every later one.
  Time bound(int machine, Time load, Time closed_max, int remaining) const {
    Time work = load;
    Time single = load;
    for (int j = 0; j < n_ && remaining > 0; ++j) {
      if (scheduled_[j]) continue;
      work += cheapest_[machine][j];
      single = std::max(single, cheapest_[machine][j]);
    }
    const Time open = m_ - machine;
    return std::max({closed_max, single, (work + open - 1) / open});
  }

  void search(int machine, Time load, Time closed_max, int remaining) {
    if (aborted_) return;
    ++nodes_;
    if (out_of_budget()) {
      aborted_ = true;
      return;
    }
    if (remaining == 0) {
      const Time value = std::max(closed_max, load);
      if (value < incumbent_) {
        incumbent_ = value;
        incumbent_chains_ = chains_;
      }
      return;
    }
    if (bound(machine, load, closed_max, remaining) >= incumbent_) return;

    auto& chain = chains_[machine];
    for (int j = 0; j < n_; ++j) {
      if (scheduled_[j]) continue;
      const Time next = load + (chain.empty() ? ap_.first(machine, j) : ap_.after(machine, chain.back(), j));
      if (next >= incumbent_) continue;
      scheduled_[j] = 1;
      chain.push_back(j);
      search(machine, next, closed_max, remaining - 1);
      chain.pop_back();
      scheduled_[j] = 0;
      if (aborted_) return;
    }
    // Close this machine; the last machine must take every remaining job.
    if (machine + 1 < m_) search(machine + 1, 0, std::max(closed_max, load), remaining);
  }

  ExactLimits limits_;
  AdjustedTimes ap_;
  int m_;
  int n_;
  std::vector<std::vector<Time>> cheapest_;
  std::vector<char> scheduled_;
  std::vector<std::vector<int>> chains_;
  std::vector<std::vector<int>> incumbent_chains_;
  Time incumbent_ = 0;
  std::int64_t nodes_ = 0;
  bool aborted_ = false;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

ExactResult solve_exact(const Instance& instance, const ExactLimits& limits) {
  instance.check();
  if (instance.jobs > limits.max_jobs)
    throw std::invalid_argument("solve_exact: instance has more jobs than the exact search allows");
  return BranchAndBound(instance, limits).solve();
}

}  // namespace upmsp
