#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "upmsp/neighborhood.hpp"

using namespace upmsp;
using upmsp::testing::t1;

namespace {

std::vector<int> job_multiset(const Schedule& s) {
  std::vector<int> jobs;
  for (const auto& seq : s.sequences) jobs.insert(jobs.end(), seq.begin(), seq.end());
  std::sort(jobs.begin(), jobs.end());
  return jobs;
}

Schedule random_schedule(const Instance& inst, Rng& rng) {
  std::uniform_real_distribution<double> key(0.0, inst.machines);
  KeyVector keys(inst.jobs);
  for (int j = 0; j < inst.jobs; ++j) keys(j) = key(rng);
  return decode(keys, inst);
}

}  // namespace

TEST_CASE("roulette probabilities follow the weights") {
  const std::array<double, 3> weights{1.0, 2.0, 3.0};
  const std::array<double, 3> expected{1.0 / 6, 1.0 / 3, 1.0 / 2};
  Rng rng(2024);
  constexpr int draws = 100000;
  std::array<int, 3> counts{};
  for (int i = 0; i < draws; ++i) ++counts[roulette_select(weights, rng)];
  for (int i = 0; i < 3; ++i) {
    const double sigma = std::sqrt(draws * expected[i] * (1 - expected[i]));
    CHECK(std::abs(counts[i] - draws * expected[i]) <= 3 * sigma);
  }
}

TEST_CASE("roulette with a single support point") {
  const std::array<double, 3> weights{0.0, 0.0, 5.0};
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) CHECK(roulette_select(weights, rng) == 2);
}

TEST_CASE("roulette rejects all-zero weights") {
  const std::array<double, 2> weights{0.0, 0.0};
  Rng rng(1);
  CHECK_THROWS_WITH_AS(roulette_select(weights, rng), "degenerate roulette", std::invalid_argument);
}

TEST_CASE("scheme probabilities") {
  const SchemeProbabilities p;
  CHECK(p.swap == doctest::Approx(0.2));
  CHECK(p.revert == doctest::Approx(0.5));
  CHECK(p.insert == doctest::Approx(0.3));
  CHECK_NOTHROW(p.check());
  CHECK(SchemeProbabilities::from_swap_revert(0.1, 0.1).insert == doctest::Approx(0.8));
  CHECK_THROWS(SchemeProbabilities::from_swap_revert(0.7, 0.5));
}

TEST_CASE("move budget is rounded from the machine count") {
  LocalSearchConfig c;
  CHECK(c.move_budget(1) == 1);
  CHECK(c.move_budget(2) == 1);
  CHECK(c.move_budget(10) == 7);
  c.budget_factor = 0.5;
  CHECK(c.move_budget(12) == 6);
}

TEST_CASE("swap exchanges machine and position") {
  const Schedule s = from_sequences(3, {{0}, {1, 2}});
  const Schedule out = apply_swap(s, {0, 0}, {1, 1});
  CHECK(out.sequences[0] == std::vector<int>{2});
  CHECK(out.sequences[1] == std::vector<int>{1, 0});
  CHECK(is_valid(out, t1()));
  CHECK(apply_swap(out, {0, 0}, {1, 1}) == s);
  CHECK_THROWS_AS(apply_swap(s, {0, 1}, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(apply_swap(s, {1, 0}, {1, 1}), std::invalid_argument);
}

TEST_CASE("insert moves a job between and within machines") {
  const Schedule s = from_sequences(3, {{0}, {1, 2}});
  const Schedule out = apply_insert(s, {1, 1}, 0, 0);
  CHECK(out.sequences[0] == std::vector<int>{2, 0});
  CHECK(out.sequences[1] == std::vector<int>{1});
  CHECK(out.assignment[2] == 0);
  CHECK(is_valid(out, t1()));

  CHECK(apply_insert(s, {0, 0}, 0, 0) == s);
  CHECK(apply_insert(s, {1, 1}, 1, 0).sequences[1] == std::vector<int>{2, 1});
  CHECK_THROWS_AS(apply_insert(s, {0, 0}, 1, 4), std::invalid_argument);
  CHECK_THROWS_AS(apply_insert(s, {0, 3}, 1, 0), std::invalid_argument);
}

TEST_CASE("revert reverses a span in place") {
  const Schedule s = from_sequences(8, {{1, 2, 4, 6}, {0, 3, 5, 7}});
  const Schedule out = apply_revert(s, 0, 1, 3);
  CHECK(out.sequences[0] == std::vector<int>{1, 6, 4, 2});
  CHECK(apply_revert(s, 0, 2, 2) == s);
  CHECK(apply_revert(out, 0, 1, 3) == s);
  CHECK_THROWS_AS(apply_revert(s, 0, 2, 4), std::invalid_argument);
  CHECK_THROWS_AS(apply_revert(s, 0, 3, 2), std::invalid_argument);
}

TEST_CASE("random moves conserve the job multiset") {
  Rng rng(3);
  const Instance inst = upmsp::testing::tiny(5, 3, 9);
  for (int trial = 0; trial < 300; ++trial) {
    const Schedule s = random_schedule(inst, rng);
    const auto jobs = job_multiset(s);
    std::vector<int> busy;
    for (int k = 0; k < 3; ++k)
      if (!s.sequences[k].empty()) busy.push_back(k);
    const int a = busy[trial % busy.size()];
    const int la = static_cast<int>(s.sequences[a].size());
    const Schedule ins = apply_insert(s, {a, trial % la}, (a + 1) % 3, 0);
    CHECK(job_multiset(ins) == jobs);
    CHECK(is_valid(ins, inst));
    if (busy.size() > 1) {
      const int b = busy[(trial + 1) % busy.size()];
      if (b != a) {
        const Schedule sw = apply_swap(s, {a, 0}, {b, 0});
        CHECK(job_multiset(sw) == jobs);
        CHECK(is_valid(sw, inst));
      }
    }
    const Schedule rv = apply_revert(s, a, 0, la - 1);
    CHECK(job_multiset(rv) == jobs);
  }
}

TEST_CASE("improve never worsens and keeps schedules valid") {
  Rng rng(8);
  LocalSearchConfig config;
  for (int trial = 0; trial < 300; ++trial) {
    const Instance inst = upmsp::testing::tiny(trial, 1 + trial % 4, 2 + trial % 9, 1, 50);
    const auto ap = adjusted_times(inst);
    const Schedule s = random_schedule(inst, rng);
    int evaluations = 0;
    Schedule out = s;
    const Time before = makespan(s, ap);
    const Time after = improve_in_place(out, before, config, rng, [&](const Schedule& c) -> std::optional<Time> {
      ++evaluations;
      CHECK(is_valid(c, inst));
      return makespan(c, ap);
    });
    CHECK(after <= before);
    CHECK(after == makespan(out, ap));
    CHECK(is_valid(out, inst));
    CHECK(job_multiset(out) == job_multiset(s));
  }
}

TEST_CASE("improve is deterministic for a seed") {
  const Instance inst = upmsp::testing::tiny(31, 3, 8, 1, 40);
  const auto ap = adjusted_times(inst);
  Rng seed_rng(4);
  const Schedule s = random_schedule(inst, seed_rng);
  LocalSearchConfig config;
  config.passes = 5;
  Rng a(99), b(99);
  CHECK(improve(s, ap, config, a) == improve(s, ap, config, b));
}

TEST_CASE("improve on T1 from a single loaded machine approaches the optimum") {
  const Instance inst = t1();
  const auto ap = adjusted_times(inst);
  const Schedule start = from_sequences(3, {{0, 1, 2}, {}});
  LocalSearchConfig config;
  config.passes = 200;
  Rng rng(12);
  const Schedule out = improve(start, ap, config, rng);
  CHECK(makespan(out, ap) <= makespan(start, ap));
  CHECK(makespan(out, ap) >= 10);
  CHECK(makespan(out, ap) == 10);
}

TEST_CASE("single machine: only permutations of the input") {
  const Instance inst = upmsp::testing::tiny(6, 1, 7);
  const auto ap = adjusted_times(inst);
  const Schedule start = from_sequences(7, {{6, 5, 4, 3, 2, 1, 0}});
  LocalSearchConfig config;
  config.passes = 20;
  Rng rng(5);
  const Schedule out = improve(start, ap, config, rng);
  CHECK(job_multiset(out) == job_multiset(start));
  CHECK(out.sequences[0].size() == 7);
  CHECK(makespan(out, ap) <= makespan(start, ap));
}

TEST_CASE("an exhausted evaluator stops the search") {
  const Instance inst = upmsp::testing::tiny(2, 2, 6);
  const auto ap = adjusted_times(inst);
  Schedule s = from_sequences(6, {{0, 1, 2, 3, 4, 5}, {}});
  LocalSearchConfig config;
  config.passes = 50;
  Rng rng(1);
  int calls = 0;
  const Time start = makespan(s, ap);
  const Time out = improve_in_place(s, start, config, rng, [&](const Schedule& c) -> std::optional<Time> {
    if (calls == 3) return std::nullopt;
    ++calls;
    return makespan(c, ap);
  });
  CHECK(calls == 3);
  CHECK(out <= start);
}
