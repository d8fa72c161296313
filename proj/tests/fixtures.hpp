#ifndef UPMSP_TESTS_FIXTURES_HPP
#define UPMSP_TESTS_FIXTURES_HPP

#include <string>

#include "upmsp/instance.hpp"

namespace upmsp::testing {

inline const std::string kT1Text =
    "UPMSP v1\n"
    "m 2 n 3\n"
    "name T1\n"
    "P\n"
    "4 6\n"
    "5 3\n"
    "7 4\n"
    "S 1\n"
    "1 1 1\n"
    "0 2 2\n"
    "2 0 2\n"
    "2 2 0\n"
    "S 2\n"
    "2 2 2\n"
    "0 1 1\n"
    "1 0 1\n"
    "1 1 0\n";

inline Instance t1() { return parse(kT1Text); }

inline Instance tiny(std::uint64_t seed, int machines, int jobs, Time low = 1, Time high = 9) {
  GeneratorSpec g;
  g.seed = seed;
  g.machines = machines;
  g.jobs = jobs;
  g.p_low = low;
  g.p_high = high;
  g.s_low = low;
  g.s_high = high;
  return generate(g);
}

}  // namespace upmsp::testing

#endif
