#ifndef UPMSP_UPMSP_HPP
#define UPMSP_UPMSP_HPP

#include "upmsp/bench.hpp"
#include "upmsp/bounds.hpp"
#include "upmsp/engine.hpp"
#include "upmsp/exact.hpp"
#include "upmsp/instance.hpp"
#include "upmsp/neighborhood.hpp"
#include "upmsp/schedule.hpp"
#include "upmsp/types.hpp"

#endif  // UPMSP_UPMSP_HPP
