#pragma once

// Budget-constrained solver allocation: the -ln(1-p)/c metric, exact and
// LP budget allocation, exact binomial intervals, power-law cost fitting,
// strategy simulation, and run-log reporting.

#include "relia/allocate.hpp"
#include "relia/binomial.hpp"
#include "relia/cost_model.hpp"
#include "relia/crossover.hpp"
#include "relia/curves.hpp"
#include "relia/json_io.hpp"
#include "relia/profile.hpp"
#include "relia/rng.hpp"
#include "relia/run_log.hpp"
#include "relia/simulate.hpp"
#include "relia/text.hpp"
