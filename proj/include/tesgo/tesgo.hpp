#pragma once

// Convenience umbrella for the whole library.

#include "tesgo/dc_problem.hpp"
#include "tesgo/escape.hpp"
#include "tesgo/local_search.hpp"
#include "tesgo/metrics.hpp"
#include "tesgo/min_norm.hpp"
#include "tesgo/problems.hpp"
#include "tesgo/results_io.hpp"
#include "tesgo/solver.hpp"
#include "tesgo/vec.hpp"
