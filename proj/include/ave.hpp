/**
 * @file
 * @brief Umbrella header for the AVE solver library.
 */

#pragma once

#include "ave/alpha_table.hpp"
#include "ave/core.hpp"
#include "ave/factor.hpp"
#include "ave/linsolve.hpp"
#include "ave/problems.hpp"
#include "ave/solvers.hpp"
#include "ave/splitting.hpp"
#include "ave/tuning.hpp"
