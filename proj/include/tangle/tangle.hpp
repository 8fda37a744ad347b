#pragma once

#include "tangle/tolerances.hpp"
#include "tangle/linalg.hpp"
#include "tangle/rindler.hpp"
#include "tangle/channels.hpp"
#include "tangle/measures.hpp"
#include "tangle/analytic.hpp"
#include "tangle/grid.hpp"
#include "tangle/sweep.hpp"
