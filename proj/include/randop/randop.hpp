#pragma once

// Umbrella header for the whole library.

#include "randop/conditional.hpp"
#include "randop/continuity.hpp"
#include "randop/graph.hpp"
#include "randop/report.hpp"
#include "randop/scenario.hpp"
