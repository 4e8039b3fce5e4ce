#pragma once

// Umbrella header.

#include "stablecode/bounds.hpp"
#include "stablecode/combinatorics.hpp"
#include "stablecode/encoder.hpp"
#include "stablecode/errors.hpp"
#include "stablecode/graph.hpp"
#include "stablecode/region.hpp"
