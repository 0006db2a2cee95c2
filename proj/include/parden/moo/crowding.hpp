#pragma once

#include <span>
#include <vector>

#include "parden/moo/types.hpp"

namespace parden::moo {

/// Manhattan crowding distance over a mutually non-dominated front.
/// Per objective, the sorted extremes get +infinity and interior points
/// accumulate (next - previous) / (max - min); a zero-range objective
/// contributes nothing. Fewer than 3 points: all +infinity.
std::vector<double> crowding_distance(std::span<const ObjectiveVector> front);

}  // namespace parden::moo
