#pragma once

#include <span>
#include <vector>

#include "parden/moo/types.hpp"

namespace parden::moo {

/// Pareto dominance, minimization: a <= b in every coordinate and a < b in at
/// least one. Identical vectors do not dominate each other.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Non-dominating rank for each input point (rank 0 = non-dominated).
/// A point has rank k iff it is non-dominated once all points of rank < k are
/// removed. Duplicate points share a rank.
std::vector<int> non_dominated_sort(std::span<const ObjectiveVector> points);

/// Indices of the rank-0 points, in input order.
std::vector<std::size_t> rank0_indices(std::span<const ObjectiveVector> points);

}  // namespace parden::moo
