#pragma once

#include <cstdint>
#include <functional>

#include "parden/moo/archive.hpp"

namespace parden::search {

/// Batch objective evaluation over encoded decision vectors; results in
/// input order.
using BatchFn =
    std::function<std::vector<moo::ObjectiveVector>(const std::vector<std::vector<double>>&)>;

/// Evaluates the full Cartesian product over encoded axes {i/(p-1)}, in
/// lexicographic order (last axis fastest). Refuses when points_per_axis^dims
/// exceeds the budget cap.
moo::Archive grid_search(int dims, int points_per_axis, long budget_cap,
                         const BatchFn& evaluate);

/// n independent uniform samples in encoded space; the reference-front
/// generator.
moo::Archive random_search(int dims, int n, std::uint64_t seed, const BatchFn& evaluate);

}  // namespace parden::search
