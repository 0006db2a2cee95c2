#include "parden/search/baselines.hpp"

#include <string>

#include "parden/common/errors.hpp"
#include "parden/common/rng.hpp"

namespace parden::search {

namespace {

moo::Archive archive_from(const std::vector<std::vector<double>>& xs, const BatchFn& evaluate) {
    const auto objectives = evaluate(xs);
    if (objectives.size() != xs.size())
        throw ContractViolation("baseline: evaluator returned wrong result count");
    moo::Archive archive;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        moo::Candidate c;
        c.decision = xs[i];
        c.objectives = objectives[i];
        c.source = moo::FitnessSource::Simulated;
        archive.add(std::move(c));
    }
    return archive;
}

}  // namespace

moo::Archive grid_search(int dims, int points_per_axis, long budget_cap,
                         const BatchFn& evaluate) {
    if (points_per_axis < 2)
        throw ContractViolation("grid_search: points_per_axis must be >= 2");
    double total = 1.0;
    for (int k = 0; k < dims; ++k) total *= points_per_axis;
    if (total > static_cast<double>(budget_cap)) {
        throw ConfigError("grid_search: " + std::to_string(points_per_axis) + "^" +
                          std::to_string(dims) + " = " +
                          std::to_string(static_cast<long>(total)) +
                          " evaluations exceeds the budget cap of " +
                          std::to_string(budget_cap));
    }

    const auto n_points = static_cast<std::size_t>(total);
    std::vector<std::vector<double>> xs;
    xs.reserve(n_points);
    std::vector<int> index(static_cast<std::size_t>(dims), 0);
    for (std::size_t p = 0; p < n_points; ++p) {
        std::vector<double> x(static_cast<std::size_t>(dims));
        for (int k = 0; k < dims; ++k)
            x[static_cast<std::size_t>(k)] = static_cast<double>(index[static_cast<std::size_t>(k)]) /
                                             static_cast<double>(points_per_axis - 1);
        xs.push_back(std::move(x));
        for (int k = dims - 1; k >= 0; --k) {  // last axis fastest
            if (++index[static_cast<std::size_t>(k)] < points_per_axis) break;
            index[static_cast<std::size_t>(k)] = 0;
        }
    }
    return archive_from(xs, evaluate);
}

moo::Archive random_search(int dims, int n, std::uint64_t seed, const BatchFn& evaluate) {
    if (n < 1) throw ContractViolation("random_search: n must be >= 1");
    Rng rng(mix_seed(seed, 0x52414e44ULL));
    std::vector<std::vector<double>> xs(static_cast<std::size_t>(n),
                                        std::vector<double>(static_cast<std::size_t>(dims)));
    for (auto& x : xs)
        for (auto& v : x) v = rng.uniform01();
    return archive_from(xs, evaluate);
}

}  // namespace parden::search
