#include "parden/moo/dominance.hpp"

#include "parden/common/errors.hpp"

namespace parden::moo {

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.size() != b.size())
        throw ContractViolation("dominates: objective length mismatch");
    bool strictly_better = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strictly_better = true;
    }
    return strictly_better;
}

std::vector<int> non_dominated_sort(std::span<const ObjectiveVector> points) {
    const std::size_t n = points.size();
    if (n == 0) throw ContractViolation("non_dominated_sort: empty input");
    for (const auto& p : points) {
        if (p.size() != points[0].size())
            throw ContractViolation("non_dominated_sort: ragged objective lengths");
    }

    // Deb's fast non-dominated sort, O(n^2 m); n is at most a few hundred here.
    std::vector<std::vector<std::size_t>> dominated_by(n);
    std::vector<int> domination_count(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dominates(points[i], points[j])) {
                dominated_by[i].push_back(j);
                ++domination_count[j];
            } else if (dominates(points[j], points[i])) {
                dominated_by[j].push_back(i);
                ++domination_count[i];
            }
        }
    }

    std::vector<int> rank(n, -1);
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i)
        if (domination_count[i] == 0) current.push_back(i);

    int level = 0;
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t i : current) {
            rank[i] = level;
            for (std::size_t j : dominated_by[i]) {
                if (--domination_count[j] == 0) next.push_back(j);
            }
        }
        current = std::move(next);
        ++level;
    }
    return rank;
}

std::vector<std::size_t> rank0_indices(std::span<const ObjectiveVector> points) {
    const auto ranks = non_dominated_sort(points);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < points.size(); ++i)
        if (ranks[i] == 0) out.push_back(i);
    return out;
}

}  // namespace parden::moo
