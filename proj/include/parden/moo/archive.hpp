#pragma once

#include <span>
#include <vector>

#include "parden/moo/types.hpp"

namespace parden::moo {

/// The ground-truth set of simulation-evaluated candidates, in evaluation
/// order. Duplicate decisions (every coordinate within 1e-12 absolute)
/// collapse to the first entry; eval_index is the insertion order.
class Archive {
public:
    static constexpr double kDedupTolerance = 1e-12;

    /// Adds a Simulated candidate; returns the index of the stored entry
    /// (the existing one if the decision duplicates a previous entry).
    std::size_t add(Candidate candidate);

    /// Entry whose decision matches within the dedup tolerance, or nullptr.
    const Candidate* find(std::span<const double> decision) const;

    const std::vector<Candidate>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

private:
    std::vector<Candidate> entries_;
};

/// A set of mutually non-dominated candidates.
struct ParetoFront {
    std::vector<Candidate> members;

    std::vector<ObjectiveVector> objectives() const {
        std::vector<ObjectiveVector> out;
        out.reserve(members.size());
        for (const auto& c : members) out.push_back(c.objectives);
        return out;
    }
};

/// Rank-0 candidates of the input; ties (identical objectives) all retained.
/// Throws if any candidate lacks objectives.
ParetoFront pareto_filter(std::span<const Candidate> candidates);

}  // namespace parden::moo
