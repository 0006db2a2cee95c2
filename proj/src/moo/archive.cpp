#include "parden/moo/archive.hpp"

#include <cmath>

#include "parden/common/errors.hpp"
#include "parden/moo/dominance.hpp"

namespace parden::moo {

namespace {

bool decisions_match(std::span<const double> a, std::span<const double> b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) > tol) return false;
    }
    return true;
}

}  // namespace

std::size_t Archive::add(Candidate candidate) {
    if (candidate.source != FitnessSource::Simulated)
        throw ContractViolation("Archive::add: entry must be Simulated");
    if (const Candidate* existing = find(candidate.decision)) {
        return static_cast<std::size_t>(existing - entries_.data());
    }
    candidate.eval_index = static_cast<int>(entries_.size());
    entries_.push_back(std::move(candidate));
    return entries_.size() - 1;
}

const Candidate* Archive::find(std::span<const double> decision) const {
    for (const auto& entry : entries_) {
        if (decisions_match(entry.decision, decision, kDedupTolerance)) return &entry;
    }
    return nullptr;
}

ParetoFront pareto_filter(std::span<const Candidate> candidates) {
    std::vector<ObjectiveVector> objectives;
    objectives.reserve(candidates.size());
    for (const auto& c : candidates) {
        if (!c.has_objectives())
            throw ContractViolation("pareto_filter: unevaluated candidate");
        objectives.push_back(c.objectives);
    }
    ParetoFront front;
    if (candidates.empty()) return front;
    for (std::size_t i : rank0_indices(objectives)) front.members.push_back(candidates[i]);
    return front;
}

}  // namespace parden::moo
