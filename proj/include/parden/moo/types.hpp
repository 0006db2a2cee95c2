#pragma once

#include <optional>
#include <vector>

namespace parden::moo {

/// A point in objective space. Minimization convention for every coordinate;
/// the backtest negates return% at its boundary so both objectives minimize.
using ObjectiveVector = std::vector<double>;

enum class FitnessSource { Unevaluated, Simulated, SurrogatePredicted };

/// A decision vector (encoded search coordinates in [0,1]^d) together with
/// its fitness, if any, and where that fitness came from.
struct Candidate {
    std::vector<double> decision;
    ObjectiveVector objectives;  // empty iff source == Unevaluated
    FitnessSource source = FitnessSource::Unevaluated;
    std::optional<int> eval_index;  // simulation order; set iff Simulated

    bool has_objectives() const { return source != FitnessSource::Unevaluated; }
};

}  // namespace parden::moo
