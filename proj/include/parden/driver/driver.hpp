#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "parden/moo/archive.hpp"
#include "parden/search/baselines.hpp"
#include "parden/search/metaheuristic.hpp"
#include "parden/surrogate/ndscore.hpp"

namespace parden::driver {

enum class RejectedTellPolicy {
    PredictedTell,    // rejected candidates are told back with predictions
    DiscardRejected,  // rejected candidates are not told at all
};

struct ParDenConfig {
    int warm_start_size = 60;  // the metaheuristic's population size
    long evaluation_budget = 510;
    int cv_folds = 5;
    surrogate::SurrogateSpec surrogate;
    surrogate::RankMetric metric = surrogate::RankMetric::Accuracy;
    std::uint64_t seed = 0;
    RejectedTellPolicy rejected_tell = RejectedTellPolicy::PredictedTell;

    // Pins the acceptance threshold to 0 (every candidate admitted) and logs
    // NDScore as 0; run() then matches run_bare() bit for bit.
    bool force_ndscore_zero = false;

    // Test hook: replaces the surrogate class for fitting and NDScore.
    surrogate::FitFn surrogate_fit_override;
};

struct GenerationLog {
    int generation = 0;
    int candidates_proposed = 0;
    int pretenders_evaluated = 0;
    long cumulative_evaluations = 0;
    long archive_size = 0;
    double ndscore = 0.0;
    std::vector<moo::ObjectiveVector> front_snapshot;
    std::optional<double> hv, gd_plus, igd_plus;  // filled by the harness
};

struct RunResult {
    moo::ParetoFront front;
    moo::Archive archive;
    std::vector<GenerationLog> logs;
};

/// The surrogate-assisted loop: warm start simulated in full, then per
/// generation only the pretenders (candidates in the joint predicted front
/// plus acceptance-sampled extras with NDScore as the threshold) reach the
/// simulator; everything proposed is told back to the metaheuristic.
RunResult run(search::Metaheuristic& metaheuristic, const search::BatchFn& evaluate,
              const ParDenConfig& config);

/// The non-assisted baseline: the same loop and accounting with every asked
/// candidate simulated.
RunResult run_bare(search::Metaheuristic& metaheuristic, const search::BatchFn& evaluate,
                   const ParDenConfig& config);

}  // namespace parden::driver
