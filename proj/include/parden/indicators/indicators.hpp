#pragma once

#include <optional>
#include <span>
#include <vector>

#include "parden/moo/types.hpp"

namespace parden::indicators {

/// Dominance-clipped distance d+(a, z) = sqrt(sum_k max(a_k - z_k, 0)^2).
double d_plus(const moo::ObjectiveVector& a, const moo::ObjectiveVector& z);

/// GD+: mean over front points of the d+ distance to the closest reference
/// point. Zero whenever the front dominates the reference ("semi Pareto
/// respecting").
double gd_plus(std::span<const moo::ObjectiveVector> front,
               std::span<const moo::ObjectiveVector> reference);

/// IGD+: mean over reference points of the closest front point's d+.
double igd_plus(std::span<const moo::ObjectiveVector> front,
                std::span<const moo::ObjectiveVector> reference);

/// Exact bi-objective hypervolume against a reference point; points that do
/// not weakly dominate the reference are clipped out. Empty effective front
/// gives 0.
double hypervolume_2d(std::span<const moo::ObjectiveVector> front,
                      const moo::ObjectiveVector& reference_point);

/// Contribution of each front member to the front's hypervolume.
std::vector<double> hypervolume_contributions_2d(std::span<const moo::ObjectiveVector> front,
                                                 const moo::ObjectiveVector& reference_point);

struct ReferenceSet {
    std::vector<moo::ObjectiveVector> front;
    moo::ObjectiveVector hv_reference_point;
};

/// Componentwise worst point over the given fronts, pushed out by a margin
/// fraction of each coordinate's range.
moo::ObjectiveVector worst_point_with_margin(
    const std::vector<std::span<const moo::ObjectiveVector>>& sets, double margin = 0.1);

/// Minimal view of one run for quality accounting: per generation, the
/// cumulative simulation count and the front snapshot.
struct RunTrace {
    struct Generation {
        int generation = 0;
        long cumulative_evaluations = 0;
        std::vector<moo::ObjectiveVector> front;
    };
    std::vector<Generation> generations;
};

struct RunOutcome {
    bool success = false;
    long evaluations_at_success = 0;
    int generation_at_success = 0;
    double final_hv = 0.0;
};

struct QualityReport {
    double success_rate_percent = 0.0;
    std::optional<double> aesr;  // mean evaluations at first success
    std::optional<double> agsr;  // mean generation index at first success
    std::vector<RunOutcome> per_run;
};

/// A run succeeds at level q iff any generation's front hypervolume reaches
/// (q/100) * HV(reference front), both measured against the reference set's
/// fixed hv_reference_point. Runs that never succeed are excluded from the
/// AESR/AGSR means.
QualityReport quality_report(const std::vector<RunTrace>& runs, const ReferenceSet& reference,
                             double q_percent);

}  // namespace parden::indicators
