#include "parden/indicators/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "parden/common/errors.hpp"
#include "parden/moo/dominance.hpp"

namespace parden::indicators {

double d_plus(const moo::ObjectiveVector& a, const moo::ObjectiveVector& z) {
    if (a.size() != z.size()) throw ContractViolation("d_plus: length mismatch");
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double clipped = std::max(a[k] - z[k], 0.0);
        sum += clipped * clipped;
    }
    return std::sqrt(sum);
}

double gd_plus(std::span<const moo::ObjectiveVector> front,
               std::span<const moo::ObjectiveVector> reference) {
    if (front.empty() || reference.empty())
        throw ContractViolation("gd_plus: empty front or reference");
    double total = 0.0;
    for (const auto& a : front) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& z : reference) best = std::min(best, d_plus(a, z));
        total += best;
    }
    return total / static_cast<double>(front.size());
}

double igd_plus(std::span<const moo::ObjectiveVector> front,
                std::span<const moo::ObjectiveVector> reference) {
    if (front.empty() || reference.empty())
        throw ContractViolation("igd_plus: empty front or reference");
    double total = 0.0;
    for (const auto& z : reference) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& a : front) best = std::min(best, d_plus(a, z));
        total += best;
    }
    return total / static_cast<double>(reference.size());
}

namespace {

// Maximal (non-dominated, deduplicated) subset of points weakly dominating
// the reference, sorted by the first objective ascending.
std::vector<moo::ObjectiveVector> sweep_front(std::span<const moo::ObjectiveVector> front,
                                              const moo::ObjectiveVector& ref) {
    std::vector<moo::ObjectiveVector> pts;
    for (const auto& a : front) {
        if (a.size() != 2) throw ContractViolation("hypervolume_2d: requires 2 objectives");
        if (a[0] <= ref[0] && a[1] <= ref[1]) pts.push_back(a);
    }
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
    });
    std::vector<moo::ObjectiveVector> maximal;
    for (const auto& p : pts) {
        if (!maximal.empty() && p[1] >= maximal.back()[1]) continue;  // dominated or duplicate
        maximal.push_back(p);
    }
    return maximal;
}

}  // namespace

double hypervolume_2d(std::span<const moo::ObjectiveVector> front,
                      const moo::ObjectiveVector& reference_point) {
    if (reference_point.size() != 2)
        throw ContractViolation("hypervolume_2d: reference point must have 2 coordinates");
    const auto pts = sweep_front(front, reference_point);
    double area = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double next_x = (i + 1 < pts.size()) ? pts[i + 1][0] : reference_point[0];
        area += (next_x - pts[i][0]) * (reference_point[1] - pts[i][1]);
    }
    return area;
}

std::vector<double> hypervolume_contributions_2d(std::span<const moo::ObjectiveVector> front,
                                                 const moo::ObjectiveVector& reference_point) {
    std::vector<double> out(front.size(), 0.0);
    const double total = hypervolume_2d(front, reference_point);
    std::vector<moo::ObjectiveVector> rest;
    rest.reserve(front.size());
    for (std::size_t i = 0; i < front.size(); ++i) {
        rest.clear();
        for (std::size_t j = 0; j < front.size(); ++j)
            if (j != i) rest.push_back(front[j]);
        out[i] = total - hypervolume_2d(rest, reference_point);
    }
    return out;
}

moo::ObjectiveVector worst_point_with_margin(
    const std::vector<std::span<const moo::ObjectiveVector>>& sets, double margin) {
    std::size_t m = 0;
    for (const auto& s : sets)
        if (!s.empty()) m = s.front().size();
    if (m == 0) throw ContractViolation("worst_point_with_margin: all sets empty");

    moo::ObjectiveVector lo(m, std::numeric_limits<double>::infinity());
    moo::ObjectiveVector hi(m, -std::numeric_limits<double>::infinity());
    for (const auto& s : sets) {
        for (const auto& y : s) {
            for (std::size_t j = 0; j < m; ++j) {
                lo[j] = std::min(lo[j], y[j]);
                hi[j] = std::max(hi[j], y[j]);
            }
        }
    }
    moo::ObjectiveVector out(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double range = std::max(hi[j] - lo[j], 1e-12);
        out[j] = hi[j] + margin * range;
    }
    return out;
}

QualityReport quality_report(const std::vector<RunTrace>& runs, const ReferenceSet& reference,
                             double q_percent) {
    if (runs.empty()) throw ContractViolation("quality_report: no runs");
    const double hv_ref = hypervolume_2d(reference.front, reference.hv_reference_point);
    const double threshold = (q_percent / 100.0) * hv_ref;

    QualityReport report;
    int successes = 0;
    double sum_evals = 0.0, sum_gens = 0.0;
    for (const auto& run : runs) {
        RunOutcome outcome;
        for (const auto& gen : run.generations) {
            const double hv = hypervolume_2d(gen.front, reference.hv_reference_point);
            if (!outcome.success && hv >= threshold) {
                outcome.success = true;
                outcome.evaluations_at_success = gen.cumulative_evaluations;
                outcome.generation_at_success = gen.generation;
            }
            if (&gen == &run.generations.back()) outcome.final_hv = hv;
        }
        if (outcome.success) {
            ++successes;
            sum_evals += static_cast<double>(outcome.evaluations_at_success);
            sum_gens += static_cast<double>(outcome.generation_at_success);
        }
        report.per_run.push_back(outcome);
    }
    report.success_rate_percent = 100.0 * successes / static_cast<double>(runs.size());
    if (successes > 0) {
        report.aesr = sum_evals / successes;
        report.agsr = sum_gens / successes;
    }
    return report;
}

}  // namespace parden::indicators
