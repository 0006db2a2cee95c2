#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "parden/moo/archive.hpp"
#include "parden/surrogate/surrogate.hpp"

namespace parden::surrogate {

enum class RankMetric { Accuracy, MacroF1 };

struct NdScoreValue {
    double value = 0.0;             // min over folds, in [0, 1]
    std::vector<double> per_fold;
    RankMetric metric = RankMetric::Accuracy;
    std::string degenerate_reason;  // set when the score defaulted to 0
};

/// Classification score between true and predicted non-dominating ranks.
/// Accuracy: fraction of exact rank matches. MacroF1: mean per-label F1 over
/// the union of observed labels.
double rank_match_score(const std::vector<int>& true_ranks,
                        const std::vector<int>& predicted_ranks, RankMetric metric);

/// A fold model: maps validation decisions to predicted objectives.
using PredictFn = std::function<std::vector<moo::ObjectiveVector>(
    const std::vector<std::vector<double>>&)>;
/// Trains a fold model on the training split.
using FitFn = std::function<PredictFn(const std::vector<std::vector<double>>&,
                                      const std::vector<moo::ObjectiveVector>&)>;

/// k-fold cross-validated rank-preservation score of a surrogate class on
/// the archive: per fold, fit on the training split, predict the validation
/// decisions, compare the non-dominating ranks of true versus predicted
/// validation objectives, aggregate by the minimum. Returns 0 (with a
/// reason) when the archive is smaller than 2k.
NdScoreValue ndscore_with(const FitFn& fit, const moo::Archive& archive, int k_folds,
                          RankMetric metric, std::uint64_t seed);

/// ndscore_with using the configured surrogate kind as the model class.
NdScoreValue ndscore(const SurrogateSpec& spec, const moo::Archive& archive, int k_folds,
                     RankMetric metric, std::uint64_t seed);

}  // namespace parden::surrogate
