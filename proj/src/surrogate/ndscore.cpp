#include "parden/surrogate/ndscore.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "parden/common/errors.hpp"
#include "parden/common/rng.hpp"
#include "parden/moo/dominance.hpp"

namespace parden::surrogate {

double rank_match_score(const std::vector<int>& true_ranks,
                        const std::vector<int>& predicted_ranks, RankMetric metric) {
    if (true_ranks.size() != predicted_ranks.size() || true_ranks.empty())
        throw ContractViolation("rank_match_score: size mismatch or empty");

    if (metric == RankMetric::Accuracy) {
        std::size_t hits = 0;
        for (std::size_t i = 0; i < true_ranks.size(); ++i)
            if (true_ranks[i] == predicted_ranks[i]) ++hits;
        return static_cast<double>(hits) / static_cast<double>(true_ranks.size());
    }

    std::set<int> labels(true_ranks.begin(), true_ranks.end());
    labels.insert(predicted_ranks.begin(), predicted_ranks.end());
    double f1_sum = 0.0;
    for (int label : labels) {
        std::size_t tp = 0, fp = 0, fn = 0;
        for (std::size_t i = 0; i < true_ranks.size(); ++i) {
            const bool truth = true_ranks[i] == label;
            const bool pred = predicted_ranks[i] == label;
            tp += truth && pred;
            fp += !truth && pred;
            fn += truth && !pred;
        }
        const double denom = static_cast<double>(2 * tp + fp + fn);
        f1_sum += denom > 0.0 ? 2.0 * static_cast<double>(tp) / denom : 0.0;
    }
    return f1_sum / static_cast<double>(labels.size());
}

NdScoreValue ndscore_with(const FitFn& fit, const moo::Archive& archive, int k_folds,
                          RankMetric metric, std::uint64_t seed) {
    NdScoreValue result;
    result.metric = metric;
    const std::size_t n = archive.size();
    if (k_folds < 2) throw ContractViolation("ndscore: k_folds must be >= 2");
    if (n < 2 * static_cast<std::size_t>(k_folds)) {
        result.value = 0.0;
        result.degenerate_reason = "archive smaller than 2k";
        return result;
    }

    // Deterministic shuffled split.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    Rng rng(mix_seed(seed, 0x43564b46ULL));
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = rng.below(i);
        std::swap(order[i - 1], order[j]);
    }

    const auto& entries = archive.entries();
    double min_score = 1.0;
    for (int fold = 0; fold < k_folds; ++fold) {
        const std::size_t lo = (static_cast<std::size_t>(fold) * n) /
                               static_cast<std::size_t>(k_folds);
        const std::size_t hi = (static_cast<std::size_t>(fold + 1) * n) /
                               static_cast<std::size_t>(k_folds);

        std::vector<std::vector<double>> train_x, val_x;
        std::vector<moo::ObjectiveVector> train_y, val_y;
        for (std::size_t pos = 0; pos < n; ++pos) {
            const auto& entry = entries[order[pos]];
            if (pos >= lo && pos < hi) {
                val_x.push_back(entry.decision);
                val_y.push_back(entry.objectives);
            } else {
                train_x.push_back(entry.decision);
                train_y.push_back(entry.objectives);
            }
        }

        const auto predictor = fit(train_x, train_y);
        const auto predicted = predictor(val_x);
        const auto true_ranks = moo::non_dominated_sort(val_y);
        const auto predicted_ranks = moo::non_dominated_sort(predicted);
        const double score = rank_match_score(true_ranks, predicted_ranks, metric);
        result.per_fold.push_back(score);
        min_score = std::min(min_score, score);
    }
    result.value = min_score;
    return result;
}

NdScoreValue ndscore(const SurrogateSpec& spec, const moo::Archive& archive, int k_folds,
                     RankMetric metric, std::uint64_t seed) {
    const FitFn fit = [&spec](const std::vector<std::vector<double>>& x,
                              const std::vector<moo::ObjectiveVector>& y) -> PredictFn {
        auto model = FittedSurrogate::fit(spec, x, y);
        return [model = std::move(model)](const std::vector<std::vector<double>>& q) {
            return model.predict(q);
        };
    };
    return ndscore_with(fit, archive, k_folds, metric, seed);
}

}  // namespace parden::surrogate
