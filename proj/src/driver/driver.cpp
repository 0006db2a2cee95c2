#include "parden/driver/driver.hpp"

#include <algorithm>
#include <cmath>

#include "parden/common/errors.hpp"
#include "parden/common/rng.hpp"
#include "parden/moo/dominance.hpp"

namespace parden::driver {

namespace {

constexpr int kMaxGenerations = 10000;

void check_finite(const std::vector<moo::ObjectiveVector>& ys) {
    for (const auto& y : ys)
        for (double v : y)
            if (!std::isfinite(v))
                throw ContractViolation("driver: evaluator returned non-finite objectives");
}

surrogate::FitFn surrogate_fitter(const ParDenConfig& config) {
    if (config.surrogate_fit_override) return config.surrogate_fit_override;
    const auto spec = config.surrogate;
    return [spec](const std::vector<std::vector<double>>& x,
                  const std::vector<moo::ObjectiveVector>& y) -> surrogate::PredictFn {
        auto model = surrogate::FittedSurrogate::fit(spec, x, y);
        return [model = std::move(model)](const std::vector<std::vector<double>>& q) {
            return model.predict(q);
        };
    };
}

RunResult run_engine(search::Metaheuristic& meta, const search::BatchFn& evaluate,
                     const ParDenConfig& config, bool assisted) {
    if (config.evaluation_budget < config.warm_start_size)
        throw ConfigError("evaluation budget smaller than the warm start");
    if (config.cv_folds < 2) throw ConfigError("cv_folds must be >= 2");

    RunResult result;
    Rng accept_rng(mix_seed(config.seed, 0x414343ULL));  // acceptance-sampling stream
    const std::uint64_t cv_seed = mix_seed(config.seed, 0x435646ULL);
    const auto fitter = assisted ? surrogate_fitter(config) : surrogate::FitFn{};

    long evaluations = 0;
    double nd_score = 0.0;
    surrogate::PredictFn predictor;

    // Evaluates a batch and stores it; returns archive indices (duplicates
    // collapse onto the existing entry).
    const auto simulate = [&](const std::vector<std::vector<double>>& xs)
        -> std::vector<std::size_t> {
        const auto ys = evaluate(xs);
        if (ys.size() != xs.size())
            throw ContractViolation("driver: evaluator returned wrong result count");
        check_finite(ys);
        evaluations += static_cast<long>(xs.size());
        std::vector<std::size_t> stored;
        stored.reserve(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            moo::Candidate c;
            c.decision = xs[i];
            c.objectives = ys[i];
            c.source = moo::FitnessSource::Simulated;
            stored.push_back(result.archive.add(std::move(c)));
        }
        return stored;
    };

    const auto refit = [&]() {
        if (!assisted) return;
        std::vector<std::vector<double>> xs;
        std::vector<moo::ObjectiveVector> ys;
        xs.reserve(result.archive.size());
        ys.reserve(result.archive.size());
        for (const auto& entry : result.archive.entries()) {
            xs.push_back(entry.decision);
            ys.push_back(entry.objectives);
        }
        predictor = fitter(xs, ys);
    };

    const auto snapshot_log = [&](int gen, int proposed, int evaluated) {
        GenerationLog log;
        log.generation = gen;
        log.candidates_proposed = proposed;
        log.pretenders_evaluated = evaluated;
        log.cumulative_evaluations = evaluations;
        log.archive_size = static_cast<long>(result.archive.size());
        log.ndscore = nd_score;
        log.front_snapshot = result.front.objectives();
        result.logs.push_back(std::move(log));
    };

    // Warm start: the metaheuristic's first ask, simulated in full.
    const auto warm = meta.ask();
    if (static_cast<long>(warm.size()) > config.evaluation_budget)
        throw ConfigError("evaluation budget smaller than the warm start");
    const auto warm_entries = simulate(warm);
    {
        std::vector<moo::Candidate> told;
        told.reserve(warm_entries.size());
        for (std::size_t idx : warm_entries) told.push_back(result.archive.entries()[idx]);
        meta.tell(told);
    }
    result.front = moo::pareto_filter(result.archive.entries());
    nd_score = 0.0;
    refit();
    snapshot_log(0, static_cast<int>(warm.size()), static_cast<int>(warm.size()));

    int generation = 0;
    while (evaluations < config.evaluation_budget && generation < kMaxGenerations) {
        ++generation;
        const auto proposals = meta.ask();
        const int n_proposed = static_cast<int>(proposals.size());

        // Which proposals reach the simulator.
        std::vector<char> is_pretender(proposals.size(), 0);
        std::vector<char> predicted_rank0(proposals.size(), 0);
        std::vector<moo::ObjectiveVector> predictions;
        if (assisted) {
            predictions = predictor(proposals);
            check_finite(predictions);
            // Join candidates with the current non-dominated set and re-sort.
            std::vector<moo::ObjectiveVector> joint = predictions;
            for (const auto& member : result.front.members)
                joint.push_back(member.objectives);
            const auto ranks = moo::non_dominated_sort(joint);
            const double threshold = config.force_ndscore_zero ? 0.0 : nd_score;
            for (std::size_t i = 0; i < proposals.size(); ++i) {
                if (ranks[i] == 0) {
                    predicted_rank0[i] = 1;
                    is_pretender[i] = 1;
                } else if (threshold <= accept_rng.uniform01()) {
                    is_pretender[i] = 1;
                }
            }
        } else {
            std::fill(is_pretender.begin(), is_pretender.end(), 1);
        }

        // Assemble evaluation order; under budget pressure the predicted
        // rank-0 pretenders go first, then sampled extras in draw order.
        std::vector<int> eval_positions;
        for (std::size_t i = 0; i < proposals.size(); ++i)
            if (is_pretender[i]) eval_positions.push_back(static_cast<int>(i));
        const long remaining = config.evaluation_budget - evaluations;
        if (static_cast<long>(eval_positions.size()) > remaining) {
            std::stable_sort(eval_positions.begin(), eval_positions.end(),
                             [&](int a, int b) {
                                 return predicted_rank0[static_cast<std::size_t>(a)] >
                                        predicted_rank0[static_cast<std::size_t>(b)];
                             });
            eval_positions.resize(static_cast<std::size_t>(remaining));
        }

        std::vector<std::vector<double>> batch;
        batch.reserve(eval_positions.size());
        for (int pos : eval_positions)
            batch.push_back(proposals[static_cast<std::size_t>(pos)]);
        std::vector<std::size_t> evaluated;
        if (!batch.empty()) evaluated = simulate(batch);

        result.front = moo::pareto_filter(result.archive.entries());
        if (assisted && !config.force_ndscore_zero) {
            nd_score = surrogate::ndscore_with(fitter, result.archive, config.cv_folds,
                                               config.metric, cv_seed)
                           .value;
        }
        refit();

        // Tell the metaheuristic everything it proposed: simulated fitness
        // where available, surrogate predictions for the rest.
        std::vector<int> told_positions;
        std::vector<moo::Candidate> told;
        std::vector<char> evaluated_mask(proposals.size(), 0);
        for (std::size_t t = 0; t < eval_positions.size(); ++t) {
            evaluated_mask[static_cast<std::size_t>(eval_positions[t])] = 1;
            told_positions.push_back(eval_positions[t]);
            told.push_back(result.archive.entries()[evaluated[t]]);
        }
        for (std::size_t i = 0; i < proposals.size(); ++i) {
            if (evaluated_mask[i]) continue;
            if (const auto* hit = result.archive.find(proposals[i])) {
                // Duplicate of an earlier simulation; reuse its fitness.
                told_positions.push_back(static_cast<int>(i));
                told.push_back(*hit);
                continue;
            }
            if (assisted && config.rejected_tell == RejectedTellPolicy::PredictedTell) {
                moo::Candidate c;
                c.decision = proposals[i];
                c.objectives = predictions[i];
                c.source = moo::FitnessSource::SurrogatePredicted;
                told_positions.push_back(static_cast<int>(i));
                told.push_back(std::move(c));
            }
        }
        if (static_cast<int>(told.size()) == n_proposed) {
            std::vector<moo::Candidate> ordered(told.size());
            for (std::size_t t = 0; t < told.size(); ++t)
                ordered[static_cast<std::size_t>(told_positions[t])] = std::move(told[t]);
            meta.tell(ordered);
        } else if (!told.empty()) {
            meta.tell_indexed(told_positions, told);
        } else {
            meta.cancel_ask();  // nothing survived filtering this generation
        }

        snapshot_log(generation, n_proposed, static_cast<int>(eval_positions.size()));
    }
    return result;
}

}  // namespace

RunResult run(search::Metaheuristic& metaheuristic, const search::BatchFn& evaluate,
              const ParDenConfig& config) {
    return run_engine(metaheuristic, evaluate, config, /*assisted=*/true);
}

RunResult run_bare(search::Metaheuristic& metaheuristic, const search::BatchFn& evaluate,
                   const ParDenConfig& config) {
    return run_engine(metaheuristic, evaluate, config, /*assisted=*/false);
}

}  // namespace parden::driver
