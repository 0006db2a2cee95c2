#include "parden/search/nsga2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "parden/common/errors.hpp"
#include "parden/moo/crowding.hpp"
#include "parden/moo/dominance.hpp"
#include "parden/search/operators.hpp"

namespace parden::search {

namespace {

std::vector<moo::ObjectiveVector> objectives_of(const std::vector<moo::Candidate>& cs) {
    std::vector<moo::ObjectiveVector> out;
    out.reserve(cs.size());
    for (const auto& c : cs) out.push_back(c.objectives);
    return out;
}

std::vector<std::vector<std::size_t>> group_fronts(const std::vector<int>& ranks) {
    const int levels = *std::max_element(ranks.begin(), ranks.end()) + 1;
    std::vector<std::vector<std::size_t>> fronts(static_cast<std::size_t>(levels));
    for (std::size_t i = 0; i < ranks.size(); ++i)
        fronts[static_cast<std::size_t>(ranks[i])].push_back(i);
    return fronts;
}

}  // namespace

Nsga2::Nsga2(int dims, AlgorithmConfig config) : Metaheuristic(dims, std::move(config)) {}

void Nsga2::on_initial_population() { refresh_ranking(); }

void Nsga2::refresh_ranking() {
    const auto objs = objectives_of(population_);
    rank_ = moo::non_dominated_sort(objs);
    crowd_.assign(population_.size(), 0.0);
    for (const auto& front : group_fronts(rank_)) {
        std::vector<moo::ObjectiveVector> front_objs;
        front_objs.reserve(front.size());
        for (std::size_t i : front) front_objs.push_back(objs[i]);
        const auto cd = moo::crowding_distance(front_objs);
        for (std::size_t j = 0; j < front.size(); ++j) crowd_[front[j]] = cd[j];
    }
}

std::size_t Nsga2::tournament() {
    const std::size_t a = rng_.below(population_.size());
    const std::size_t b = rng_.below(population_.size());
    if (rank_[a] != rank_[b]) return rank_[a] < rank_[b] ? a : b;
    if (crowd_[a] != crowd_[b]) return crowd_[a] > crowd_[b] ? a : b;
    return rng_.coin() ? a : b;
}

std::vector<std::vector<double>> Nsga2::ask_offspring() {
    std::vector<std::vector<double>> offspring;
    offspring.reserve(static_cast<std::size_t>(config_.offspring_size));
    while (offspring.size() < static_cast<std::size_t>(config_.offspring_size)) {
        auto a = population_[tournament()].decision;
        auto b = population_[tournament()].decision;
        if (rng_.uniform01() < config_.crossover_prob) uniform_crossover(rng_, a, b);
        polynomial_mutation(rng_, a, config_.mutation_prob, config_.mutation_eta);
        polynomial_mutation(rng_, b, config_.mutation_prob, config_.mutation_eta);
        offspring.push_back(std::move(a));
        if (offspring.size() < static_cast<std::size_t>(config_.offspring_size))
            offspring.push_back(std::move(b));
    }
    return offspring;
}

std::vector<std::size_t> Nsga2::select_split(const std::vector<moo::Candidate>& merged,
                                             const std::vector<std::size_t>& front,
                                             std::size_t k) {
    std::vector<moo::ObjectiveVector> front_objs;
    front_objs.reserve(front.size());
    for (std::size_t i : front) front_objs.push_back(merged[i].objectives);
    const auto cd = moo::crowding_distance(front_objs);

    std::vector<std::size_t> order(front.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return cd[a] > cd[b]; });
    std::vector<std::size_t> chosen;
    chosen.reserve(k);
    for (std::size_t j = 0; j < k; ++j) chosen.push_back(front[order[j]]);
    return chosen;
}

void Nsga2::survive(std::vector<moo::Candidate> newcomers, const std::vector<int>&) {
    std::vector<moo::Candidate> merged = population_;
    merged.insert(merged.end(), std::make_move_iterator(newcomers.begin()),
                  std::make_move_iterator(newcomers.end()));
    const auto ranks = moo::non_dominated_sort(objectives_of(merged));
    const auto fronts = group_fronts(ranks);

    const auto target = static_cast<std::size_t>(config_.population_size);
    std::vector<std::size_t> chosen;
    chosen.reserve(target);
    for (const auto& front : fronts) {
        if (chosen.size() + front.size() <= target) {
            chosen.insert(chosen.end(), front.begin(), front.end());
            if (chosen.size() == target) break;
        } else {
            const auto split = select_split(merged, front, target - chosen.size());
            chosen.insert(chosen.end(), split.begin(), split.end());
            break;
        }
    }

    std::vector<moo::Candidate> survivors;
    survivors.reserve(chosen.size());
    for (std::size_t i : chosen) survivors.push_back(std::move(merged[i]));
    population_ = std::move(survivors);
    refresh_ranking();
}

RNsga2::RNsga2(int dims, AlgorithmConfig config) : Nsga2(dims, std::move(config)) {}

void RNsga2::on_initial_population() {
    Nsga2::on_initial_population();
    if (!config_.reference_points.empty()) return;
    // Default reference points: the initial population's per-objective
    // extremes (min-risk and max-return in the portfolio problem).
    const std::size_t m = population_.front().objectives.size();
    for (std::size_t k = 0; k < std::min<std::size_t>(m, 2); ++k) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < population_.size(); ++i) {
            if (population_[i].objectives[k] < population_[best].objectives[k]) best = i;
        }
        config_.reference_points.push_back(population_[best].objectives);
    }
}

std::vector<std::size_t> RNsga2::select_split(const std::vector<moo::Candidate>& merged,
                                              const std::vector<std::size_t>& front,
                                              std::size_t k) {
    if (config_.reference_points.empty())
        throw ContractViolation("RNsga2: no reference points configured");
    const std::size_t m = merged.front().objectives.size();

    // Normalization by the selection pool's ideal/nadir.
    moo::ObjectiveVector ideal(m, std::numeric_limits<double>::infinity());
    moo::ObjectiveVector nadir(m, -std::numeric_limits<double>::infinity());
    for (const auto& c : merged) {
        for (std::size_t j = 0; j < m; ++j) {
            ideal[j] = std::min(ideal[j], c.objectives[j]);
            nadir[j] = std::max(nadir[j], c.objectives[j]);
        }
    }
    const auto normalize = [&](const moo::ObjectiveVector& y) {
        moo::ObjectiveVector out(m);
        for (std::size_t j = 0; j < m; ++j)
            out[j] = (y[j] - ideal[j]) / std::max(nadir[j] - ideal[j], 1e-12);
        return out;
    };
    const auto sqdist = [m](const moo::ObjectiveVector& a, const moo::ObjectiveVector& b) {
        double d = 0.0;
        for (std::size_t j = 0; j < m; ++j) d += (a[j] - b[j]) * (a[j] - b[j]);
        return d;
    };

    std::vector<moo::ObjectiveVector> norm_front;
    norm_front.reserve(front.size());
    for (std::size_t i : front) norm_front.push_back(normalize(merged[i].objectives));

    // Distance rank per member: best position over all reference points.
    const std::size_t n = front.size();
    std::vector<std::size_t> dist_rank(n, n);
    for (const auto& raw_ref : config_.reference_points) {
        const auto ref = normalize(raw_ref);
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return sqdist(norm_front[a], ref) < sqdist(norm_front[b], ref);
        });
        for (std::size_t pos = 0; pos < n; ++pos)
            dist_rank[order[pos]] = std::min(dist_rank[order[pos]], pos);
    }

    std::vector<std::size_t> by_rank(n);
    std::iota(by_rank.begin(), by_rank.end(), std::size_t{0});
    std::stable_sort(by_rank.begin(), by_rank.end(),
                     [&](std::size_t a, std::size_t b) { return dist_rank[a] < dist_rank[b]; });

    const double eps2 = config_.epsilon * config_.epsilon;
    std::vector<char> taken(n, 0), cleared(n, 0);
    std::vector<std::size_t> chosen;
    chosen.reserve(k);
    while (chosen.size() < k) {
        bool picked = false;
        for (std::size_t j : by_rank) {
            if (taken[j] || cleared[j]) continue;
            taken[j] = 1;
            chosen.push_back(front[j]);
            for (std::size_t other = 0; other < n; ++other) {
                if (!taken[other] && sqdist(norm_front[j], norm_front[other]) <= eps2)
                    cleared[other] = 1;
            }
            picked = true;
            break;
        }
        if (!picked) {
            // Everything remaining was cleared; make it eligible again and
            // keep selecting in distance-rank order.
            std::fill(cleared.begin(), cleared.end(), 0);
        }
    }
    return chosen;
}

}  // namespace parden::search
