#include "parden/search/nsga3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "parden/common/errors.hpp"
#include "parden/moo/dominance.hpp"
#include "parden/moo/reference_directions.hpp"
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

// Perpendicular distance from point y to the ray along direction d.
double perpendicular_distance(const moo::ObjectiveVector& y, const std::vector<double>& d) {
    double dd = 0.0, yd = 0.0, yy = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) {
        dd += d[j] * d[j];
        yd += y[j] * d[j];
        yy += y[j] * y[j];
    }
    const double proj = yd / std::max(dd, 1e-30);
    const double sq = std::max(yy - proj * yd, 0.0);
    return std::sqrt(sq);
}

}  // namespace

Nsga3::Nsga3(int dims, AlgorithmConfig config) : Metaheuristic(dims, std::move(config)) {}

UNsga3::UNsga3(int dims, AlgorithmConfig config) : Nsga3(dims, std::move(config)) {}

void Nsga3::ensure_directions(std::size_t n_objectives) {
    if (!directions_.empty()) return;
    const int n_dirs = config_.n_reference_dirs > 0 ? config_.n_reference_dirs
                                                    : config_.population_size;
    directions_ = moo::reference_directions(static_cast<int>(n_objectives), n_dirs);
}

void Nsga3::on_initial_population() {
    ensure_directions(population_.front().objectives.size());
    refresh_ranking();
}

void Nsga3::refresh_ranking() {
    const auto objs = objectives_of(population_);
    rank_ = moo::non_dominated_sort(objs);

    const std::size_t m = objs.front().size();
    moo::ObjectiveVector ideal(m, std::numeric_limits<double>::infinity());
    moo::ObjectiveVector nadir(m, -std::numeric_limits<double>::infinity());
    for (const auto& y : objs) {
        for (std::size_t j = 0; j < m; ++j) {
            ideal[j] = std::min(ideal[j], y[j]);
            nadir[j] = std::max(nadir[j], y[j]);
        }
    }
    assoc_dir_.assign(objs.size(), 0);
    assoc_dist_.assign(objs.size(), 0.0);
    for (std::size_t i = 0; i < objs.size(); ++i) {
        moo::ObjectiveVector norm(m);
        for (std::size_t j = 0; j < m; ++j)
            norm[j] = (objs[i][j] - ideal[j]) / std::max(nadir[j] - ideal[j], 1e-12);
        int best = 0;
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t d = 0; d < directions_.size(); ++d) {
            const double dist = perpendicular_distance(norm, directions_[d]);
            if (dist < best_dist) {
                best_dist = dist;
                best = static_cast<int>(d);
            }
        }
        assoc_dir_[i] = best;
        assoc_dist_[i] = best_dist;
    }
}

std::size_t Nsga3::select_parent() { return rng_.below(population_.size()); }

std::size_t UNsga3::select_parent() {
    const std::size_t a = rng_.below(population_.size());
    const std::size_t b = rng_.below(population_.size());
    if (rank_[a] != rank_[b]) return rank_[a] < rank_[b] ? a : b;
    if (assoc_dir_[a] == assoc_dir_[b] && assoc_dist_[a] != assoc_dist_[b])
        return assoc_dist_[a] < assoc_dist_[b] ? a : b;
    return rng_.coin() ? a : b;
}

std::vector<std::vector<double>> Nsga3::ask_offspring() {
    std::vector<std::vector<double>> offspring;
    offspring.reserve(static_cast<std::size_t>(config_.offspring_size));
    while (offspring.size() < static_cast<std::size_t>(config_.offspring_size)) {
        auto a = population_[select_parent()].decision;
        auto b = population_[select_parent()].decision;
        if (rng_.uniform01() < config_.crossover_prob) uniform_crossover(rng_, a, b);
        polynomial_mutation(rng_, a, config_.mutation_prob, config_.mutation_eta);
        polynomial_mutation(rng_, b, config_.mutation_prob, config_.mutation_eta);
        offspring.push_back(std::move(a));
        if (offspring.size() < static_cast<std::size_t>(config_.offspring_size))
            offspring.push_back(std::move(b));
    }
    return offspring;
}

void Nsga3::survive(std::vector<moo::Candidate> newcomers, const std::vector<int>&) {
    std::vector<moo::Candidate> merged = population_;
    merged.insert(merged.end(), std::make_move_iterator(newcomers.begin()),
                  std::make_move_iterator(newcomers.end()));
    const auto objs = objectives_of(merged);
    ensure_directions(objs.front().size());
    const auto ranks = moo::non_dominated_sort(objs);
    const auto fronts = group_fronts(ranks);

    const auto target = static_cast<std::size_t>(config_.population_size);
    std::vector<std::size_t> accepted;
    accepted.reserve(target);
    std::size_t split_level = fronts.size();
    for (std::size_t level = 0; level < fronts.size(); ++level) {
        if (accepted.size() + fronts[level].size() <= target) {
            accepted.insert(accepted.end(), fronts[level].begin(), fronts[level].end());
            if (accepted.size() == target) break;
        } else {
            split_level = level;
            break;
        }
    }

    if (accepted.size() < target && split_level < fronts.size()) {
        const auto& splitting = fronts[split_level];

        // Normalize over everything under consideration.
        const std::size_t m = objs.front().size();
        moo::ObjectiveVector ideal(m, std::numeric_limits<double>::infinity());
        moo::ObjectiveVector nadir(m, -std::numeric_limits<double>::infinity());
        const auto absorb = [&](std::size_t i) {
            for (std::size_t j = 0; j < m; ++j) {
                ideal[j] = std::min(ideal[j], objs[i][j]);
                nadir[j] = std::max(nadir[j], objs[i][j]);
            }
        };
        for (std::size_t i : accepted) absorb(i);
        for (std::size_t i : splitting) absorb(i);

        const auto associate = [&](std::size_t i, int& dir, double& dist) {
            moo::ObjectiveVector norm(m);
            for (std::size_t j = 0; j < m; ++j)
                norm[j] = (objs[i][j] - ideal[j]) / std::max(nadir[j] - ideal[j], 1e-12);
            dir = 0;
            dist = std::numeric_limits<double>::infinity();
            for (std::size_t d = 0; d < directions_.size(); ++d) {
                const double pd = perpendicular_distance(norm, directions_[d]);
                if (pd < dist) {
                    dist = pd;
                    dir = static_cast<int>(d);
                }
            }
        };

        std::vector<int> niche_count(directions_.size(), 0);
        for (std::size_t i : accepted) {
            int dir;
            double dist;
            associate(i, dir, dist);
            ++niche_count[static_cast<std::size_t>(dir)];
        }

        // Splitting-front members grouped by their associated direction.
        std::vector<std::vector<std::pair<std::size_t, double>>> pool(directions_.size());
        for (std::size_t i : splitting) {
            int dir;
            double dist;
            associate(i, dir, dist);
            pool[static_cast<std::size_t>(dir)].push_back({i, dist});
        }

        while (accepted.size() < target) {
            // Underrepresented direction first, among those with candidates.
            int best_count = std::numeric_limits<int>::max();
            std::vector<std::size_t> tied;
            for (std::size_t d = 0; d < pool.size(); ++d) {
                if (pool[d].empty()) continue;
                if (niche_count[d] < best_count) {
                    best_count = niche_count[d];
                    tied = {d};
                } else if (niche_count[d] == best_count) {
                    tied.push_back(d);
                }
            }
            const std::size_t dir = tied[rng_.below(tied.size())];
            auto& members = pool[dir];
            std::size_t pick = 0;
            if (niche_count[dir] == 0) {
                for (std::size_t idx = 1; idx < members.size(); ++idx)
                    if (members[idx].second < members[pick].second) pick = idx;
            } else {
                pick = rng_.below(members.size());
            }
            accepted.push_back(members[pick].first);
            members.erase(members.begin() + static_cast<std::ptrdiff_t>(pick));
            ++niche_count[dir];
        }
    }

    std::vector<moo::Candidate> survivors;
    survivors.reserve(accepted.size());
    for (std::size_t i : accepted) survivors.push_back(std::move(merged[i]));
    population_ = std::move(survivors);
    refresh_ranking();
}

}  // namespace parden::search
