#include "parden/search/mocma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "parden/common/errors.hpp"
#include "parden/indicators/indicators.hpp"
#include "parden/moo/crowding.hpp"
#include "parden/moo/dominance.hpp"

namespace parden::search {

MoCmaEs::MoCmaEs(int dims, AlgorithmConfig config) : Metaheuristic(dims, std::move(config)) {
    const double n = static_cast<double>(dims);
    damping_ = 1.0 + n / 2.0;
    p_target_ = 2.0 / 11.0;  // target success rate of the 1+1 success rule
    c_p_ = p_target_ / (2.0 + p_target_);
    c_c_ = 2.0 / (n + 2.0);
    c_cov_ = 2.0 / (n * n + 6.0);
}

MoCmaEs::Strategy MoCmaEs::fresh_strategy() const {
    Strategy s;
    s.sigma = config_.sigma0;
    s.p_succ = p_target_;
    s.path = Eigen::VectorXd::Zero(dims_);
    s.cov = Eigen::MatrixXd::Identity(dims_, dims_);
    return s;
}

void MoCmaEs::on_initial_population() {
    strategies_.assign(population_.size(), fresh_strategy());
}

void MoCmaEs::update_step_size(Strategy& s, double success) const {
    s.p_succ = (1.0 - c_p_) * s.p_succ + c_p_ * success;
    s.sigma *= std::exp((s.p_succ - p_target_) / (damping_ * (1.0 - p_target_)));
    s.sigma = std::clamp(s.sigma, 1e-12, 1e3);
}

void MoCmaEs::update_covariance(Strategy& s, const Eigen::VectorXd& step) const {
    if (s.p_succ < kPThresh) {
        s.path = (1.0 - c_c_) * s.path + std::sqrt(c_c_ * (2.0 - c_c_)) * step;
        s.cov = (1.0 - c_cov_) * s.cov + c_cov_ * (s.path * s.path.transpose());
    } else {
        s.path = (1.0 - c_c_) * s.path;
        s.cov = (1.0 - c_cov_) * s.cov +
                c_cov_ * (s.path * s.path.transpose() + c_c_ * (2.0 - c_c_) * s.cov);
    }
    s.cov = 0.5 * (s.cov + s.cov.transpose()).eval();
}

std::vector<std::size_t> MoCmaEs::survival_order(
    const std::vector<moo::Candidate>& all) const {
    std::vector<moo::ObjectiveVector> objs;
    objs.reserve(all.size());
    for (const auto& c : all) objs.push_back(c.objectives);
    const auto ranks = moo::non_dominated_sort(objs);
    const int levels = *std::max_element(ranks.begin(), ranks.end()) + 1;

    std::vector<double> crowd(all.size(), 0.0);
    std::vector<double> hv_contrib(all.size(), 0.0);
    const bool biobjective = objs.front().size() == 2;
    for (int level = 0; level < levels; ++level) {
        std::vector<std::size_t> members;
        std::vector<moo::ObjectiveVector> front;
        for (std::size_t i = 0; i < all.size(); ++i) {
            if (ranks[i] == level) {
                members.push_back(i);
                front.push_back(objs[i]);
            }
        }
        const auto cd = moo::crowding_distance(front);
        for (std::size_t j = 0; j < members.size(); ++j) crowd[members[j]] = cd[j];
        if (biobjective) {
            moo::ObjectiveVector ref(2);
            double hi0 = -std::numeric_limits<double>::infinity();
            double hi1 = hi0;
            for (const auto& y : front) {
                hi0 = std::max(hi0, y[0]);
                hi1 = std::max(hi1, y[1]);
            }
            ref = {hi0 + 1.0, hi1 + 1.0};
            const auto contrib = indicators::hypervolume_contributions_2d(front, ref);
            for (std::size_t j = 0; j < members.size(); ++j)
                hv_contrib[members[j]] = contrib[j];
        }
    }

    std::vector<std::size_t> order(all.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (ranks[a] != ranks[b]) return ranks[a] < ranks[b];
        if (crowd[a] != crowd[b]) return crowd[a] > crowd[b];
        return hv_contrib[a] > hv_contrib[b];
    });
    return order;
}

std::vector<std::vector<double>> MoCmaEs::ask_offspring() {
    const auto order = survival_order(population_);
    std::vector<std::size_t> order_pos(population_.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) order_pos[order[pos]] = pos;
    const auto tournament = [&]() {
        const std::size_t a = rng_.below(population_.size());
        const std::size_t b = rng_.below(population_.size());
        if (order_pos[a] != order_pos[b]) return order_pos[a] < order_pos[b] ? a : b;
        return rng_.coin() ? a : b;
    };

    pending_.clear();
    std::vector<std::vector<double>> offspring;
    offspring.reserve(static_cast<std::size_t>(config_.offspring_size));
    for (int k = 0; k < config_.offspring_size; ++k) {
        const std::size_t parent = tournament();
        const Strategy& ps = strategies_[parent];

        Eigen::LLT<Eigen::MatrixXd> llt(ps.cov);
        Eigen::MatrixXd chol;
        if (llt.info() == Eigen::Success) {
            chol = llt.matrixL();
        } else {
            Eigen::MatrixXd jittered = ps.cov;
            jittered.diagonal().array() += 1e-10;
            chol = Eigen::LLT<Eigen::MatrixXd>(jittered).matrixL();
        }

        Eigen::VectorXd z(dims_);
        for (int j = 0; j < dims_; ++j) z(j) = rng_.normal();
        const Eigen::VectorXd parent_x = Eigen::Map<const Eigen::VectorXd>(
            population_[parent].decision.data(), dims_);
        Eigen::VectorXd child = parent_x + ps.sigma * (chol * z);
        for (int j = 0; j < dims_; ++j) child(j) = std::clamp(child(j), 0.0, 1.0);

        PendingOffspring po;
        po.parent = parent;
        po.step = (child - parent_x) / ps.sigma;  // realized step, after clipping
        po.strategy = ps;
        pending_.push_back(std::move(po));
        offspring.emplace_back(child.data(), child.data() + dims_);
    }
    return offspring;
}

void MoCmaEs::survive(std::vector<moo::Candidate> newcomers,
                      const std::vector<int>& positions) {
    std::vector<moo::Candidate> all = population_;
    std::vector<Strategy> all_strategies = strategies_;
    std::vector<std::size_t> parent_of;  // parent index per newcomer, in `all` indexing
    for (std::size_t t = 0; t < newcomers.size(); ++t) {
        const auto& po = pending_[static_cast<std::size_t>(positions[t])];
        all.push_back(std::move(newcomers[t]));
        all_strategies.push_back(po.strategy);
        parent_of.push_back(po.parent);
    }

    const auto order = survival_order(all);
    std::vector<std::size_t> order_pos(all.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) order_pos[order[pos]] = pos;

    const std::size_t n_parents = population_.size();
    for (std::size_t t = 0; t < parent_of.size(); ++t) {
        const std::size_t child = n_parents + t;
        const std::size_t parent = parent_of[t];
        const double success = order_pos[child] <= order_pos[parent] ? 1.0 : 0.0;
        update_step_size(all_strategies[parent], success);
        update_step_size(all_strategies[child], success);
        if (success > 0.0) {
            update_covariance(all_strategies[child],
                              pending_[static_cast<std::size_t>(positions[t])].step);
        }
    }

    const auto target = static_cast<std::size_t>(config_.population_size);
    std::vector<moo::Candidate> survivors;
    std::vector<Strategy> surviving_strategies;
    survivors.reserve(target);
    surviving_strategies.reserve(target);
    for (std::size_t pos = 0; pos < order.size() && survivors.size() < target; ++pos) {
        survivors.push_back(std::move(all[order[pos]]));
        surviving_strategies.push_back(std::move(all_strategies[order[pos]]));
    }
    population_ = std::move(survivors);
    strategies_ = std::move(surviving_strategies);
    pending_.clear();
}

}  // namespace parden::search
