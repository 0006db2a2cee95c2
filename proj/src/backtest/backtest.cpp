#include "parden/backtest/backtest.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>

#include "parden/common/errors.hpp"
#include "parden/solver/portfolio.hpp"

namespace parden::backtest {

moo::ObjectiveVector penalty_objectives() {
    // risk = +1e6, return = -1e6; return is negated into minimization form.
    return {1e6, 1e6};
}

int resolve_thread_count(int requested) {
    return requested > 0 ? requested : omp_get_max_threads();
}

BacktestEvaluator::BacktestEvaluator(market::MarketData data, BacktestConfig config,
                                     SearchSpace space)
    : data_(std::move(data)), config_(config), space_(space) {
    data_.validate();
    const int t_days = static_cast<int>(data_.days());
    const int n = static_cast<int>(data_.assets());

    if (config_.rebalance_every < 1)
        throw ConfigError("backtest: rebalance_every must be >= 1");

    trade_cost_vec_ = Eigen::VectorXd::Constant(n, config_.trade_cost);
    hold_cost_vec_ = Eigen::VectorXd::Constant(n, config_.hold_cost);

    if (config_.in_sample) {
        if (t_days < n + 2) throw ConfigError("backtest: history too short for in-sample mode");
        RebalancePoint rp;
        rp.day = 0;
        rp.moments = market::estimate_moments(data_, t_days, t_days, config_.covariance_loading);
        rp.lmax = solver::power_iteration_lmax(rp.moments.sigma);
        schedule_.push_back(std::move(rp));
        return;
    }

    const int start = config_.resolved_start();
    if (start < config_.estimation_window)
        throw ConfigError("backtest: start_index must be >= estimation_window");
    if (t_days - start < 2)
        throw ConfigError("backtest: not enough days after start_index to realize returns");

    for (int t = start; t < t_days; t += config_.rebalance_every) {
        RebalancePoint rp;
        rp.day = t;
        rp.moments =
            market::estimate_moments(data_, t, config_.estimation_window,
                                     config_.covariance_loading);
        rp.lmax = solver::power_iteration_lmax(rp.moments.sigma);
        schedule_.push_back(std::move(rp));
    }
}

BacktestResult BacktestEvaluator::evaluate(const TradeoffVector& tradeoffs) const {
    const auto t0 = std::chrono::steady_clock::now();
    BacktestResult result;
    const int t_days = static_cast<int>(data_.days());
    const int n = static_cast<int>(data_.assets());

    try {
        const int start = config_.in_sample ? 0 : config_.resolved_start();
        Eigen::VectorXd w = Eigen::VectorXd::Constant(n, 1.0 / n);
        std::vector<double> realized;
        realized.reserve(static_cast<std::size_t>(t_days - start));
        double turnover = 0.0;
        std::size_t next_rebalance = 0;

        solver::PortfolioProblem problem;
        problem.trade_cost = trade_cost_vec_;
        problem.hold_cost = hold_cost_vec_;
        problem.tradeoffs = tradeoffs;

        for (int t = start; t < t_days; ++t) {
            double cost_today = 0.0;
            if (next_rebalance < schedule_.size() && schedule_[next_rebalance].day == t) {
                const RebalancePoint& rp = schedule_[next_rebalance];
                problem.mu = rp.moments.mu;
                problem.sigma = rp.moments.sigma;
                problem.w0 = w;
                solver::SolverOptions opts;
                opts.lmax_hint = rp.lmax;
                const auto sol = solver::solve_extended(problem, opts, &w);
                const Eigen::VectorXd delta = (sol.w - w).cwiseAbs();
                turnover += delta.sum();
                if (config_.charge_costs_in_returns) cost_today += trade_cost_vec_.dot(delta);
                w = sol.w;
                ++next_rebalance;
            }

            const Eigen::VectorXd day = data_.returns.row(t).transpose();
            const double gross = w.dot(day);
            if (config_.charge_costs_in_returns)
                cost_today += hold_cost_vec_.dot((-w.array()).max(0.0).matrix());
            realized.push_back(gross - cost_today);

            if (!config_.in_sample) {
                const double growth = 1.0 + gross;
                if (!(growth > 1e-6)) throw SolverError("portfolio wiped out");
                w = (w.array() * (1.0 + day.array())).matrix() / growth;
            }
        }

        const auto count = static_cast<Eigen::Index>(realized.size());
        result.realized_daily_returns =
            Eigen::Map<const Eigen::VectorXd>(realized.data(), count);
        const double mean = result.realized_daily_returns.mean();
        const double sse = (result.realized_daily_returns.array() - mean).square().sum();
        const double sd = std::sqrt(sse / static_cast<double>(count - 1));
        const double risk_pct = sd * std::sqrt(config_.annualization) * 100.0;
        const double return_pct = mean * config_.annualization * 100.0;
        result.objectives = {risk_pct, -return_pct};
        result.turnover_total = turnover;
    } catch (const SolverError&) {
        result = BacktestResult{};
        result.objectives = penalty_objectives();
        result.failed = true;
    }

    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

BacktestResult BacktestEvaluator::evaluate_encoded(std::span<const double> encoded) const {
    return evaluate(space_.decode(encoded));
}

std::vector<BacktestResult> BacktestEvaluator::evaluate_batch(
    const std::vector<TradeoffVector>& batch, int n_threads) const {
    std::vector<BacktestResult> out(batch.size());
    const int threads = resolve_thread_count(n_threads);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(batch.size()); ++i) {
        out[static_cast<std::size_t>(i)] = evaluate(batch[static_cast<std::size_t>(i)]);
    }
    return out;
}

std::vector<BacktestResult> BacktestEvaluator::evaluate_batch_encoded(
    const std::vector<std::vector<double>>& batch, int n_threads) const {
    std::vector<BacktestResult> out(batch.size());
    const int threads = resolve_thread_count(n_threads);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(batch.size()); ++i) {
        out[static_cast<std::size_t>(i)] = evaluate_encoded(batch[static_cast<std::size_t>(i)]);
    }
    return out;
}

std::vector<BacktestResult> BacktestEvaluator::evaluate_batch_serial(
    const std::vector<TradeoffVector>& batch) const {
    std::vector<BacktestResult> out;
    out.reserve(batch.size());
    for (const auto& t : batch) out.push_back(evaluate(t));
    return out;
}

std::vector<BacktestResult> BacktestEvaluator::evaluate_batch_encoded_serial(
    const std::vector<std::vector<double>>& batch) const {
    std::vector<BacktestResult> out;
    out.reserve(batch.size());
    for (const auto& x : batch) out.push_back(evaluate_encoded(x));
    return out;
}

BacktestResult evaluate(const TradeoffVector& tradeoffs, const market::MarketData& data,
                        const BacktestConfig& config) {
    return BacktestEvaluator(data, config).evaluate(tradeoffs);
}

std::vector<BacktestResult> evaluate_batch(const std::vector<TradeoffVector>& batch,
                                           const market::MarketData& data,
                                           const BacktestConfig& config, int n_threads) {
    return BacktestEvaluator(data, config).evaluate_batch(batch, n_threads);
}

}  // namespace parden::backtest
