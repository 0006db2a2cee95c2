#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "parden/market/market_data.hpp"
#include "parden/moo/types.hpp"
#include "parden/tradeoffs.hpp"

namespace parden::backtest {

struct BacktestConfig {
    int estimation_window = 252;
    int rebalance_every = 21;
    int start_index = -1;  // -1 resolves to estimation_window
    double annualization = 252.0;
    bool charge_costs_in_returns = true;

    double covariance_loading = 1e-8;
    double trade_cost = 1e-3;  // uniform per-asset c
    double hold_cost = 5e-4;   // uniform per-asset daily s

    // Diagnostic mode: moments from the full history, one solve, target
    // weights held constant over the whole sample. Makes realized moments
    // coincide exactly with the estimated ones (no drift), which is what
    // the analytic-frontier consistency check needs.
    bool in_sample = false;

    int resolved_start() const { return start_index >= 0 ? start_index : estimation_window; }
};

struct BacktestResult {
    moo::ObjectiveVector objectives;  // {risk%, -return%}, minimization
    Eigen::VectorXd realized_daily_returns;
    double turnover_total = 0.0;
    double wall_seconds = 0.0;
    bool failed = false;

    double risk_pct() const { return objectives[0]; }
    double return_pct() const { return -objectives[1]; }
};

/// Penalty objectives assigned to infeasible or failed evaluations so that
/// metaheuristics discard them by dominance.
moo::ObjectiveVector penalty_objectives();

/// The expensive simulation f_e. Precomputes the rebalance schedule (trailing
/// moments and their largest eigenvalue) once per (data, config); every
/// evaluate call is then a pure function of the trade-off vector, safe to run
/// from any number of workers concurrently.
class BacktestEvaluator {
public:
    BacktestEvaluator(market::MarketData data, BacktestConfig config, SearchSpace space = {});

    BacktestResult evaluate(const TradeoffVector& tradeoffs) const;
    BacktestResult evaluate_encoded(std::span<const double> encoded) const;

    /// OpenMP-parallel batch; results in input order, bitwise identical to
    /// the serial reference at any worker count.
    std::vector<BacktestResult> evaluate_batch(const std::vector<TradeoffVector>& batch,
                                               int n_threads = 0) const;
    std::vector<BacktestResult> evaluate_batch_encoded(
        const std::vector<std::vector<double>>& batch, int n_threads = 0) const;

    /// Serial reference implementation, kept for testing and benchmarking.
    std::vector<BacktestResult> evaluate_batch_serial(
        const std::vector<TradeoffVector>& batch) const;
    std::vector<BacktestResult> evaluate_batch_encoded_serial(
        const std::vector<std::vector<double>>& batch) const;

    const market::MarketData& data() const { return data_; }
    const BacktestConfig& config() const { return config_; }
    const SearchSpace& space() const { return space_; }

private:
    struct RebalancePoint {
        int day = 0;  // trading decided at the open of this day
        market::MomentEstimate moments;
        double lmax = 0.0;
    };

    market::MarketData data_;
    BacktestConfig config_;
    SearchSpace space_;
    Eigen::VectorXd trade_cost_vec_;
    Eigen::VectorXd hold_cost_vec_;
    std::vector<RebalancePoint> schedule_;
};

/// One-shot convenience wrappers over a throwaway evaluator.
BacktestResult evaluate(const TradeoffVector& tradeoffs, const market::MarketData& data,
                        const BacktestConfig& config);
std::vector<BacktestResult> evaluate_batch(const std::vector<TradeoffVector>& batch,
                                           const market::MarketData& data,
                                           const BacktestConfig& config, int n_threads = 0);

int resolve_thread_count(int requested);

}  // namespace parden::backtest
