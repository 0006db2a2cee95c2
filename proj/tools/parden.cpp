#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "parden/backtest/backtest.hpp"
#include "parden/cli/experiment.hpp"
#include "parden/common/errors.hpp"
#include "parden/solver/portfolio.hpp"

namespace {

using nlohmann::json;

Eigen::VectorXd to_vector(const json& j) {
    Eigen::VectorXd v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    return v;
}

Eigen::MatrixXd to_matrix(const json& j) {
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j.at(0).size());
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index k = 0; k < cols; ++k)
            m(i, k) = j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].get<double>();
    return m;
}

json result_to_json(const parden::backtest::BacktestResult& r) {
    json out;
    out["risk_pct"] = r.risk_pct();
    out["return_pct"] = r.return_pct();
    out["objectives"] = r.objectives;
    out["turnover_total"] = r.turnover_total;
    out["wall_seconds"] = r.wall_seconds;
    out["failed"] = r.failed;
    std::vector<double> realized(r.realized_daily_returns.data(),
                                 r.realized_daily_returns.data() + r.realized_daily_returns.size());
    out["realized_daily_returns"] = realized;
    return out;
}

int cmd_solve(const std::string& problem_path, const std::string& out_path) {
    std::ifstream in(problem_path);
    if (!in) throw parden::ConfigError("cannot open problem file '" + problem_path + "'");
    json j;
    in >> j;

    parden::solver::PortfolioProblem problem;
    problem.mu = to_vector(j.at("mu"));
    problem.sigma = to_matrix(j.at("sigma"));
    const auto n = problem.mu.size();
    problem.w0 = j.contains("w0") ? to_vector(j.at("w0"))
                                  : Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    problem.tradeoffs.gamma_risk = j.value("gamma", 1.0);
    problem.tradeoffs.gamma_trade = j.value("gamma_trade", 0.0);
    problem.tradeoffs.gamma_hold = j.value("gamma_hold", 0.0);
    problem.tradeoffs.leverage_max = j.value("leverage_max", 1.0);
    problem.trade_cost = j.contains("trade_cost") ? to_vector(j.at("trade_cost"))
                                                  : Eigen::VectorXd::Constant(n, 1e-3);
    problem.hold_cost = j.contains("hold_cost") ? to_vector(j.at("hold_cost"))
                                                : Eigen::VectorXd::Constant(n, 5e-4);

    const auto solution = parden::solver::solve_extended(problem);
    json out;
    out["w"] = std::vector<double>(solution.w.data(), solution.w.data() + solution.w.size());
    out["objective_value"] = solution.objective_value;
    out["iterations"] = solution.iterations;
    out["kkt_residual"] = solution.kkt_residual;
    out["converged"] = solution.converged;

    if (out_path.empty()) {
        std::cout << out.dump(2) << '\n';
    } else {
        std::ofstream of(out_path);
        of << out.dump(2) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Surrogate-assisted multi-objective portfolio hyper-parameter optimization"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "Worker threads for evaluation batches (0 = all)");

    // generate-data
    auto* gen = app.add_subcommand("generate-data", "Write a synthetic market CSV");
    int gen_assets = 5, gen_days = 1260;
    std::uint64_t gen_seed = 7;
    std::string gen_out = "market.csv";
    gen->add_option("--assets", gen_assets, "Number of assets");
    gen->add_option("--days", gen_days, "Number of trading days");
    gen->add_option("--seed", gen_seed, "Generator seed");
    gen->add_option("--out", gen_out, "Output CSV path")->required();

    // backtest
    auto* bt = app.add_subcommand("backtest", "Evaluate one trade-off vector on a market");
    std::string bt_data, bt_config;
    double bt_gamma = 1.0, bt_gamma_trade = 0.0, bt_gamma_hold = 0.0, bt_lmax = 1.0;
    bool bt_in_sample = false;
    bt->add_option("--data", bt_data, "Market CSV")->required();
    bt->add_option("--gamma", bt_gamma, "Risk aversion");
    bt->add_option("--gamma-trade", bt_gamma_trade, "Trading-cost weight");
    bt->add_option("--gamma-hold", bt_gamma_hold, "Holding-cost weight");
    bt->add_option("--lmax", bt_lmax, "Leverage cap");
    bt->add_option("--config", bt_config, "Backtest config JSON file");
    bt->add_flag("--in-sample", bt_in_sample, "Full-history single-solve diagnostic mode");

    // solve
    auto* sv = app.add_subcommand("solve", "Solve one portfolio instance (JSON in/out)");
    std::string sv_problem, sv_out;
    sv->add_option("--problem", sv_problem, "Problem JSON file")->required();
    sv->add_option("--out", sv_out, "Solution JSON path (stdout when omitted)");

    // run
    auto* run = app.add_subcommand("run", "Run a configured experiment");
    std::string run_config, run_out;
    std::int64_t run_seed = -1;
    run->add_option("--config", run_config, "Experiment config JSON")->required();
    run->add_option("--out", run_out, "Override output directory");
    run->add_option("--seed", run_seed, "Override base seed");

    // compare
    auto* cmp = app.add_subcommand("compare", "Emit comparison CSVs from completed runs");
    std::string cmp_results, cmp_reference, cmp_out;
    cmp->add_option("--results", cmp_results, "Results directory")->required();
    cmp->add_option("--reference", cmp_reference, "Reference front CSV")->required();
    cmp->add_option("--out", cmp_out, "Output directory (defaults to results dir)");

    // indicators
    auto* ind = app.add_subcommand("indicators", "Emit metrics.csv and quality.csv");
    std::string ind_results, ind_reference, ind_out;
    ind->add_option("--results", ind_results, "Results directory")->required();
    ind->add_option("--reference", ind_reference, "Reference front CSV")->required();
    ind->add_option("--out", ind_out, "Output directory (defaults to results dir)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return parden::cli::generate_data(gen_assets, gen_days, gen_seed, gen_out);

        if (bt->parsed()) {
            parden::backtest::BacktestConfig config;
            if (!bt_config.empty()) {
                std::ifstream in(bt_config);
                if (!in) throw parden::ConfigError("cannot open '" + bt_config + "'");
                json j;
                in >> j;
                config.estimation_window = j.value("estimation_window", config.estimation_window);
                config.rebalance_every = j.value("rebalance_every", config.rebalance_every);
                config.start_index = j.value("start_index", config.start_index);
                config.annualization = j.value("annualization", config.annualization);
                config.charge_costs_in_returns =
                    j.value("charge_costs_in_returns", config.charge_costs_in_returns);
                config.covariance_loading = j.value("covariance_loading", config.covariance_loading);
                config.trade_cost = j.value("trade_cost", config.trade_cost);
                config.hold_cost = j.value("hold_cost", config.hold_cost);
                config.in_sample = j.value("in_sample", config.in_sample);
            }
            if (bt_in_sample) config.in_sample = true;
            const auto data = parden::market::load_csv(bt_data);
            parden::TradeoffVector t{bt_gamma, bt_gamma_trade, bt_gamma_hold, bt_lmax};
            const auto result = parden::backtest::evaluate(t, data, config);
            std::cout << result_to_json(result).dump(2) << '\n';
            return result.failed ? 1 : 0;
        }

        if (sv->parsed()) return cmd_solve(sv_problem, sv_out);

        if (run->parsed()) {
            auto config = parden::cli::load_experiment_config(run_config);
            if (!run_out.empty()) config.out_dir = run_out;
            if (run_seed >= 0) config.base_seed = static_cast<std::uint64_t>(run_seed);
            if (threads > 0) config.threads = threads;
            const int completed = parden::cli::run_experiment(config);
            std::cout << "completed " << completed << " run(s) under " << config.out_dir << '\n';
            return completed == config.replications ? 0 : 1;
        }

        if (cmp->parsed()) {
            const auto out = cmp_out.empty() ? cmp_results : cmp_out;
            return parden::cli::compare_results(cmp_results, cmp_reference, out);
        }
        if (ind->parsed()) {
            const auto out = ind_out.empty() ? ind_results : ind_out;
            return parden::cli::indicator_results(ind_results, ind_reference, out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
