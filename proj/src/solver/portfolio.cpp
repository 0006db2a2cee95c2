#include "parden/solver/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

#include "parden/common/errors.hpp"
#include "parden/common/projections.hpp"

namespace parden::solver {

namespace {

Eigen::LDLT<Eigen::MatrixXd> factorize(const Eigen::MatrixXd& sigma) {
    Eigen::LDLT<Eigen::MatrixXd> ldlt(sigma);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
        ldlt.vectorD().minCoeff() <= 0.0) {
        throw SolverError("covariance factorization failed: matrix not positive definite");
    }
    return ldlt;
}

}  // namespace

void PortfolioProblem::validate() const {
    const auto n = mu.size();
    if (n == 0) throw ContractViolation("PortfolioProblem: empty instance");
    if (sigma.rows() != n || sigma.cols() != n || w0.size() != n ||
        trade_cost.size() != n || hold_cost.size() != n)
        throw ContractViolation("PortfolioProblem: dimension mismatch");
    if (std::abs(w0.sum() - 1.0) > 1e-9)
        throw ContractViolation("PortfolioProblem: w0 must sum to 1");
    if ((trade_cost.array() < 0.0).any() || (hold_cost.array() < 0.0).any())
        throw ContractViolation("PortfolioProblem: cost coefficients must be >= 0");
    tradeoffs.validate();
}

PortfolioSolution solve_basic(const Eigen::VectorXd& mu, const Eigen::MatrixXd& sigma,
                              double gamma_risk) {
    if (!(gamma_risk > 0.0)) throw ContractViolation("solve_basic: gamma_risk must be > 0");
    if (sigma.rows() != mu.size() || sigma.cols() != mu.size())
        throw ContractViolation("solve_basic: dimension mismatch");

    const auto ldlt = factorize(sigma);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(mu.size());
    const Eigen::VectorXd sig_inv_mu = ldlt.solve(mu);
    const Eigen::VectorXd sig_inv_ones = ldlt.solve(ones);
    const double denom = sig_inv_ones.sum();
    if (!(denom > 0.0)) throw SolverError("solve_basic: 1'Sigma^-1 1 not positive");

    const double nu = (gamma_risk - sig_inv_mu.sum()) / denom;

    PortfolioSolution sol;
    sol.w = (sig_inv_mu + nu * sig_inv_ones) / gamma_risk;
    sol.iterations = 1;
    sol.converged = true;
    sol.kkt_residual =
        (mu + nu * ones - gamma_risk * (sigma * sol.w)).cwiseAbs().maxCoeff();
    sol.objective_value = 0.5 * gamma_risk * sol.w.dot(sigma * sol.w) - mu.dot(sol.w);
    return sol;
}

double analytic_frontier(const Eigen::VectorXd& mu, const Eigen::MatrixXd& sigma, double r) {
    const auto ldlt = factorize(sigma);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(mu.size());
    const Eigen::VectorXd sig_inv_ones = ldlt.solve(ones);
    const Eigen::VectorXd sig_inv_mu = ldlt.solve(mu);
    const double a = sig_inv_ones.sum();
    const double b = sig_inv_mu.sum();
    const double c = mu.dot(sig_inv_mu);
    const double det = a * c - b * b;
    if (det <= 0.0)
        throw SolverError("analytic_frontier: degenerate frontier (mu proportional to 1)");
    return (a * r * r - 2.0 * b * r + c) / det;
}

double extended_objective(const PortfolioProblem& p, const Eigen::VectorXd& w) {
    const double quad = 0.5 * p.tradeoffs.gamma_risk * w.dot(p.sigma * w) - p.mu.dot(w);
    const double trade =
        p.tradeoffs.gamma_trade * (p.trade_cost.array() * (w - p.w0).array().abs()).sum();
    const double hold =
        p.tradeoffs.gamma_hold * (p.hold_cost.array() * (-w.array()).max(0.0)).sum();
    return quad + trade + hold;
}

double prox_cost_1d(double v, double step, double w0, double tc, double hc) {
    const double lo_break = std::min(0.0, w0);
    const double hi_break = std::max(0.0, w0);

    const auto objective = [&](double y) {
        const double diff = y - v;
        return diff * diff / (2.0 * step) + tc * std::abs(y - w0) +
               hc * std::max(-y, 0.0);
    };
    // Per piece the nonsmooth part has a constant slope g; the minimizer of
    // the piece is clamp(v - step*g). Breakpoints are candidates too.
    const auto piece_candidate = [&](double lo, double hi) {
        const double mid = 0.5 * (std::max(lo, -1e300) + std::min(hi, 1e300));
        double g = 0.0;
        g += tc * (mid > w0 ? 1.0 : (mid < w0 ? -1.0 : 0.0));
        if (mid < 0.0) g -= hc;
        return std::clamp(v - step * g, lo, hi);
    };

    double best = lo_break;
    double best_val = objective(lo_break);
    const double candidates[] = {
        hi_break,
        piece_candidate(-std::numeric_limits<double>::infinity(), lo_break),
        piece_candidate(lo_break, hi_break),
        piece_candidate(hi_break, std::numeric_limits<double>::infinity()),
    };
    for (double y : candidates) {
        const double val = objective(y);
        if (val < best_val) {
            best_val = val;
            best = y;
        }
    }
    return best;
}

Eigen::VectorXd prox_costs_and_constraints(const Eigen::VectorXd& v, double step,
                                           const PortfolioProblem& p) {
    const auto n = v.size();
    const double radius = p.tradeoffs.leverage_max;
    const double gt = p.tradeoffs.gamma_trade;
    const double gh = p.tradeoffs.gamma_hold;
    const bool has_costs = (gt > 0.0 && p.trade_cost.maxCoeff() > 0.0) ||
                           (gh > 0.0 && p.hold_cost.maxCoeff() > 0.0);

    Eigen::VectorXd x = v;
    Eigen::VectorXd p_cost = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd p_plane = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd p_ball = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd y(n), prev(n);

    constexpr int kMaxCycles = 2000;
    for (int cycle = 0; cycle < kMaxCycles; ++cycle) {
        prev = x;

        if (has_costs) {
            y = x + p_cost;
            for (Eigen::Index i = 0; i < n; ++i) {
                y(i) = prox_cost_1d(y(i), step, p.w0(i), gt * p.trade_cost(i),
                                    gh * p.hold_cost(i));
            }
            p_cost += x - y;
            x = y;
        }

        y = x + p_plane;
        project_sum_hyperplane(std::span<double>(y.data(), static_cast<std::size_t>(n)));
        p_plane += x - y;
        x = y;

        y = x + p_ball;
        project_l1_ball(std::span<double>(y.data(), static_cast<std::size_t>(n)), radius);
        p_ball += x - y;
        x = y;

        if ((x - prev).cwiseAbs().maxCoeff() < 1e-13 * std::max(1.0, x.cwiseAbs().maxCoeff()))
            break;
    }
    return x;
}

double power_iteration_lmax(const Eigen::MatrixXd& sigma) {
    const auto n = sigma.rows();
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = 1.0 + 0.01 * static_cast<double>(i + 1);
    v.normalize();
    double lambda = 0.0;
    for (int iter = 0; iter < 300; ++iter) {
        Eigen::VectorXd next = sigma * v;
        const double norm = next.norm();
        if (norm <= 0.0) return 0.0;
        next /= norm;
        const double estimate = next.dot(sigma * next);
        if (std::abs(estimate - lambda) <= 1e-13 * std::max(1.0, std::abs(estimate))) {
            lambda = estimate;
            break;
        }
        lambda = estimate;
        v = next;
    }
    return lambda;
}

PortfolioSolution solve_extended(const PortfolioProblem& problem, const SolverOptions& options,
                                 const Eigen::VectorXd* warm_start) {
    if (problem.tradeoffs.leverage_max < 1.0)
        throw SolverError("solve_extended: infeasible constraint set (leverage_max < 1)");
    problem.validate();

    const auto n = problem.mu.size();
    const double gamma = problem.tradeoffs.gamma_risk;
    const double lmax =
        options.lmax_hint > 0.0 ? options.lmax_hint : power_iteration_lmax(problem.sigma);
    const double lip = std::max(gamma * lmax, 1e-300);
    const double step = 1.0 / (lip * (1.0 + 1e-9));

    // Feasible start: project the warm start (or w0) onto C.
    Eigen::VectorXd w = warm_start != nullptr ? *warm_start : problem.w0;
    {
        std::span<double> ws(w.data(), static_cast<std::size_t>(n));
        project_sum_hyperplane(ws);
        for (int pass = 0; pass < 200; ++pass) {
            const Eigen::VectorXd before = w;
            project_l1_ball(ws, problem.tradeoffs.leverage_max);
            project_sum_hyperplane(ws);
            if ((w - before).cwiseAbs().maxCoeff() < 1e-13) break;
        }
    }

    PortfolioSolution sol;
    if (options.record_objective_trace)
        sol.objective_trace.reserve(std::min(options.max_iterations, 4096));

    double delta = std::numeric_limits<double>::infinity();
    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        const Eigen::VectorXd grad = gamma * (problem.sigma * w) - problem.mu;
        const Eigen::VectorXd w_next =
            prox_costs_and_constraints(w - step * grad, step, problem);
        delta = (w_next - w).cwiseAbs().maxCoeff();
        w = w_next;
        if (options.record_objective_trace)
            sol.objective_trace.push_back(extended_objective(problem, w));
        if (delta < options.tolerance) {
            ++iter;
            break;
        }
    }

    sol.w = std::move(w);
    sol.iterations = iter;
    sol.kkt_residual = delta;
    sol.converged = delta < options.tolerance;
    sol.objective_value = extended_objective(problem, sol.w);
    return sol;
}

}  // namespace parden::solver
