#pragma once

#include <Eigen/Dense>
#include <vector>

#include "parden/tradeoffs.hpp"

namespace parden::solver {

// Single-period program, minimization form:
//
//   f(w) = (gamma/2) w'Sigma w - mu'w
//          + gamma_t * sum_i c_i |w_i - w0_i|
//          + gamma_h * sum_i s_i max(-w_i, 0)
//   over C = { w : 1'w = 1, ||w||_1 <= L_max }

struct PortfolioProblem {
    Eigen::VectorXd mu;
    Eigen::MatrixXd sigma;
    Eigen::VectorXd w0;
    TradeoffVector tradeoffs;
    Eigen::VectorXd trade_cost;  // per-asset c >= 0
    Eigen::VectorXd hold_cost;   // per-asset s >= 0

    void validate() const;
};

struct SolverOptions {
    double tolerance = 1e-9;  // inf-norm on successive iterates
    int max_iterations = 50000;
    bool record_objective_trace = false;
    double lmax_hint = 0.0;  // precomputed lambda_max(Sigma); 0 = compute here
};

struct PortfolioSolution {
    Eigen::VectorXd w;
    double objective_value = 0.0;  // minimization form f(w)
    int iterations = 0;
    double kkt_residual = 0.0;
    bool converged = true;
    std::vector<double> objective_trace;  // per-iteration f, when requested
};

/// Closed-form solution of the basic program (costs and leverage absent):
/// w = (1/gamma) Sigma^-1 (mu + nu 1), nu = (gamma - 1'Sigma^-1 mu) / (1'Sigma^-1 1),
/// via a symmetric factorization.
PortfolioSolution solve_basic(const Eigen::VectorXd& mu, const Eigen::MatrixXd& sigma,
                              double gamma_risk);

/// Proximal-gradient solution of the extended program: gradient step on the
/// quadratic part with step 1/L, L = gamma * lambda_max(Sigma) from power
/// iteration; the prox of (costs + indicator of C) is computed exactly by a
/// cyclic Dykstra pass over the coordinatewise cost prox, the budget
/// hyperplane and the l1 ball.
PortfolioSolution solve_extended(const PortfolioProblem& problem,
                                 const SolverOptions& options = {},
                                 const Eigen::VectorXd* warm_start = nullptr);

/// Minimal variance at target return r on the unconstrained frontier:
/// sigma^2(r) = (A r^2 - 2 B r + C) / (A C - B^2) with A = 1'S^-1 1,
/// B = 1'S^-1 mu, C = mu'S^-1 mu.
double analytic_frontier(const Eigen::VectorXd& mu, const Eigen::MatrixXd& sigma, double r);

/// f(w) as defined above (without the constraint indicator).
double extended_objective(const PortfolioProblem& problem, const Eigen::VectorXd& w);

/// Exact minimizer of (y - v)^2 / (2 step) + tc |y - w0| + hc max(-y, 0).
double prox_cost_1d(double v, double step, double w0, double tc, double hc);

/// prox_{step * (costs + indicator of C)}(v), by Dykstra's alternation.
Eigen::VectorXd prox_costs_and_constraints(const Eigen::VectorXd& v, double step,
                                           const PortfolioProblem& problem);

/// Largest eigenvalue of a symmetric PSD matrix by power iteration.
double power_iteration_lmax(const Eigen::MatrixXd& sigma);

}  // namespace parden::solver
