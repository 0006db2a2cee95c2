#pragma once

// Independent brute-force oracles used by the tests. Everything here is
// deliberately written from the definitions, not from the library code
// paths it checks.

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "parden/moo/types.hpp"
#include "parden/solver/portfolio.hpp"

namespace oracles {

using parden::moo::ObjectiveVector;

/// Rank by repeated peeling: a point is rank k when, after removing all
/// points of rank < k, no remaining point dominates it (pairwise scan).
std::vector<int> brute_force_ranks(const std::vector<ObjectiveVector>& points);

std::vector<std::size_t> brute_force_rank0(const std::vector<ObjectiveVector>& points);

/// Crowding distance recomputed directly from the definition with a stable
/// sort per objective.
std::vector<double> crowding_reference(const std::vector<ObjectiveVector>& front);

struct McEstimate {
    double value = 0.0;
    double standard_error = 0.0;
};

/// Monte-Carlo hypervolume over the [min(front), reference] box.
McEstimate mc_hypervolume_2d(const std::vector<ObjectiveVector>& front,
                             const ObjectiveVector& reference, std::int64_t n_samples,
                             std::uint64_t seed);

/// Two-pass sample mean / covariance (ddof = 1), explicit loops.
void two_pass_moments(const Eigen::MatrixXd& rows, Eigen::VectorXd& mean,
                      Eigen::MatrixXd& cov);

/// Global minimum of the extended portfolio objective over the constraint
/// set by dense grid refinement; supports 2 and 3 assets.
double grid_refine_extended_minimum(const parden::solver::PortfolioProblem& problem);

/// Best min-pairwise-distance over multi-restart s-energy minimization on
/// the (m-1)-simplex with corners pinned; the reference-direction oracle.
double multi_restart_energy_min_pairwise(int m, int n_dirs, int restarts,
                                         std::uint64_t seed);

double min_pairwise_distance(const std::vector<std::vector<double>>& points);

}  // namespace oracles
