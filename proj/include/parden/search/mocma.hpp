#pragma once

#include <Eigen/Dense>

#include "parden/search/metaheuristic.hpp"

namespace parden::search {

/// Elitist (mu+mu) MO-CMA-ES: every individual carries its own step size,
/// success probability, evolution path and covariance, adapted by the
/// success rule; survival selects the best population_size of parents plus
/// offspring under (non-dominating rank, crowding distance, hypervolume
/// contribution).
class MoCmaEs : public Metaheuristic {
public:
    MoCmaEs(int dims, AlgorithmConfig config);

protected:
    std::vector<std::vector<double>> ask_offspring() override;
    void survive(std::vector<moo::Candidate> newcomers,
                 const std::vector<int>& positions) override;
    void on_initial_population() override;

private:
    struct Strategy {
        double sigma = 0.1;
        double p_succ = 0.0;
        Eigen::VectorXd path;
        Eigen::MatrixXd cov;
    };
    struct PendingOffspring {
        std::size_t parent = 0;
        Eigen::VectorXd step;  // (x_child - x_parent) / sigma_parent
        Strategy strategy;     // inherited copy
    };

    Strategy fresh_strategy() const;
    void update_step_size(Strategy& s, double success) const;
    void update_covariance(Strategy& s, const Eigen::VectorXd& step) const;
    /// Best-first total order: rank, then crowding (desc), then hypervolume
    /// contribution (desc), then stable index.
    std::vector<std::size_t> survival_order(const std::vector<moo::Candidate>& all) const;

    std::vector<Strategy> strategies_;        // parallel to population_
    std::vector<PendingOffspring> pending_;   // parallel to the last ask

    // Success-rule constants, canonical formulation for dimension n.
    double damping_ = 0.0;        // d = 1 + n/2
    double p_target_ = 0.0;       // ~0.18 target success rate
    double c_p_ = 0.0;            // success smoothing
    double c_c_ = 0.0;            // path cumulation
    double c_cov_ = 0.0;          // covariance learning rate
    static constexpr double kPThresh = 0.44;
};

}  // namespace parden::search
