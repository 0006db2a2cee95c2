#pragma once

#include <Eigen/Dense>
#include <vector>

#include "parden/moo/types.hpp"

namespace parden::surrogate {

enum class SurrogateKind { NearestNeighbor, RbfInterpolator };
enum class RbfKernel { ThinPlate, Gaussian };

struct SurrogateSpec {
    SurrogateKind kind = SurrogateKind::RbfInterpolator;
    int k = 3;                               // neighbors, inverse-distance weighted
    RbfKernel kernel = RbfKernel::ThinPlate;
    double length_scale = 0.25;              // Gaussian kernel
    double ridge = 1e-8;

    void validate() const;
};

/// One independent squared-error regressor per objective, fit on encoded
/// decisions. Immutable after fit; safe for concurrent predict calls.
class FittedSurrogate {
public:
    static FittedSurrogate fit(const SurrogateSpec& spec,
                               const std::vector<std::vector<double>>& decisions,
                               const std::vector<moo::ObjectiveVector>& objectives);

    moo::ObjectiveVector predict_one(const std::vector<double>& decision) const;
    std::vector<moo::ObjectiveVector> predict(
        const std::vector<std::vector<double>>& decisions) const;

    std::size_t objective_count() const { return static_cast<std::size_t>(train_y_.cols()); }
    std::size_t training_size() const { return static_cast<std::size_t>(train_x_.rows()); }

private:
    SurrogateSpec spec_;
    Eigen::MatrixXd train_x_;  // n x d
    Eigen::MatrixXd train_y_;  // n x m
    Eigen::MatrixXd weights_;  // RBF: (n+1) x m, last row is the bias
};

}  // namespace parden::surrogate
