#include "parden/surrogate/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "parden/common/errors.hpp"

namespace parden::surrogate {

void SurrogateSpec::validate() const {
    if (kind == SurrogateKind::NearestNeighbor && k < 1)
        throw ContractViolation("SurrogateSpec: k must be >= 1");
    if (kind == SurrogateKind::RbfInterpolator) {
        if (!(ridge > 0.0)) throw ContractViolation("SurrogateSpec: ridge must be > 0");
        if (kernel == RbfKernel::Gaussian && !(length_scale > 0.0))
            throw ContractViolation("SurrogateSpec: length_scale must be > 0");
    }
}

namespace {

double kernel_value(const SurrogateSpec& spec, double r) {
    if (spec.kernel == RbfKernel::Gaussian)
        return std::exp(-r * r / (2.0 * spec.length_scale * spec.length_scale));
    return r > 0.0 ? r * r * std::log(r) : 0.0;  // thin plate
}

}  // namespace

FittedSurrogate FittedSurrogate::fit(const SurrogateSpec& spec,
                                     const std::vector<std::vector<double>>& decisions,
                                     const std::vector<moo::ObjectiveVector>& objectives) {
    spec.validate();
    if (decisions.empty() || decisions.size() != objectives.size())
        throw ContractViolation("FittedSurrogate::fit: need |X| = |Y| >= 1");
    if (spec.kind == SurrogateKind::RbfInterpolator && decisions.size() < 2)
        throw ContractViolation("FittedSurrogate::fit: RBF needs at least 2 points");

    const auto n = static_cast<Eigen::Index>(decisions.size());
    const auto d = static_cast<Eigen::Index>(decisions.front().size());
    const auto m = static_cast<Eigen::Index>(objectives.front().size());

    FittedSurrogate model;
    model.spec_ = spec;
    model.train_x_.resize(n, d);
    model.train_y_.resize(n, m);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& x = decisions[static_cast<std::size_t>(i)];
        const auto& y = objectives[static_cast<std::size_t>(i)];
        if (static_cast<Eigen::Index>(x.size()) != d ||
            static_cast<Eigen::Index>(y.size()) != m)
            throw ContractViolation("FittedSurrogate::fit: ragged training data");
        for (Eigen::Index j = 0; j < d; ++j) model.train_x_(i, j) = x[static_cast<std::size_t>(j)];
        for (Eigen::Index j = 0; j < m; ++j) model.train_y_(i, j) = y[static_cast<std::size_t>(j)];
    }

    if (spec.kind == SurrogateKind::RbfInterpolator) {
        // Augmented system with a bias row so constant targets reproduce
        // exactly everywhere:  [K + ridge*I, 1; 1', 0] [a; b] = [Y; 0]
        Eigen::MatrixXd system = Eigen::MatrixXd::Zero(n + 1, n + 1);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                const double r = (model.train_x_.row(i) - model.train_x_.row(j)).norm();
                system(i, j) = kernel_value(spec, r);
            }
            system(i, i) += spec.ridge;
            system(i, n) = 1.0;
            system(n, i) = 1.0;
        }
        Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n + 1, m);
        rhs.topRows(n) = model.train_y_;
        model.weights_ = system.partialPivLu().solve(rhs);
    }
    return model;
}

moo::ObjectiveVector FittedSurrogate::predict_one(const std::vector<double>& decision) const {
    if (static_cast<Eigen::Index>(decision.size()) != train_x_.cols())
        throw ContractViolation("FittedSurrogate::predict: decision dimension mismatch");
    const Eigen::Map<const Eigen::VectorXd> x(decision.data(),
                                              static_cast<Eigen::Index>(decision.size()));
    const auto n = train_x_.rows();
    const auto m = train_y_.cols();

    if (spec_.kind == SurrogateKind::NearestNeighbor) {
        std::vector<double> dist(static_cast<std::size_t>(n));
        for (Eigen::Index i = 0; i < n; ++i)
            dist[static_cast<std::size_t>(i)] = (train_x_.row(i).transpose() - x).norm();
        std::vector<std::size_t> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), std::size_t{0});
        const std::size_t kk = std::min<std::size_t>(static_cast<std::size_t>(spec_.k),
                                                     order.size());
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
        // Exact hit: return the stored target.
        if (dist[order[0]] == 0.0) {
            moo::ObjectiveVector out(static_cast<std::size_t>(m));
            for (Eigen::Index j = 0; j < m; ++j)
                out[static_cast<std::size_t>(j)] =
                    train_y_(static_cast<Eigen::Index>(order[0]), j);
            return out;
        }
        double weight_sum = 0.0;
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(m);
        for (std::size_t t = 0; t < kk; ++t) {
            const double w = 1.0 / dist[order[t]];
            weight_sum += w;
            acc += w * train_y_.row(static_cast<Eigen::Index>(order[t])).transpose();
        }
        acc /= weight_sum;
        return moo::ObjectiveVector(acc.data(), acc.data() + m);
    }

    Eigen::VectorXd features(n + 1);
    for (Eigen::Index i = 0; i < n; ++i)
        features(i) = kernel_value(spec_, (train_x_.row(i).transpose() - x).norm());
    features(n) = 1.0;
    const Eigen::VectorXd y = weights_.transpose() * features;
    return moo::ObjectiveVector(y.data(), y.data() + m);
}

std::vector<moo::ObjectiveVector> FittedSurrogate::predict(
    const std::vector<std::vector<double>>& decisions) const {
    std::vector<moo::ObjectiveVector> out;
    out.reserve(decisions.size());
    for (const auto& x : decisions) out.push_back(predict_one(x));
    return out;
}

}  // namespace parden::surrogate
