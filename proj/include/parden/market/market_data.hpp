#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace parden::market {

/// Daily simple returns, T days x N assets, immutable after construction and
/// shared read-only across evaluation workers.
struct MarketData {
    Eigen::MatrixXd returns;              // T x N, dimensionless (0.01 = 1%)
    std::vector<std::string> asset_names;  // N labels
    std::vector<int> dates;                // serial days, strictly increasing

    Eigen::Index days() const { return returns.rows(); }
    Eigen::Index assets() const { return returns.cols(); }

    /// Enforces shape consistency, finite returns > -1, monotone dates.
    void validate() const;
};

/// CSV schema: UTF-8, comma-separated, header "date,<asset1>,...,<assetN>",
/// ISO-8601 dates, returns as decimal fractions.
MarketData load_csv(const std::filesystem::path& path);
void save_csv(const MarketData& data, const std::filesystem::path& path);

/// Parameters of a synthetic market with a known annualized mean/covariance.
struct SyntheticMarketSpec {
    int n_assets = 0;
    int t_days = 0;
    Eigen::VectorXd true_mu;     // annualized drift
    Eigen::MatrixXd true_sigma;  // annualized covariance, positive definite
    std::uint64_t seed = 0;

    /// Builds a spec with a randomized factor-model covariance: correlations
    /// from a 3-factor loading matrix, annual vols in [10%, 30%], annual
    /// drifts in [2%, 12%]. Deterministic per seed.
    static SyntheticMarketSpec randomized(int n_assets, int t_days, std::uint64_t seed);
};

/// Multivariate-normal daily returns with mean true_mu/252 and covariance
/// true_sigma/252; byte-identical output per seed.
MarketData generate_synthetic(const SyntheticMarketSpec& spec);

/// Sample mean and covariance of a trailing window, as of a date index.
struct MomentEstimate {
    Eigen::VectorXd mu;     // expected daily returns
    Eigen::MatrixXd sigma;  // daily covariance + loading * I
    int as_of = 0;
};

/// Moments over rows [end - window, end), with loading added to the
/// covariance diagonal. Requires window >= N + 2 and end - window >= 0.
MomentEstimate estimate_moments(const MarketData& data, int end, int window, double loading);

}  // namespace parden::market
