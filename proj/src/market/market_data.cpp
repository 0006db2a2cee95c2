#include "parden/market/market_data.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "parden/common/dates.hpp"
#include "parden/common/errors.hpp"
#include "parden/common/rng.hpp"

namespace parden::market {

namespace {

// Shortest round-trip decimal representation; reparses to the same bits.
std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
    if (cell.empty()) {
        throw IngestionError("missing value at data row " + std::to_string(row) +
                             ", column " + std::to_string(col));
    }
    const char* begin = cell.c_str();
    char* end = nullptr;
    errno = 0;
    const double value = std::strtod(begin, &end);
    if (end != begin + cell.size() || errno == ERANGE || !std::isfinite(value)) {
        throw IngestionError("unparseable numeric cell '" + cell + "' at data row " +
                             std::to_string(row) + ", column " + std::to_string(col));
    }
    return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

}  // namespace

void MarketData::validate() const {
    const auto t = returns.rows();
    const auto n = returns.cols();
    if (n == 0 || t == 0) throw IngestionError("market data is empty");
    if (static_cast<Eigen::Index>(asset_names.size()) != n)
        throw IngestionError("asset name count does not match return columns");
    if (static_cast<Eigen::Index>(dates.size()) != t)
        throw IngestionError("date count does not match return rows");
    for (Eigen::Index i = 1; i < t; ++i) {
        if (dates[static_cast<std::size_t>(i)] <= dates[static_cast<std::size_t>(i - 1)])
            throw IngestionError("dates not strictly increasing at row " + std::to_string(i));
    }
    for (Eigen::Index i = 0; i < t; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double r = returns(i, j);
            if (!std::isfinite(r) || r <= -1.0)
                throw IngestionError("invalid return at row " + std::to_string(i) +
                                     ", column " + std::to_string(j));
        }
    }
}

MarketData load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IngestionError("cannot open '" + path.string() + "'");

    std::string line;
    if (!std::getline(in, line)) throw IngestionError("empty file '" + path.string() + "'");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = split_csv_line(line);
    if (header.size() < 2 || header[0] != "date")
        throw IngestionError("header must be 'date,<asset1>,...,<assetN>'");

    MarketData data;
    data.asset_names.assign(header.begin() + 1, header.end());
    const std::size_t n = data.asset_names.size();

    std::vector<std::vector<double>> rows;
    std::size_t row_number = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != n + 1) {
            throw IngestionError("expected " + std::to_string(n + 1) + " cells, found " +
                                 std::to_string(cells.size()) + " at data row " +
                                 std::to_string(row_number));
        }
        const int day = parse_iso_date(cells[0]);
        if (!data.dates.empty() && day <= data.dates.back()) {
            throw IngestionError("non-monotone or duplicate date '" + cells[0] +
                                 "' at data row " + std::to_string(row_number));
        }
        data.dates.push_back(day);
        std::vector<double> row(n);
        for (std::size_t j = 0; j < n; ++j) row[j] = parse_cell(cells[j + 1], row_number, j + 1);
        rows.push_back(std::move(row));
        ++row_number;
    }
    if (rows.empty()) throw IngestionError("no data rows in '" + path.string() + "'");

    data.returns.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < n; ++j)
            data.returns(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];

    data.validate();
    return data;
}

void save_csv(const MarketData& data, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IngestionError("cannot write '" + path.string() + "'");
    out << "date";
    for (const auto& name : data.asset_names) out << ',' << name;
    out << '\n';
    for (Eigen::Index i = 0; i < data.days(); ++i) {
        out << format_iso_date(data.dates[static_cast<std::size_t>(i)]);
        for (Eigen::Index j = 0; j < data.assets(); ++j)
            out << ',' << format_double(data.returns(i, j));
        out << '\n';
    }
}

SyntheticMarketSpec SyntheticMarketSpec::randomized(int n_assets, int t_days,
                                                    std::uint64_t seed) {
    if (n_assets < 1 || t_days < 1)
        throw ContractViolation("SyntheticMarketSpec: dimensions must be positive");
    SyntheticMarketSpec spec;
    spec.n_assets = n_assets;
    spec.t_days = t_days;
    spec.seed = seed;

    Rng rng(mix_seed(seed, 0x4d4b54ULL));  // parameter stream, distinct from the path stream
    const int n = n_assets;
    const int n_factors = std::min(3, n);

    Eigen::MatrixXd loadings(n, n_factors);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n_factors; ++k) loadings(i, k) = 0.5 * rng.normal();
    Eigen::VectorXd idio(n);
    for (int i = 0; i < n; ++i) idio(i) = rng.uniform(0.2, 0.8);

    Eigen::MatrixXd cov = loadings * loadings.transpose();
    cov.diagonal() += idio;
    // Normalize to a correlation matrix, then scale by annual vols.
    Eigen::VectorXd scale = cov.diagonal().cwiseSqrt().cwiseInverse();
    Eigen::MatrixXd corr = scale.asDiagonal() * cov * scale.asDiagonal();
    Eigen::VectorXd vol(n);
    for (int i = 0; i < n; ++i) vol(i) = rng.uniform(0.10, 0.30);
    spec.true_sigma = vol.asDiagonal() * corr * vol.asDiagonal();
    spec.true_sigma = 0.5 * (spec.true_sigma + spec.true_sigma.transpose()).eval();

    spec.true_mu.resize(n);
    for (int i = 0; i < n; ++i) spec.true_mu(i) = rng.uniform(0.02, 0.12);
    return spec;
}

MarketData generate_synthetic(const SyntheticMarketSpec& spec) {
    if (spec.n_assets < 1 || spec.t_days < 1)
        throw ContractViolation("generate_synthetic: invalid spec dimensions");
    if (spec.true_mu.size() != spec.n_assets ||
        spec.true_sigma.rows() != spec.n_assets || spec.true_sigma.cols() != spec.n_assets)
        throw ContractViolation("generate_synthetic: spec dimensions disagree");

    Eigen::LLT<Eigen::MatrixXd> llt(spec.true_sigma / 252.0);
    if (llt.info() != Eigen::Success)
        throw ContractViolation("generate_synthetic: true_sigma is not positive definite");
    const Eigen::MatrixXd chol = llt.matrixL();
    const Eigen::VectorXd daily_mu = spec.true_mu / 252.0;

    MarketData data;
    data.returns.resize(spec.t_days, spec.n_assets);
    Rng rng(mix_seed(spec.seed, 0x50415448ULL));
    Eigen::VectorXd z(spec.n_assets);
    for (int t = 0; t < spec.t_days; ++t) {
        for (int j = 0; j < spec.n_assets; ++j) z(j) = rng.normal();
        data.returns.row(t) = (daily_mu + chol * z).transpose();
    }

    data.asset_names.resize(static_cast<std::size_t>(spec.n_assets));
    for (int j = 0; j < spec.n_assets; ++j)
        data.asset_names[static_cast<std::size_t>(j)] = "A" + std::to_string(j + 1);
    data.dates.resize(static_cast<std::size_t>(spec.t_days));
    const int epoch = days_from_civil(2010, 1, 4);
    for (int t = 0; t < spec.t_days; ++t) data.dates[static_cast<std::size_t>(t)] = epoch + t;

    data.validate();
    return data;
}

MomentEstimate estimate_moments(const MarketData& data, int end, int window, double loading) {
    const int n = static_cast<int>(data.assets());
    if (window < n + 2)
        throw ContractViolation("estimate_moments: window must be >= N + 2");
    if (end - window < 0 || end > data.days())
        throw ContractViolation("estimate_moments: insufficient history for window");

    const auto block = data.returns.middleRows(end - window, window);
    MomentEstimate est;
    est.as_of = end;
    est.mu = block.colwise().mean();
    const Eigen::MatrixXd centered = block.rowwise() - est.mu.transpose();
    Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(window - 1);
    cov = 0.5 * (cov + cov.transpose()).eval();
    cov.diagonal().array() += loading;
    est.sigma = std::move(cov);
    return est;
}

}  // namespace parden::market
