#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "parden/backtest/backtest.hpp"
#include "parden/driver/driver.hpp"
#include "parden/indicators/indicators.hpp"
#include "parden/market/market_data.hpp"

namespace parden::cli {

enum class RunMode { Bare, ParDen, Grid, Random };

struct ExperimentConfig {
    // Data source: exactly one of csv_path / synthetic.
    std::string csv_path;
    int synthetic_assets = 0;
    int synthetic_days = 0;
    std::uint64_t synthetic_seed = 0;

    backtest::BacktestConfig backtest;
    SearchSpace space;
    std::string algorithm = "nsga2";
    search::AlgorithmConfig algo;
    RunMode mode = RunMode::Bare;
    driver::ParDenConfig parden;
    int grid_points_per_axis = 5;
    int replications = 1;
    std::uint64_t base_seed = 0;
    std::string reference_front;  // "", "random:<n>", or a front CSV path
    std::string out_dir = "results";
    int threads = 0;

    std::string method_label() const;
};

ExperimentConfig load_experiment_config(const std::filesystem::path& path);
ExperimentConfig parse_experiment_config(const std::string& json_text);

/// FNV-1a over the canonical serialized config; changes iff a semantically
/// meaningful field changes.
std::uint64_t config_hash(const ExperimentConfig& config);

/// Executes all replications (seeds base_seed + i) and writes
/// runs/<method>/<seed>/{generations.csv,front.csv,archive.csv} plus a
/// manifest under out_dir. Returns the number of completed runs.
int run_experiment(const ExperimentConfig& config);

/// One run's reloaded output.
struct StoredRun {
    std::string method;
    std::uint64_t seed = 0;
    std::vector<driver::GenerationLog> logs;
    std::vector<moo::Candidate> archive_rows;  // evaluation order
    std::vector<moo::Candidate> front_rows;

    indicators::RunTrace trace() const;  // snapshots rebuilt from the archive
};

std::vector<StoredRun> load_results_tree(const std::filesystem::path& results_dir);
std::vector<moo::ObjectiveVector> load_front_csv(const std::filesystem::path& path);

/// Emits performance.csv, quality.csv, convergence.csv and fronts.csv into
/// out_dir from a completed results tree and a reference front.
int compare_results(const std::filesystem::path& results_dir,
                    const std::filesystem::path& reference_csv,
                    const std::filesystem::path& out_dir);

/// Emits metrics.csv (method,gd_plus,igd_plus,hv) and quality.csv.
int indicator_results(const std::filesystem::path& results_dir,
                      const std::filesystem::path& reference_csv,
                      const std::filesystem::path& out_dir);

/// Writes a synthetic market CSV.
int generate_data(int n_assets, int t_days, std::uint64_t seed,
                  const std::filesystem::path& out_path);

// Shared CSV row helpers (display convention: return% positive-good).
void write_front_csv(const std::filesystem::path& path,
                     const std::vector<moo::Candidate>& rows, const SearchSpace& space);
void write_generations_csv(const std::filesystem::path& path,
                           const std::vector<driver::GenerationLog>& logs);
std::string format_double(double value);

}  // namespace parden::cli
