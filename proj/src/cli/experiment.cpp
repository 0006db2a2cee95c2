#include "parden/cli/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "parden/common/errors.hpp"
#include "parden/common/rng.hpp"
#include "parden/moo/dominance.hpp"
#include "parden/search/baselines.hpp"

namespace parden::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

namespace {

constexpr const char* kVersion = "0.1.0";

double parse_double(const std::string& cell, const std::string& context) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + cell.size())
        throw IngestionError("unparseable number '" + cell + "' in " + context);
    return v;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw IngestionError("missing CSV column '" + name + "'");
    }
};

CsvTable read_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IngestionError("cannot open '" + path.string() + "'");
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw IngestionError("empty file '" + path.string() + "'");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    table.header = split_line(line);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        table.rows.push_back(split_line(line));
    }
    return table;
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

json surrogate_to_json(const surrogate::SurrogateSpec& s) {
    json j;
    j["kind"] = s.kind == surrogate::SurrogateKind::RbfInterpolator ? "rbf" : "knn";
    j["kernel"] = s.kernel == surrogate::RbfKernel::ThinPlate ? "thin_plate" : "gaussian";
    j["k"] = s.k;
    j["length_scale"] = s.length_scale;
    j["ridge"] = s.ridge;
    return j;
}

json semantic_json(const ExperimentConfig& c) {
    json j;
    if (!c.csv_path.empty()) {
        j["data"]["csv"] = c.csv_path;
    } else {
        j["data"]["synthetic"] = {{"n_assets", c.synthetic_assets},
                                  {"t_days", c.synthetic_days},
                                  {"seed", c.synthetic_seed}};
    }
    j["backtest"] = {{"estimation_window", c.backtest.estimation_window},
                     {"rebalance_every", c.backtest.rebalance_every},
                     {"start_index", c.backtest.start_index},
                     {"annualization", c.backtest.annualization},
                     {"charge_costs_in_returns", c.backtest.charge_costs_in_returns},
                     {"covariance_loading", c.backtest.covariance_loading},
                     {"trade_cost", c.backtest.trade_cost},
                     {"hold_cost", c.backtest.hold_cost},
                     {"in_sample", c.backtest.in_sample}};
    j["search_space"] = {{"gamma", {c.space.gamma_risk_lo, c.space.gamma_risk_hi}},
                         {"gamma_trade", {c.space.gamma_trade_lo, c.space.gamma_trade_hi}},
                         {"gamma_hold", {c.space.gamma_hold_lo, c.space.gamma_hold_hi}},
                         {"leverage", {c.space.leverage_lo, c.space.leverage_hi}}};
    j["algorithm"] = {{"name", c.algorithm},
                      {"population_size", c.algo.population_size},
                      {"offspring_size", c.algo.offspring_size},
                      {"crossover_prob", c.algo.crossover_prob},
                      {"mutation_prob", c.algo.mutation_prob},
                      {"mutation_eta", c.algo.mutation_eta},
                      {"epsilon", c.algo.epsilon},
                      {"sigma0", c.algo.sigma0},
                      {"n_reference_dirs", c.algo.n_reference_dirs}};
    j["mode"] = static_cast<int>(c.mode);
    j["parden"] = {{"evaluation_budget", c.parden.evaluation_budget},
                   {"cv_folds", c.parden.cv_folds},
                   {"metric", c.parden.metric == surrogate::RankMetric::Accuracy ? "accuracy"
                                                                                 : "macro_f1"},
                   {"rejected_tell",
                    c.parden.rejected_tell == driver::RejectedTellPolicy::PredictedTell
                        ? "predicted"
                        : "discard"},
                   {"surrogate", surrogate_to_json(c.parden.surrogate)}};
    j["grid_points_per_axis"] = c.grid_points_per_axis;
    j["replications"] = c.replications;
    j["base_seed"] = c.base_seed;
    j["reference_front"] = c.reference_front;
    return j;
}

std::string iso_timestamp_utc() {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

}  // namespace

std::string ExperimentConfig::method_label() const {
    switch (mode) {
        case RunMode::Bare:
            return algorithm;
        case RunMode::ParDen:
            return "parden-" + algorithm;
        case RunMode::Grid:
            return "grid";
        case RunMode::Random:
            return "random";
    }
    return "unknown";
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig c;

    if (!j.contains("data")) throw ConfigError("config missing field 'data'");
    const auto& data = j.at("data");
    if (data.contains("csv")) {
        c.csv_path = data.at("csv").get<std::string>();
    } else if (data.contains("synthetic")) {
        const auto& s = data.at("synthetic");
        c.synthetic_assets = s.value("n_assets", 5);
        c.synthetic_days = s.value("t_days", 1260);
        c.synthetic_seed = s.value("seed", std::uint64_t{7});
    } else {
        throw ConfigError("config field 'data' needs 'csv' or 'synthetic'");
    }

    if (j.contains("backtest")) {
        const auto& b = j.at("backtest");
        c.backtest.estimation_window = b.value("estimation_window", c.backtest.estimation_window);
        c.backtest.rebalance_every = b.value("rebalance_every", c.backtest.rebalance_every);
        c.backtest.start_index = b.value("start_index", c.backtest.start_index);
        c.backtest.annualization = b.value("annualization", c.backtest.annualization);
        c.backtest.charge_costs_in_returns =
            b.value("charge_costs_in_returns", c.backtest.charge_costs_in_returns);
        c.backtest.covariance_loading = b.value("covariance_loading", c.backtest.covariance_loading);
        c.backtest.trade_cost = b.value("trade_cost", c.backtest.trade_cost);
        c.backtest.hold_cost = b.value("hold_cost", c.backtest.hold_cost);
        c.backtest.in_sample = b.value("in_sample", c.backtest.in_sample);
    }

    if (j.contains("search_space")) {
        const auto& s = j.at("search_space");
        const auto load_axis = [&](const char* name, double& lo, double& hi) {
            if (!s.contains(name)) return;
            const auto& axis = s.at(name);
            if (!axis.is_array() || axis.size() != 2)
                throw ConfigError(std::string("search_space.") + name + " must be [lo, hi]");
            lo = axis[0].get<double>();
            hi = axis[1].get<double>();
        };
        load_axis("gamma", c.space.gamma_risk_lo, c.space.gamma_risk_hi);
        load_axis("gamma_trade", c.space.gamma_trade_lo, c.space.gamma_trade_hi);
        load_axis("gamma_hold", c.space.gamma_hold_lo, c.space.gamma_hold_hi);
        load_axis("leverage", c.space.leverage_lo, c.space.leverage_hi);
    }

    if (j.contains("algorithm")) {
        const auto& a = j.at("algorithm");
        c.algorithm = a.value("name", c.algorithm);
        c.algo.population_size = a.value("population_size", c.algo.population_size);
        c.algo.offspring_size = a.value("offspring_size", c.algo.offspring_size);
        c.algo.crossover_prob = a.value("crossover_prob", c.algo.crossover_prob);
        c.algo.mutation_prob = a.value("mutation_prob", c.algo.mutation_prob);
        c.algo.mutation_eta = a.value("mutation_eta", c.algo.mutation_eta);
        c.algo.epsilon = a.value("epsilon", c.algo.epsilon);
        c.algo.sigma0 = a.value("sigma0", c.algo.sigma0);
        c.algo.n_reference_dirs = a.value("n_reference_dirs", c.algo.n_reference_dirs);
        if (a.contains("reference_points")) {
            for (const auto& p : a.at("reference_points"))
                c.algo.reference_points.push_back(p.get<moo::ObjectiveVector>());
        }
    }

    const std::string mode = j.value("mode", std::string("bare"));
    if (mode == "bare") c.mode = RunMode::Bare;
    else if (mode == "parden") c.mode = RunMode::ParDen;
    else if (mode == "grid") c.mode = RunMode::Grid;
    else if (mode == "random") c.mode = RunMode::Random;
    else throw ConfigError("unknown mode '" + mode + "'");

    if (j.contains("parden")) {
        const auto& p = j.at("parden");
        c.parden.evaluation_budget = p.value("evaluation_budget", c.parden.evaluation_budget);
        c.parden.cv_folds = p.value("cv_folds", c.parden.cv_folds);
        const std::string metric = p.value("metric", std::string("accuracy"));
        if (metric == "accuracy") c.parden.metric = surrogate::RankMetric::Accuracy;
        else if (metric == "macro_f1") c.parden.metric = surrogate::RankMetric::MacroF1;
        else throw ConfigError("unknown parden.metric '" + metric + "'");
        const std::string tell = p.value("rejected_tell", std::string("predicted"));
        if (tell == "predicted") c.parden.rejected_tell = driver::RejectedTellPolicy::PredictedTell;
        else if (tell == "discard")
            c.parden.rejected_tell = driver::RejectedTellPolicy::DiscardRejected;
        else throw ConfigError("unknown parden.rejected_tell '" + tell + "'");
        if (p.contains("surrogate")) {
            const auto& s = p.at("surrogate");
            const std::string kind = s.value("kind", std::string("rbf"));
            if (kind == "rbf") c.parden.surrogate.kind = surrogate::SurrogateKind::RbfInterpolator;
            else if (kind == "knn")
                c.parden.surrogate.kind = surrogate::SurrogateKind::NearestNeighbor;
            else throw ConfigError("unknown surrogate.kind '" + kind + "'");
            const std::string kernel = s.value("kernel", std::string("thin_plate"));
            if (kernel == "thin_plate") c.parden.surrogate.kernel = surrogate::RbfKernel::ThinPlate;
            else if (kernel == "gaussian")
                c.parden.surrogate.kernel = surrogate::RbfKernel::Gaussian;
            else throw ConfigError("unknown surrogate.kernel '" + kernel + "'");
            c.parden.surrogate.k = s.value("k", c.parden.surrogate.k);
            c.parden.surrogate.length_scale = s.value("length_scale", c.parden.surrogate.length_scale);
            c.parden.surrogate.ridge = s.value("ridge", c.parden.surrogate.ridge);
        }
    }

    if (j.contains("grid")) c.grid_points_per_axis = j.at("grid").value("points_per_axis", 5);
    c.replications = j.value("replications", 1);
    if (c.replications < 1) throw ConfigError("replications must be >= 1");
    c.base_seed = j.value("base_seed", std::uint64_t{0});
    if (j.contains("reference_front") && !j.at("reference_front").is_null())
        c.reference_front = j.at("reference_front").get<std::string>();
    c.out_dir = j.value("out_dir", c.out_dir);
    c.threads = j.value("threads", 0);
    return c;
}

ExperimentConfig load_experiment_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    auto config = parse_experiment_config(ss.str());
    if (!config.csv_path.empty() && !fs::exists(config.csv_path))
        throw ConfigError("data.csv path does not exist: '" + config.csv_path + "'");
    if (!config.reference_front.empty() && config.reference_front.rfind("random:", 0) != 0 &&
        !fs::exists(config.reference_front))
        throw ConfigError("reference_front path does not exist: '" + config.reference_front + "'");
    return config;
}

std::uint64_t config_hash(const ExperimentConfig& config) {
    return fnv1a(semantic_json(config).dump());
}

void write_front_csv(const fs::path& path, const std::vector<moo::Candidate>& rows,
                     const SearchSpace& space) {
    std::ofstream out(path);
    if (!out) throw IngestionError("cannot write '" + path.string() + "'");
    out << "eval_index,x1,x2,x3,x4,gamma,gamma_trade,gamma_hold,leverage_max,"
           "risk_pct,return_pct\n";
    for (const auto& c : rows) {
        const auto t = space.decode(c.decision);
        out << (c.eval_index ? *c.eval_index : -1);
        for (double x : c.decision) out << ',' << format_double(x);
        out << ',' << format_double(t.gamma_risk) << ',' << format_double(t.gamma_trade)
            << ',' << format_double(t.gamma_hold) << ',' << format_double(t.leverage_max)
            << ',' << format_double(c.objectives[0]) << ',' << format_double(-c.objectives[1])
            << '\n';
    }
}

void write_generations_csv(const fs::path& path,
                           const std::vector<driver::GenerationLog>& logs) {
    std::ofstream out(path);
    if (!out) throw IngestionError("cannot write '" + path.string() + "'");
    out << "generation,candidates_proposed,pretenders_evaluated,cumulative_evaluations,"
           "archive_size,ndscore,hv,gd_plus,igd_plus\n";
    for (const auto& log : logs) {
        out << log.generation << ',' << log.candidates_proposed << ','
            << log.pretenders_evaluated << ',' << log.cumulative_evaluations << ','
            << log.archive_size << ',' << format_double(log.ndscore) << ',';
        if (log.hv) out << format_double(*log.hv);
        out << ',';
        if (log.gd_plus) out << format_double(*log.gd_plus);
        out << ',';
        if (log.igd_plus) out << format_double(*log.igd_plus);
        out << '\n';
    }
}

std::vector<moo::ObjectiveVector> load_front_csv(const fs::path& path) {
    const auto table = read_csv(path);
    const std::size_t risk_col = table.column("risk_pct");
    const std::size_t ret_col = table.column("return_pct");
    std::vector<moo::ObjectiveVector> out;
    out.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        out.push_back({parse_double(row[risk_col], path.string()),
                       -parse_double(row[ret_col], path.string())});
    }
    return out;
}

namespace {

std::vector<moo::Candidate> load_candidates_csv(const fs::path& path) {
    const auto table = read_csv(path);
    const std::size_t eval_col = table.column("eval_index");
    const std::size_t x1 = table.column("x1");
    const std::size_t risk_col = table.column("risk_pct");
    const std::size_t ret_col = table.column("return_pct");
    std::vector<moo::Candidate> out;
    out.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        moo::Candidate c;
        c.source = moo::FitnessSource::Simulated;
        c.eval_index = static_cast<int>(parse_double(row[eval_col], path.string()));
        for (std::size_t k = 0; k < 4; ++k)
            c.decision.push_back(parse_double(row[x1 + k], path.string()));
        c.objectives = {parse_double(row[risk_col], path.string()),
                        -parse_double(row[ret_col], path.string())};
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<driver::GenerationLog> load_generations_csv(const fs::path& path) {
    const auto table = read_csv(path);
    const std::size_t gen = table.column("generation");
    const std::size_t proposed = table.column("candidates_proposed");
    const std::size_t evaluated = table.column("pretenders_evaluated");
    const std::size_t cumulative = table.column("cumulative_evaluations");
    const std::size_t arch = table.column("archive_size");
    const std::size_t nds = table.column("ndscore");
    const std::size_t hv = table.column("hv");
    const std::size_t gdp = table.column("gd_plus");
    const std::size_t igdp = table.column("igd_plus");
    std::vector<driver::GenerationLog> out;
    for (const auto& row : table.rows) {
        driver::GenerationLog log;
        log.generation = static_cast<int>(parse_double(row[gen], path.string()));
        log.candidates_proposed = static_cast<int>(parse_double(row[proposed], path.string()));
        log.pretenders_evaluated = static_cast<int>(parse_double(row[evaluated], path.string()));
        log.cumulative_evaluations =
            static_cast<long>(parse_double(row[cumulative], path.string()));
        log.archive_size = static_cast<long>(parse_double(row[arch], path.string()));
        log.ndscore = parse_double(row[nds], path.string());
        if (!row[hv].empty()) log.hv = parse_double(row[hv], path.string());
        if (!row[gdp].empty()) log.gd_plus = parse_double(row[gdp], path.string());
        if (!row[igdp].empty()) log.igd_plus = parse_double(row[igdp], path.string());
        out.push_back(std::move(log));
    }
    return out;
}

market::MarketData resolve_data(const ExperimentConfig& config) {
    if (!config.csv_path.empty()) return market::load_csv(config.csv_path);
    return market::generate_synthetic(market::SyntheticMarketSpec::randomized(
        config.synthetic_assets, config.synthetic_days, config.synthetic_seed));
}

}  // namespace

indicators::RunTrace StoredRun::trace() const {
    indicators::RunTrace trace;
    std::vector<moo::ObjectiveVector> prefix;
    prefix.reserve(archive_rows.size());
    for (const auto& log : logs) {
        indicators::RunTrace::Generation gen;
        gen.generation = log.generation;
        gen.cumulative_evaluations = log.cumulative_evaluations;
        prefix.clear();
        for (long i = 0; i < log.archive_size; ++i)
            prefix.push_back(archive_rows[static_cast<std::size_t>(i)].objectives);
        for (std::size_t i : moo::rank0_indices(prefix)) gen.front.push_back(prefix[i]);
        trace.generations.push_back(std::move(gen));
    }
    return trace;
}

int run_experiment(const ExperimentConfig& config) {
    const auto data = resolve_data(config);
    const backtest::BacktestEvaluator evaluator(data, config.backtest, config.space);
    const int threads = config.threads;
    const search::BatchFn batch = [&](const std::vector<std::vector<double>>& xs) {
        const auto results = evaluator.evaluate_batch_encoded(xs, threads);
        std::vector<moo::ObjectiveVector> ys;
        ys.reserve(results.size());
        for (const auto& r : results) ys.push_back(r.objectives);
        return ys;
    };

    const fs::path out_root(config.out_dir);
    fs::create_directories(out_root);

    // Optional reference front for the per-generation indicator columns.
    std::vector<moo::ObjectiveVector> reference;
    if (!config.reference_front.empty()) {
        if (config.reference_front.rfind("random:", 0) == 0) {
            const int n = std::stoi(config.reference_front.substr(7));
            const auto archive = search::random_search(
                SearchSpace::kDims, n, mix_seed(config.base_seed, 0x524546ULL), batch);
            const auto front = moo::pareto_filter(archive.entries());
            reference = front.objectives();
            write_front_csv(out_root / "reference_front.csv", front.members, config.space);
        } else {
            reference = load_front_csv(config.reference_front);
        }
    }
    moo::ObjectiveVector provisional_ref_point;
    if (!reference.empty())
        provisional_ref_point = indicators::worst_point_with_margin({reference});

    int completed = 0;
    for (int rep = 0; rep < config.replications; ++rep) {
        const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(rep);
        driver::RunResult run_result;

        switch (config.mode) {
            case RunMode::Grid:
            case RunMode::Random: {
                moo::Archive archive =
                    config.mode == RunMode::Grid
                        ? search::grid_search(SearchSpace::kDims, config.grid_points_per_axis,
                                              config.parden.evaluation_budget, batch)
                        : search::random_search(SearchSpace::kDims,
                                                static_cast<int>(config.parden.evaluation_budget),
                                                seed, batch);
                run_result.archive = std::move(archive);
                run_result.front = moo::pareto_filter(run_result.archive.entries());
                driver::GenerationLog log;
                log.generation = 0;
                log.candidates_proposed = static_cast<int>(run_result.archive.size());
                log.pretenders_evaluated = log.candidates_proposed;
                log.cumulative_evaluations = static_cast<long>(run_result.archive.size());
                log.archive_size = static_cast<long>(run_result.archive.size());
                log.front_snapshot = run_result.front.objectives();
                run_result.logs.push_back(std::move(log));
                break;
            }
            case RunMode::Bare:
            case RunMode::ParDen: {
                auto algo = config.algo;
                algo.seed = seed;
                auto meta = search::make_metaheuristic(config.algorithm, SearchSpace::kDims, algo);
                auto pcfg = config.parden;
                pcfg.seed = seed;
                pcfg.warm_start_size = algo.population_size;
                run_result = config.mode == RunMode::ParDen ? driver::run(*meta, batch, pcfg)
                                                            : driver::run_bare(*meta, batch, pcfg);
                break;
            }
        }

        if (!reference.empty()) {
            for (auto& log : run_result.logs) {
                if (log.front_snapshot.empty()) continue;
                log.hv = indicators::hypervolume_2d(log.front_snapshot, provisional_ref_point);
                log.gd_plus = indicators::gd_plus(log.front_snapshot, reference);
                log.igd_plus = indicators::igd_plus(log.front_snapshot, reference);
            }
        }

        const fs::path run_dir =
            out_root / "runs" / config.method_label() / std::to_string(seed);
        fs::create_directories(run_dir);
        write_generations_csv(run_dir / "generations.csv", run_result.logs);
        write_front_csv(run_dir / "front.csv", run_result.front.members, config.space);
        write_front_csv(run_dir / "archive.csv", run_result.archive.entries(), config.space);
        ++completed;
    }

    json manifest;
    manifest["config_hash"] = std::to_string(config_hash(config));
    manifest["version"] = kVersion;
    manifest["created"] = iso_timestamp_utc();
    manifest["replications_completed"] = completed;
    std::ofstream mf(out_root / "manifest.json");
    mf << manifest.dump(2) << '\n';
    return completed;
}

std::vector<StoredRun> load_results_tree(const fs::path& results_dir) {
    const fs::path runs_dir = results_dir / "runs";
    if (!fs::exists(runs_dir))
        throw IngestionError("no runs/ directory under '" + results_dir.string() + "'");

    std::vector<fs::path> method_dirs;
    for (const auto& entry : fs::directory_iterator(runs_dir))
        if (entry.is_directory()) method_dirs.push_back(entry.path());
    std::sort(method_dirs.begin(), method_dirs.end());

    std::vector<StoredRun> out;
    for (const auto& method_dir : method_dirs) {
        std::vector<fs::path> seed_dirs;
        for (const auto& entry : fs::directory_iterator(method_dir))
            if (entry.is_directory()) seed_dirs.push_back(entry.path());
        std::sort(seed_dirs.begin(), seed_dirs.end());
        for (const auto& seed_dir : seed_dirs) {
            StoredRun run;
            run.method = method_dir.filename().string();
            run.seed = std::strtoull(seed_dir.filename().string().c_str(), nullptr, 10);
            run.logs = load_generations_csv(seed_dir / "generations.csv");
            run.archive_rows = load_candidates_csv(seed_dir / "archive.csv");
            run.front_rows = load_candidates_csv(seed_dir / "front.csv");
            out.push_back(std::move(run));
        }
    }
    if (out.empty()) throw IngestionError("no completed runs under '" + runs_dir.string() + "'");
    return out;
}

namespace {

struct MethodGroup {
    std::string method;
    std::vector<const StoredRun*> runs;
};

std::vector<MethodGroup> group_by_method(const std::vector<StoredRun>& runs) {
    std::map<std::string, MethodGroup> groups;
    for (const auto& run : runs) {
        auto& g = groups[run.method];
        g.method = run.method;
        g.runs.push_back(&run);
    }
    std::vector<MethodGroup> out;
    for (auto& [name, g] : groups) out.push_back(std::move(g));
    return out;
}

int emit_reports(const fs::path& results_dir, const fs::path& reference_csv,
                 const fs::path& out_dir, bool full_compare) {
    const auto runs = load_results_tree(results_dir);
    const auto reference = load_front_csv(reference_csv);
    if (reference.empty()) throw IngestionError("reference front is empty");
    fs::create_directories(out_dir);

    // Fixed HV reference point: worst of reference plus every final front,
    // pushed out by a 10% range margin, shared by every number emitted.
    std::vector<std::span<const moo::ObjectiveVector>> sets;
    sets.emplace_back(reference);
    std::vector<std::vector<moo::ObjectiveVector>> finals;
    finals.reserve(runs.size());
    for (const auto& run : runs) {
        std::vector<moo::ObjectiveVector> f;
        for (const auto& c : run.front_rows) f.push_back(c.objectives);
        finals.push_back(std::move(f));
    }
    for (const auto& f : finals) sets.emplace_back(f);
    const auto ref_point = indicators::worst_point_with_margin(sets);
    const indicators::ReferenceSet ref_set{reference, ref_point};

    const auto groups = group_by_method(runs);

    {
        std::ofstream out(out_dir / (full_compare ? "performance.csv" : "metrics.csv"));
        out << "method,gd_plus,igd_plus,hv\n";
        for (const auto& g : groups) {
            double gd = 0.0, igd = 0.0, hv = 0.0;
            for (const auto* run : g.runs) {
                std::vector<moo::ObjectiveVector> front;
                for (const auto& c : run->front_rows) front.push_back(c.objectives);
                gd += indicators::gd_plus(front, reference);
                igd += indicators::igd_plus(front, reference);
                hv += indicators::hypervolume_2d(front, ref_point);
            }
            const double n = static_cast<double>(g.runs.size());
            out << g.method << ',' << format_double(gd / n) << ',' << format_double(igd / n)
                << ',' << format_double(hv / n) << '\n';
        }
    }

    {
        std::ofstream out(out_dir / "quality.csv");
        out << "method,sr@99,sr@95,aesr@99,aesr@95,agsr@99\n";
        for (const auto& g : groups) {
            std::vector<indicators::RunTrace> traces;
            traces.reserve(g.runs.size());
            for (const auto* run : g.runs) traces.push_back(run->trace());
            const auto q99 = indicators::quality_report(traces, ref_set, 99.0);
            const auto q95 = indicators::quality_report(traces, ref_set, 95.0);
            out << g.method << ',' << format_double(q99.success_rate_percent) << ','
                << format_double(q95.success_rate_percent) << ',';
            if (q99.aesr) out << format_double(*q99.aesr);
            out << ',';
            if (q95.aesr) out << format_double(*q95.aesr);
            out << ',';
            if (q99.agsr) out << format_double(*q99.agsr);
            out << '\n';
        }
    }

    if (full_compare) {
        std::ofstream conv(out_dir / "convergence.csv");
        conv << "method,seed,generation,cumulative_evaluations,ndscore,hv,gd_plus,igd_plus\n";
        std::ofstream fronts(out_dir / "fronts.csv");
        fronts << "method,seed,generation,risk_pct,return_pct\n";
        for (const auto& g : groups) {
            for (const auto* run : g.runs) {
                const auto trace = run->trace();
                for (std::size_t i = 0; i < trace.generations.size(); ++i) {
                    const auto& gen = trace.generations[i];
                    conv << g.method << ',' << run->seed << ',' << gen.generation << ','
                         << gen.cumulative_evaluations << ','
                         << format_double(run->logs[i].ndscore) << ','
                         << format_double(
                                indicators::hypervolume_2d(gen.front, ref_point))
                         << ',' << format_double(indicators::gd_plus(gen.front, reference))
                         << ',' << format_double(indicators::igd_plus(gen.front, reference))
                         << '\n';
                    for (const auto& y : gen.front) {
                        fronts << g.method << ',' << run->seed << ',' << gen.generation << ','
                               << format_double(y[0]) << ',' << format_double(-y[1]) << '\n';
                    }
                }
            }
        }
    }
    return 0;
}

}  // namespace

int compare_results(const fs::path& results_dir, const fs::path& reference_csv,
                    const fs::path& out_dir) {
    return emit_reports(results_dir, reference_csv, out_dir, /*full_compare=*/true);
}

int indicator_results(const fs::path& results_dir, const fs::path& reference_csv,
                      const fs::path& out_dir) {
    return emit_reports(results_dir, reference_csv, out_dir, /*full_compare=*/false);
}

int generate_data(int n_assets, int t_days, std::uint64_t seed, const fs::path& out_path) {
    const auto data = market::generate_synthetic(
        market::SyntheticMarketSpec::randomized(n_assets, t_days, seed));
    market::save_csv(data, out_path);
    return 0;
}

}  // namespace parden::cli
