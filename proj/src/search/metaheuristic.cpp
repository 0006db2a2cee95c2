#include "parden/search/metaheuristic.hpp"

#include <algorithm>

#include "parden/common/errors.hpp"
#include "parden/search/baselines.hpp"
#include "parden/search/mocma.hpp"
#include "parden/search/nsga2.hpp"
#include "parden/search/nsga3.hpp"
#include "parden/search/operators.hpp"

namespace parden::search {

Metaheuristic::Metaheuristic(int dims, AlgorithmConfig config)
    : rng_(mix_seed(config.seed, 0x4d455441ULL)), config_(std::move(config)), dims_(dims) {
    if (dims_ < 1) throw ContractViolation("Metaheuristic: dims must be >= 1");
    config_.validate();
}

std::vector<std::vector<double>> Metaheuristic::ask() {
    if (pending_ask_ >= 0)
        throw ContractViolation("Metaheuristic::ask: previous ask has not been told");
    std::vector<std::vector<double>> out;
    if (!initialized_) {
        out = latin_hypercube(rng_, config_.population_size, dims_);
    } else {
        out = ask_offspring();
    }
    pending_ask_ = static_cast<int>(out.size());
    return out;
}

void Metaheuristic::tell(const std::vector<moo::Candidate>& evaluated) {
    if (pending_ask_ < 0) throw ContractViolation("Metaheuristic::tell: no outstanding ask");
    if (static_cast<int>(evaluated.size()) != pending_ask_)
        throw ContractViolation("Metaheuristic::tell: candidate count mismatch vs last ask");
    std::vector<int> positions(evaluated.size());
    for (std::size_t i = 0; i < evaluated.size(); ++i) positions[i] = static_cast<int>(i);
    tell_indexed(positions, evaluated);
}

void Metaheuristic::cancel_ask() {
    if (pending_ask_ < 0) throw ContractViolation("Metaheuristic::cancel_ask: no outstanding ask");
    pending_ask_ = -1;
}

void Metaheuristic::tell_indexed(const std::vector<int>& positions,
                                 const std::vector<moo::Candidate>& evaluated) {
    if (pending_ask_ < 0) throw ContractViolation("Metaheuristic::tell: no outstanding ask");
    if (positions.size() != evaluated.size() || evaluated.empty() ||
        static_cast<int>(evaluated.size()) > pending_ask_)
        throw ContractViolation("Metaheuristic::tell: candidate count mismatch vs last ask");
    std::vector<bool> seen(static_cast<std::size_t>(pending_ask_), false);
    for (int p : positions) {
        if (p < 0 || p >= pending_ask_ || seen[static_cast<std::size_t>(p)])
            throw ContractViolation("Metaheuristic::tell: bad or duplicate ask position");
        seen[static_cast<std::size_t>(p)] = true;
    }
    for (const auto& c : evaluated) {
        if (!c.has_objectives())
            throw ContractViolation("Metaheuristic::tell: candidate lacks objectives");
        if (!evaluated.front().objectives.empty() &&
            c.objectives.size() != evaluated.front().objectives.size())
            throw ContractViolation("Metaheuristic::tell: ragged objective lengths");
    }

    if (!initialized_) {
        if (static_cast<int>(evaluated.size()) != pending_ask_)
            throw ContractViolation("Metaheuristic::tell: initial population must be complete");
        population_.resize(evaluated.size());
        for (std::size_t i = 0; i < evaluated.size(); ++i)
            population_[static_cast<std::size_t>(positions[i])] = evaluated[i];
        initialized_ = true;
        on_initial_population();
    } else {
        survive(evaluated, positions);
        if (static_cast<int>(population_.size()) > config_.population_size)
            throw ContractViolation("Metaheuristic: survival overgrew the population");
    }
    ++generation_;
    pending_ask_ = -1;
}

std::unique_ptr<Metaheuristic> make_metaheuristic(const std::string& name, int dims,
                                                  const AlgorithmConfig& config) {
    if (name == "nsga2") return std::make_unique<Nsga2>(dims, config);
    if (name == "rnsga2") return std::make_unique<RNsga2>(dims, config);
    if (name == "nsga3") return std::make_unique<Nsga3>(dims, config);
    if (name == "unsga3") return std::make_unique<UNsga3>(dims, config);
    if (name == "mocmaes") return std::make_unique<MoCmaEs>(dims, config);
    throw ConfigError("unknown metaheuristic '" + name + "'");
}

}  // namespace parden::search
