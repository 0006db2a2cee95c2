#pragma once

#include <cstdint>
#include <vector>

#include "parden/common/errors.hpp"
#include "parden/moo/types.hpp"

namespace parden::search {

struct AlgorithmConfig {
    int population_size = 60;
    int offspring_size = 30;
    double crossover_prob = 0.9;   // real uniform crossover, per pair
    double mutation_prob = 0.2;    // polynomial mutation, per gene
    double mutation_eta = 20.0;
    double epsilon = 0.1;          // R-NSGA-II clearing radius
    double sigma0 = 0.1;           // MO-CMA-ES initial step size
    std::vector<moo::ObjectiveVector> reference_points;  // R-NSGA-II
    int n_reference_dirs = -1;     // NSGA-III family; -1 = population_size
    std::uint64_t seed = 0;

    void validate() const {
        if (population_size < 2)
            throw ContractViolation("AlgorithmConfig: population_size must be >= 2");
        if (offspring_size < 1 || offspring_size > population_size)
            throw ContractViolation("AlgorithmConfig: need 0 < offspring_size <= population_size");
        for (double p : {crossover_prob, mutation_prob}) {
            if (p < 0.0 || p > 1.0)
                throw ContractViolation("AlgorithmConfig: probabilities must lie in [0,1]");
        }
        if (sigma0 <= 0.0) throw ContractViolation("AlgorithmConfig: sigma0 must be > 0");
    }
};

}  // namespace parden::search
