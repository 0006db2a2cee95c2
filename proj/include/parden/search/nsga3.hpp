#pragma once

#include "parden/search/metaheuristic.hpp"

namespace parden::search {

/// NSGA-III: survival fills underrepresented reference directions first
/// (Riesz s-energy directions); parents are selected randomly for mating.
class Nsga3 : public Metaheuristic {
public:
    Nsga3(int dims, AlgorithmConfig config);

protected:
    std::vector<std::vector<double>> ask_offspring() override;
    void survive(std::vector<moo::Candidate> newcomers,
                 const std::vector<int>& positions) override;
    void on_initial_population() override;

    virtual std::size_t select_parent();
    void refresh_ranking();
    void ensure_directions(std::size_t n_objectives);

    std::vector<std::vector<double>> directions_;
    // Cached per surviving member, for the niche-aware tournament variant.
    std::vector<int> rank_;
    std::vector<int> assoc_dir_;
    std::vector<double> assoc_dist_;
};

/// U-NSGA-III: NSGA-III whose parent selection uses binary tournament
/// pressure (rank first, then niche-aware distance).
class UNsga3 : public Nsga3 {
public:
    UNsga3(int dims, AlgorithmConfig config);

protected:
    std::size_t select_parent() override;
};

}  // namespace parden::search
