#pragma once

#include "parden/search/metaheuristic.hpp"

namespace parden::search {

/// NSGA-II: binary tournament by (rank, crowding), uniform crossover,
/// polynomial mutation; survival is front-wise with the splitting front
/// resolved by Manhattan crowding distance (extremes kept at +infinity).
class Nsga2 : public Metaheuristic {
public:
    Nsga2(int dims, AlgorithmConfig config);

protected:
    std::vector<std::vector<double>> ask_offspring() override;
    void survive(std::vector<moo::Candidate> newcomers,
                 const std::vector<int>& positions) override;
    void on_initial_population() override;

    /// Picks k survivors from the splitting front (indices into merged).
    virtual std::vector<std::size_t> select_split(const std::vector<moo::Candidate>& merged,
                                                  const std::vector<std::size_t>& front,
                                                  std::size_t k);

    std::size_t tournament();
    void refresh_ranking();

    std::vector<int> rank_;
    std::vector<double> crowd_;
};

/// R-NSGA-II: NSGA-II whose splitting front is selected by distance rank to
/// reference points (normalized objectives), with epsilon clearing around
/// each survivor. Default reference points are the initial population's two
/// per-objective extremes.
class RNsga2 : public Nsga2 {
public:
    RNsga2(int dims, AlgorithmConfig config);

protected:
    std::vector<std::size_t> select_split(const std::vector<moo::Candidate>& merged,
                                          const std::vector<std::size_t>& front,
                                          std::size_t k) override;
    void on_initial_population() override;
};

}  // namespace parden::search
