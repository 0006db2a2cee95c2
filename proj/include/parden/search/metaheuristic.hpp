#pragma once

#include <memory>
#include <string>
#include <vector>

#include "parden/common/rng.hpp"
#include "parden/moo/types.hpp"
#include "parden/search/config.hpp"

namespace parden::search {

/// Ask/tell interface shared by all metaheuristics. The first ask always
/// returns a Latin-hypercube sample of population_size points; subsequent
/// asks return offspring_size proposals. tell feeds evaluated candidates
/// back, positionally matched to the last ask. State is single-owner and
/// mutated only between evaluation batches; ask/tell are not reentrant.
class Metaheuristic {
public:
    Metaheuristic(int dims, AlgorithmConfig config);
    virtual ~Metaheuristic() = default;

    std::vector<std::vector<double>> ask();

    /// Full positional tell: evaluated[i] answers ask()[i].
    void tell(const std::vector<moo::Candidate>& evaluated);

    /// Partial tell for truncated generations: positions index the last ask.
    void tell_indexed(const std::vector<int>& positions,
                      const std::vector<moo::Candidate>& evaluated);

    /// Abandons an outstanding ask without feedback (no proposal survived
    /// external filtering). State is unchanged except the ask slot.
    void cancel_ask();

    const std::vector<moo::Candidate>& population() const { return population_; }
    int generation() const { return generation_; }
    int dims() const { return dims_; }
    const AlgorithmConfig& config() const { return config_; }
    bool initialized() const { return initialized_; }

protected:
    virtual std::vector<std::vector<double>> ask_offspring() = 0;
    virtual void survive(std::vector<moo::Candidate> newcomers,
                         const std::vector<int>& positions) = 0;
    virtual void on_initial_population() {}

    Rng rng_;
    AlgorithmConfig config_;
    int dims_;
    std::vector<moo::Candidate> population_;
    int generation_ = 0;
    int pending_ask_ = -1;  // outstanding ask size, -1 when none
    bool initialized_ = false;
};

/// Known algorithm ids: nsga2, rnsga2, nsga3, unsga3, mocmaes.
std::unique_ptr<Metaheuristic> make_metaheuristic(const std::string& name, int dims,
                                                  const AlgorithmConfig& config);

}  // namespace parden::search
