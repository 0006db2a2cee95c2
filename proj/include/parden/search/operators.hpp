#pragma once

#include <vector>

#include "parden/common/rng.hpp"

namespace parden::search {

/// n stratified samples in [0,1]^dims: per coordinate, one sample in each of
/// n equal bins, bins shuffled independently per coordinate.
std::vector<std::vector<double>> latin_hypercube(Rng& rng, int n, int dims);

/// Real uniform crossover: swaps each gene between a and b with probability
/// 1/2. The caller gates the whole operator with its crossover probability.
void uniform_crossover(Rng& rng, std::vector<double>& a, std::vector<double>& b);

/// Real polynomial mutation with distribution index eta, applied per gene
/// with the given probability; results clipped to [0,1].
void polynomial_mutation(Rng& rng, std::vector<double>& x, double prob, double eta);

}  // namespace parden::search
