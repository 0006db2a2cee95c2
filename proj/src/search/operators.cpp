#include "parden/search/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace parden::search {

std::vector<std::vector<double>> latin_hypercube(Rng& rng, int n, int dims) {
    std::vector<std::vector<double>> points(static_cast<std::size_t>(n),
                                            std::vector<double>(static_cast<std::size_t>(dims)));
    std::vector<std::size_t> bins(static_cast<std::size_t>(n));
    for (int k = 0; k < dims; ++k) {
        std::iota(bins.begin(), bins.end(), std::size_t{0});
        // Fisher-Yates
        for (std::size_t i = bins.size(); i > 1; --i) {
            const std::size_t j = rng.below(i);
            std::swap(bins[i - 1], bins[j]);
        }
        for (int i = 0; i < n; ++i) {
            const double jitter = rng.uniform01();
            points[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
                (static_cast<double>(bins[static_cast<std::size_t>(i)]) + jitter) /
                static_cast<double>(n);
        }
    }
    return points;
}

void uniform_crossover(Rng& rng, std::vector<double>& a, std::vector<double>& b) {
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (rng.uniform01() < 0.5) std::swap(a[k], b[k]);
    }
}

void polynomial_mutation(Rng& rng, std::vector<double>& x, double prob, double eta) {
    constexpr double lo = 0.0, hi = 1.0;
    for (double& gene : x) {
        if (rng.uniform01() >= prob) continue;
        const double u = rng.uniform01();
        const double delta1 = (gene - lo) / (hi - lo);
        const double delta2 = (hi - gene) / (hi - lo);
        const double mpow = 1.0 / (eta + 1.0);
        double deltaq;
        if (u <= 0.5) {
            const double xy = 1.0 - delta1;
            const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(xy, eta + 1.0);
            deltaq = std::pow(val, mpow) - 1.0;
        } else {
            const double xy = 1.0 - delta2;
            const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(xy, eta + 1.0);
            deltaq = 1.0 - std::pow(val, mpow);
        }
        gene = std::clamp(gene + deltaq * (hi - lo), lo, hi);
    }
}

}  // namespace parden::search
