#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

namespace parden {

/// Euclidean projection onto the hyperplane {w : sum(w) = target}, in place.
inline void project_sum_hyperplane(std::span<double> w, double target = 1.0) {
    if (w.empty()) return;
    double shift = (std::accumulate(w.begin(), w.end(), 0.0) - target) /
                   static_cast<double>(w.size());
    for (double& x : w) x -= shift;
}

/// Euclidean projection onto the scaled simplex {w : w >= 0, sum(w) = radius},
/// by the sorted-threshold method.
inline void project_simplex(std::span<double> w, double radius = 1.0) {
    const std::size_t n = w.size();
    std::vector<double> sorted(w.begin(), w.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    std::size_t support = 0;
    for (std::size_t j = 0; j < n; ++j) {
        cumulative += sorted[j];
        const double candidate = (cumulative - radius) / static_cast<double>(j + 1);
        if (sorted[j] - candidate > 0.0) {
            theta = candidate;
            support = j + 1;
        }
    }
    (void)support;
    for (double& x : w) x = std::max(x - theta, 0.0);
}

/// Euclidean projection onto the l1 ball {w : ||w||_1 <= radius}, in place.
inline void project_l1_ball(std::span<double> w, double radius) {
    double norm1 = 0.0;
    for (double x : w) norm1 += std::abs(x);
    if (norm1 <= radius) return;
    std::vector<double> magnitude(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) magnitude[i] = std::abs(w[i]);
    project_simplex(magnitude, radius);
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] = std::copysign(magnitude[i], w[i]);
}

}  // namespace parden
