#include "parden/moo/crowding.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace parden::moo {

std::vector<double> crowding_distance(std::span<const ObjectiveVector> front) {
    const std::size_t n = front.size();
    constexpr double kInf = std::numeric_limits<double>::infinity();
    if (n < 3) return std::vector<double>(n, kInf);

    const std::size_t m = front[0].size();
    std::vector<double> distance(n, 0.0);
    std::vector<std::size_t> order(n);
    for (std::size_t k = 0; k < m; ++k) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return front[a][k] < front[b][k];
        });
        distance[order.front()] = kInf;
        distance[order.back()] = kInf;
        const double range = front[order.back()][k] - front[order.front()][k];
        if (range <= 0.0) continue;
        for (std::size_t j = 1; j + 1 < n; ++j) {
            distance[order[j]] += (front[order[j + 1]][k] - front[order[j - 1]][k]) / range;
        }
    }
    return distance;
}

}  // namespace parden::moo
