#include "parden/moo/reference_directions.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "parden/common/errors.hpp"
#include "parden/common/projections.hpp"
#include "parden/common/rng.hpp"

namespace parden::moo {

namespace {

using Points = std::vector<std::vector<double>>;

double riesz_energy(const Points& pts, double s) {
    double energy = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            double d2 = 0.0;
            for (std::size_t k = 0; k < pts[i].size(); ++k) {
                const double diff = pts[i][k] - pts[j][k];
                d2 += diff * diff;
            }
            energy += std::pow(std::max(d2, 1e-24), -s / 2.0);
        }
    }
    return energy;
}

// Projected gradient descent with step halving on the free (non-corner)
// points; 100 outer iterations per restart.
void minimize_energy(Points& pts, std::size_t n_pinned, double s, Rng& rng) {
    const std::size_t n = pts.size();
    if (n_pinned >= n) return;
    const std::size_t m = pts[0].size();

    double step = 0.05;
    double energy = riesz_energy(pts, s);
    for (int iter = 0; iter < 100; ++iter) {
        Points grad(n, std::vector<double>(m, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double d2 = 0.0;
                for (std::size_t k = 0; k < m; ++k) {
                    const double diff = pts[i][k] - pts[j][k];
                    d2 += diff * diff;
                }
                d2 = std::max(d2, 1e-24);
                const double coeff = -s * std::pow(d2, -(s + 2.0) / 2.0);
                for (std::size_t k = 0; k < m; ++k) {
                    const double diff = pts[i][k] - pts[j][k];
                    grad[i][k] += coeff * diff;
                    grad[j][k] -= coeff * diff;
                }
            }
        }
        double grad_norm = 0.0;
        for (std::size_t i = n_pinned; i < n; ++i)
            for (double g : grad[i]) grad_norm = std::max(grad_norm, std::abs(g));
        if (grad_norm < 1e-30) break;

        bool accepted = false;
        for (int halving = 0; halving < 30 && !accepted; ++halving) {
            Points trial = pts;
            const double scale = step / grad_norm;
            for (std::size_t i = n_pinned; i < n; ++i) {
                for (std::size_t k = 0; k < m; ++k) trial[i][k] -= scale * grad[i][k];
                project_simplex(trial[i]);
            }
            const double trial_energy = riesz_energy(trial, s);
            if (trial_energy < energy) {
                pts = std::move(trial);
                energy = trial_energy;
                step *= 1.2;
                accepted = true;
            } else {
                step *= 0.5;
            }
        }
        if (!accepted) break;
    }
    (void)rng;
}

std::vector<double> random_simplex_point(Rng& rng, std::size_t m) {
    // Normalized exponentials give a uniform draw on the simplex.
    std::vector<double> x(m);
    double sum = 0.0;
    for (auto& v : x) {
        v = -std::log(1.0 - rng.uniform01());
        sum += v;
    }
    for (auto& v : x) v /= sum;
    return x;
}

}  // namespace

std::vector<std::vector<double>> reference_directions(int m, int n_dirs) {
    if (m < 2) throw ContractViolation("reference_directions: m must be >= 2");
    if (n_dirs < 2) throw ContractViolation("reference_directions: n_dirs must be >= 2");

    if (m == 2) {
        Points out(static_cast<std::size_t>(n_dirs));
        for (int i = 0; i < n_dirs; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(n_dirs - 1);
            out[static_cast<std::size_t>(i)] = {1.0 - t, t};
        }
        return out;
    }

    const double s = static_cast<double>(m) * static_cast<double>(m);
    const std::size_t n_pinned = std::min<std::size_t>(static_cast<std::size_t>(m),
                                                       static_cast<std::size_t>(n_dirs));
    const std::uint64_t base_seed =
        mix_seed(0x5245464449525331ULL, static_cast<std::uint64_t>(m) * 1000003ULL +
                                            static_cast<std::uint64_t>(n_dirs));

    Points best;
    double best_energy = std::numeric_limits<double>::infinity();
    constexpr int kRestarts = 20;
    for (int restart = 0; restart < kRestarts; ++restart) {
        Rng rng(mix_seed(base_seed, static_cast<std::uint64_t>(restart)));
        Points pts;
        pts.reserve(static_cast<std::size_t>(n_dirs));
        for (std::size_t i = 0; i < n_pinned; ++i) {
            std::vector<double> corner(static_cast<std::size_t>(m), 0.0);
            corner[i] = 1.0;
            pts.push_back(std::move(corner));
        }
        while (pts.size() < static_cast<std::size_t>(n_dirs))
            pts.push_back(random_simplex_point(rng, static_cast<std::size_t>(m)));

        minimize_energy(pts, n_pinned, s, rng);
        const double energy = riesz_energy(pts, s);
        if (energy < best_energy) {
            best_energy = energy;
            best = std::move(pts);
        }
    }

    // Stable output order: pinned corners, then free points lexicographically.
    std::sort(best.begin() + static_cast<std::ptrdiff_t>(n_pinned), best.end());
    return best;
}

}  // namespace parden::moo
