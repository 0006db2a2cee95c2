#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "parden/common/rng.hpp"

namespace oracles {

namespace {

bool pareto_dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    bool strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strict = true;
    }
    return strict;
}

}  // namespace

std::vector<int> brute_force_ranks(const std::vector<ObjectiveVector>& points) {
    const std::size_t n = points.size();
    std::vector<int> rank(n, -1);
    int level = 0;
    std::size_t assigned = 0;
    while (assigned < n) {
        std::vector<std::size_t> layer;
        for (std::size_t i = 0; i < n; ++i) {
            if (rank[i] >= 0) continue;
            bool dominated = false;
            for (std::size_t j = 0; j < n && !dominated; ++j) {
                if (j == i || rank[j] >= 0) continue;
                dominated = pareto_dominates(points[j], points[i]);
            }
            if (!dominated) layer.push_back(i);
        }
        for (std::size_t i : layer) rank[i] = level;
        assigned += layer.size();
        ++level;
    }
    return rank;
}

std::vector<std::size_t> brute_force_rank0(const std::vector<ObjectiveVector>& points) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < points.size() && !dominated; ++j)
            if (j != i) dominated = pareto_dominates(points[j], points[i]);
        if (!dominated) out.push_back(i);
    }
    return out;
}

std::vector<double> crowding_reference(const std::vector<ObjectiveVector>& front) {
    const std::size_t n = front.size();
    constexpr double kInf = std::numeric_limits<double>::infinity();
    if (n < 3) return std::vector<double>(n, kInf);
    const std::size_t m = front[0].size();
    std::vector<double> out(n, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return front[a][k] < front[b][k]; });
        out[idx[0]] = kInf;
        out[idx[n - 1]] = kInf;
        const double range = front[idx[n - 1]][k] - front[idx[0]][k];
        if (range <= 0.0) continue;
        for (std::size_t p = 1; p + 1 < n; ++p)
            out[idx[p]] += (front[idx[p + 1]][k] - front[idx[p - 1]][k]) / range;
    }
    return out;
}

McEstimate mc_hypervolume_2d(const std::vector<ObjectiveVector>& front,
                             const ObjectiveVector& reference, std::int64_t n_samples,
                             std::uint64_t seed) {
    // Clip to points inside the reference box, keep the maximal subset
    // sorted by x ascending (y then strictly descending).
    std::vector<std::pair<double, double>> pts;
    for (const auto& a : front)
        if (a[0] <= reference[0] && a[1] <= reference[1]) pts.push_back({a[0], a[1]});
    McEstimate est;
    if (pts.empty()) return est;
    std::sort(pts.begin(), pts.end());
    std::vector<std::pair<double, double>> maximal;
    for (const auto& p : pts) {
        if (!maximal.empty() && p.second >= maximal.back().second) continue;
        maximal.push_back(p);
    }

    double lo_x = maximal.front().first;
    double lo_y = std::numeric_limits<double>::infinity();
    for (const auto& p : maximal) lo_y = std::min(lo_y, p.second);
    const double area = (reference[0] - lo_x) * (reference[1] - lo_y);
    if (area <= 0.0) return est;

    parden::Rng rng(seed);
    std::int64_t hits = 0;
    for (std::int64_t s = 0; s < n_samples; ++s) {
        const double u = lo_x + (reference[0] - lo_x) * rng.uniform01();
        const double v = lo_y + (reference[1] - lo_y) * rng.uniform01();
        // Dominated iff the rightmost point with x <= u has y <= v.
        auto it = std::upper_bound(maximal.begin(), maximal.end(), u,
                                   [](double val, const auto& p) { return val < p.first; });
        if (it == maximal.begin()) continue;
        --it;
        if (it->second <= v) ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(n_samples);
    est.value = p * area;
    est.standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples)) * area;
    return est;
}

void two_pass_moments(const Eigen::MatrixXd& rows, Eigen::VectorXd& mean, Eigen::MatrixXd& cov) {
    const auto t = rows.rows();
    const auto n = rows.cols();
    mean = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < t; ++i)
        for (Eigen::Index j = 0; j < n; ++j) mean(j) += rows(i, j);
    mean /= static_cast<double>(t);
    cov = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < t; ++i) {
        for (Eigen::Index a = 0; a < n; ++a) {
            for (Eigen::Index b = 0; b < n; ++b) {
                cov(a, b) += (rows(i, a) - mean(a)) * (rows(i, b) - mean(b));
            }
        }
    }
    cov /= static_cast<double>(t - 1);
}

namespace {

double extended_f(const parden::solver::PortfolioProblem& p, const Eigen::VectorXd& w) {
    double f = 0.5 * p.tradeoffs.gamma_risk * w.dot(p.sigma * w) - p.mu.dot(w);
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        f += p.tradeoffs.gamma_trade * p.trade_cost(i) * std::abs(w(i) - p.w0(i));
        f += p.tradeoffs.gamma_hold * p.hold_cost(i) * std::max(-w(i), 0.0);
    }
    return f;
}

}  // namespace

double grid_refine_extended_minimum(const parden::solver::PortfolioProblem& problem) {
    const auto n = problem.mu.size();
    const double lmax = problem.tradeoffs.leverage_max;

    if (n == 2) {
        // w = (a, 1 - a), feasible iff a in [(1-L)/2, (1+L)/2].
        double lo = (1.0 - lmax) / 2.0, hi = (1.0 + lmax) / 2.0;
        double best = std::numeric_limits<double>::infinity();
        for (int round = 0; round < 8; ++round) {
            const int grid = 800;
            double best_a = lo;
            for (int i = 0; i <= grid; ++i) {
                const double a = lo + (hi - lo) * i / grid;
                Eigen::VectorXd w(2);
                w << a, 1.0 - a;
                const double f = extended_f(problem, w);
                if (f < best) {
                    best = f;
                    best_a = a;
                }
            }
            const double span = (hi - lo) * 4.0 / grid;
            lo = best_a - span;
            hi = best_a + span;
        }
        return best;
    }

    // n == 3: w = (a, b, 1 - a - b) with an l1 feasibility filter.
    double lo_a = -lmax, hi_a = 1.0 + lmax;
    double lo_b = -lmax, hi_b = 1.0 + lmax;
    double best = std::numeric_limits<double>::infinity();
    double best_a = 0.0, best_b = 0.0;
    for (int round = 0; round < 8; ++round) {
        const int grid = 240;
        for (int i = 0; i <= grid; ++i) {
            const double a = lo_a + (hi_a - lo_a) * i / grid;
            for (int j = 0; j <= grid; ++j) {
                const double b = lo_b + (hi_b - lo_b) * j / grid;
                const double c = 1.0 - a - b;
                if (std::abs(a) + std::abs(b) + std::abs(c) > lmax + 1e-15) continue;
                Eigen::VectorXd w(3);
                w << a, b, c;
                const double f = extended_f(problem, w);
                if (f < best) {
                    best = f;
                    best_a = a;
                    best_b = b;
                }
            }
        }
        const double span_a = (hi_a - lo_a) * 3.0 / grid;
        const double span_b = (hi_b - lo_b) * 3.0 / grid;
        lo_a = best_a - span_a;
        hi_a = best_a + span_a;
        lo_b = best_b - span_b;
        hi_b = best_b + span_b;
    }
    return best;
}

double min_pairwise_distance(const std::vector<std::vector<double>>& points) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            double d2 = 0.0;
            for (std::size_t k = 0; k < points[i].size(); ++k) {
                const double diff = points[i][k] - points[j][k];
                d2 += diff * diff;
            }
            best = std::min(best, std::sqrt(d2));
        }
    }
    return best;
}

double multi_restart_energy_min_pairwise(int m, int n_dirs, int restarts, std::uint64_t seed) {
    const double s = static_cast<double>(m) * static_cast<double>(m);
    const auto energy = [&](const std::vector<std::vector<double>>& pts) {
        double e = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                double d2 = 0.0;
                for (int k = 0; k < m; ++k) {
                    const double diff = pts[i][static_cast<std::size_t>(k)] -
                                        pts[j][static_cast<std::size_t>(k)];
                    d2 += diff * diff;
                }
                e += std::pow(std::max(d2, 1e-24), -s / 2.0);
            }
        return e;
    };
    const auto simplex_project = [&](std::vector<double>& x) {
        // Straightforward sort-based projection.
        std::vector<double> u = x;
        std::sort(u.begin(), u.end(), std::greater<>());
        double cum = 0.0, theta = 0.0;
        for (std::size_t j = 0; j < u.size(); ++j) {
            cum += u[j];
            const double cand = (cum - 1.0) / static_cast<double>(j + 1);
            if (u[j] - cand > 0.0) theta = cand;
        }
        for (auto& v : x) v = std::max(v - theta, 0.0);
    };

    double best_energy = std::numeric_limits<double>::infinity();
    double best_min_dist = 0.0;
    for (int restart = 0; restart < restarts; ++restart) {
        parden::Rng rng(parden::mix_seed(seed, static_cast<std::uint64_t>(restart)));
        std::vector<std::vector<double>> pts;
        for (int c = 0; c < std::min(m, n_dirs); ++c) {
            std::vector<double> corner(static_cast<std::size_t>(m), 0.0);
            corner[static_cast<std::size_t>(c)] = 1.0;
            pts.push_back(std::move(corner));
        }
        while (static_cast<int>(pts.size()) < n_dirs) {
            std::vector<double> x(static_cast<std::size_t>(m));
            double sum = 0.0;
            for (auto& v : x) {
                v = -std::log(1.0 - rng.uniform01());
                sum += v;
            }
            for (auto& v : x) v /= sum;
            pts.push_back(std::move(x));
        }

        // Plain small-step projected gradient, fixed iteration count.
        const std::size_t pinned = static_cast<std::size_t>(std::min(m, n_dirs));
        for (int iter = 0; iter < 500; ++iter) {
            std::vector<std::vector<double>> grad(pts.size(),
                                                  std::vector<double>(static_cast<std::size_t>(m)));
            for (std::size_t i = 0; i < pts.size(); ++i) {
                for (std::size_t j = i + 1; j < pts.size(); ++j) {
                    double d2 = 0.0;
                    for (int k = 0; k < m; ++k) {
                        const double diff = pts[i][static_cast<std::size_t>(k)] -
                                            pts[j][static_cast<std::size_t>(k)];
                        d2 += diff * diff;
                    }
                    d2 = std::max(d2, 1e-24);
                    const double coeff = -s * std::pow(d2, -(s + 2.0) / 2.0);
                    for (int k = 0; k < m; ++k) {
                        const double diff = pts[i][static_cast<std::size_t>(k)] -
                                            pts[j][static_cast<std::size_t>(k)];
                        grad[i][static_cast<std::size_t>(k)] += coeff * diff;
                        grad[j][static_cast<std::size_t>(k)] -= coeff * diff;
                    }
                }
            }
            double gmax = 0.0;
            for (std::size_t i = pinned; i < pts.size(); ++i)
                for (double g : grad[i]) gmax = std::max(gmax, std::abs(g));
            if (gmax < 1e-30) break;
            for (std::size_t i = pinned; i < pts.size(); ++i) {
                for (int k = 0; k < m; ++k)
                    pts[i][static_cast<std::size_t>(k)] -=
                        0.02 / gmax * grad[i][static_cast<std::size_t>(k)];
                simplex_project(pts[i]);
            }
        }
        const double e = energy(pts);
        if (e < best_energy) {
            best_energy = e;
            best_min_dist = min_pairwise_distance(pts);
        }
    }
    return best_min_dist;
}

}  // namespace oracles
