#pragma once

// Brute-force reference implementations. Deliberately naive: Floyd-Warshall
// hop distances, explicit path enumeration, per-cell disk tests, and Eigen's
// dense symmetric solver, so none of them share code with the library.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "resinet/graph_metrics.hpp"

namespace oracle {

using Adjacency = std::vector<std::vector<bool>>;
inline constexpr int kUnreachable = std::numeric_limits<int>::max() / 4;

inline Adjacency adjacency(const resinet::ProximityGraph& g) {
    Adjacency a(g.size(), std::vector<bool>(g.size(), false));
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) a[i][j] = i != j && g.weight(i, j) > 0.0;
    return a;
}

inline std::vector<std::vector<int>> hop_distances(const Adjacency& a, const std::vector<bool>& keep) {
    const std::size_t n = a.size();
    std::vector<std::vector<int>> d(n, std::vector<int>(n, kUnreachable));
    for (std::size_t i = 0; i < n; ++i) {
        if (!keep[i]) continue;
        d[i][i] = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (keep[j] && a[i][j]) d[i][j] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    return d;
}

inline std::vector<std::vector<int>> hop_distances(const Adjacency& a) {
    return hop_distances(a, std::vector<bool>(a.size(), true));
}

inline bool connected(const Adjacency& a, const std::vector<bool>& keep) {
    const auto d = hop_distances(a, keep);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (keep[i] && keep[j] && d[i][j] >= kUnreachable) return false;
    return true;
}

/// Every simple path s -> t of exactly `length` edges.
inline std::vector<std::vector<std::size_t>> paths_of_length(const Adjacency& a, std::size_t s, std::size_t t,
                                                             int length) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> path{s};
    std::vector<bool> used(a.size(), false);
    used[s] = true;
    std::function<void(std::size_t)> walk = [&](std::size_t v) {
        if (static_cast<int>(path.size()) - 1 == length) {
            if (v == t) out.push_back(path);
            return;
        }
        for (std::size_t w = 0; w < a.size(); ++w) {
            if (!a[v][w] || used[w]) continue;
            used[w] = true;
            path.push_back(w);
            walk(w);
            path.pop_back();
            used[w] = false;
        }
    };
    walk(s);
    return out;
}

/// Sum over unordered pairs {s, t} of the fraction of shortest s-t paths
/// passing through v.
inline std::vector<double> betweenness(const Adjacency& a) {
    const std::size_t n = a.size();
    const auto d = hop_distances(a);
    std::vector<double> bc(n, 0.0);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = s + 1; t < n; ++t) {
            if (d[s][t] >= kUnreachable) continue;
            const auto paths = paths_of_length(a, s, t, d[s][t]);
            for (const auto& p : paths)
                for (std::size_t k = 1; k + 1 < p.size(); ++k) bc[p[k]] += 1.0 / static_cast<double>(paths.size());
        }
    return bc;
}

/// Removes the top-k betweenness nodes for k = 1, 2, ... until the rest
/// falls apart. Order: descending score, equal scores by ascending id.
inline double robustness(const Adjacency& a, const std::vector<unsigned>& ids) {
    const std::size_t n = a.size();
    const auto bc = betweenness(a);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    // Selection sort keeps the comparison obvious even with the tolerance.
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t best = i;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double diff = bc[order[j]] - bc[order[best]];
            if (diff > 1e-9 || (std::abs(diff) <= 1e-9 && ids[order[j]] < ids[order[best]])) best = j;
        }
        std::swap(order[i], order[best]);
    }
    std::vector<bool> keep(n, true);
    for (std::size_t k = 1; k < n; ++k) {
        keep[order[k - 1]] = false;
        if (!connected(a, keep)) return static_cast<double>(k) / static_cast<double>(n);
    }
    return static_cast<double>(n - 1) / static_cast<double>(n);
}

struct Neighborhood {
    std::vector<std::size_t> pi;
    std::vector<std::size_t> pi2;
    std::vector<std::size_t> path_beta;
    std::vector<int> common;  ///< number of length-2 paths v -> u, per node
    double p_theta = 0.0;
};

inline Neighborhood neighborhood(const Adjacency& a, std::size_t v, int beta) {
    const auto d = hop_distances(a);
    Neighborhood nb;
    nb.common.assign(a.size(), 0);
    for (std::size_t u = 0; u < a.size(); ++u) {
        if (u == v) continue;
        nb.common[u] = static_cast<int>(paths_of_length(a, v, u, 2).size());
        if (d[v][u] == 1 || d[v][u] == 2) nb.pi.push_back(u);
        if (d[v][u] == 2) {
            nb.pi2.push_back(u);
            if (nb.common[u] <= beta) nb.path_beta.push_back(u);
        }
    }
    nb.p_theta = nb.pi.empty() ? 0.0 : static_cast<double>(nb.path_beta.size()) / static_cast<double>(nb.pi.size());
    return nb;
}

inline Eigen::MatrixXd laplacian(const resinet::ProximityGraph& g) {
    const auto n = static_cast<Eigen::Index>(g.size());
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i == j) continue;
            const double w = g.weight(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            l(i, j) = -w;
            l(i, i) += w;
        }
    return l;
}

inline Eigen::VectorXd laplacian_spectrum(const resinet::ProximityGraph& g) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian(g));
    return solver.eigenvalues();
}

inline double fiedler_value(const resinet::ProximityGraph& g) {
    if (g.size() < 2) return 0.0;
    return laplacian_spectrum(g)(1);
}

/// Grid cell count with no interval tricks: every center against every disk.
inline double covered_area(const std::vector<resinet::Vec2>& pts, double xmin, double ymin, double xmax, double ymax,
                           double radius, double h) {
    long count = 0;
    for (long ix = 0;; ++ix) {
        const double cx = xmin + (static_cast<double>(ix) + 0.5) * h;
        if (cx > xmax) break;
        for (long iy = 0;; ++iy) {
            const double cy = ymin + (static_cast<double>(iy) + 0.5) * h;
            if (cy > ymax) break;
            for (const auto& p : pts)
                if ((cx - p.x) * (cx - p.x) + (cy - p.y) * (cy - p.y) <= radius * radius) {
                    ++count;
                    break;
                }
        }
    }
    return static_cast<double>(count) * h * h;
}

inline std::vector<resinet::Vec2> random_points(std::mt19937_64& rng, std::size_t n, double side) {
    std::uniform_real_distribution<double> u(0.0, side);
    std::vector<resinet::Vec2> pts(n);
    for (auto& p : pts) p = {u(rng), u(rng)};
    return pts;
}

}  // namespace oracle
