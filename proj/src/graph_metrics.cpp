#include "resinet/graph_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stack>
#include <string>

namespace resinet {

ProximityGraph::ProximityGraph(std::vector<RobotId> node_ids, std::vector<Vec2> positions,
                               double comm_radius, double kappa, SquareMatrix weights)
    : node_ids_(std::move(node_ids)),
      positions_(std::move(positions)),
      comm_radius_(comm_radius),
      kappa_(kappa),
      weights_(std::move(weights)),
      neighbors_(node_ids_.size()) {
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j)
            if (i != j && weights_(i, j) > 0.0) neighbors_[i].push_back(j);
}

SquareMatrix ProximityGraph::laplacian() const {
    const std::size_t n = size();
    SquareMatrix l(n);
    for (std::size_t i = 0; i < n; ++i) {
        double degree = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            l(i, j) = -weights_(i, j);
            degree += weights_(i, j);
        }
        l(i, i) = degree;
    }
    return l;
}

std::optional<std::size_t> ProximityGraph::index_of(RobotId id) const {
    const auto it = std::find(node_ids_.begin(), node_ids_.end(), id);
    if (it == node_ids_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - node_ids_.begin());
}

ProximityGraph build_graph(std::span<const Vec2> positions, double comm_radius,
                           const WeightParams& weight_params) {
    std::vector<RobotId> ids(positions.size());
    std::iota(ids.begin(), ids.end(), RobotId{0});
    return build_graph(ids, positions, comm_radius, weight_params);
}

ProximityGraph build_graph(std::span<const RobotId> ids, std::span<const Vec2> positions,
                           double comm_radius, const WeightParams& weight_params) {
    if (positions.empty()) throw InputError("build_graph: no positions");
    if (ids.size() != positions.size()) throw InputError("build_graph: ids/positions size mismatch");
    if (!(comm_radius > 0.0)) throw InputError("build_graph: comm_radius must be positive");
    if (!(weight_params.kappa > 0.0)) throw InputError("build_graph: kappa must be positive");
    for (std::size_t k = 0; k < positions.size(); ++k)
        if (!positions[k].finite())
            throw InputError("build_graph: non-finite coordinate for robot " + std::to_string(ids[k]));

    const std::size_t n = positions.size();
    const double two_kappa_sq = 2.0 * weight_params.kappa * weight_params.kappa;
    SquareMatrix w(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d2 = (positions[i] - positions[j]).squared_norm();
            if (d2 > comm_radius * comm_radius) continue;
            const double value = std::exp(-d2 / two_kappa_sq);
            if (value < kWeightFloor) continue;
            w(i, j) = w(j, i) = value;
        }
    }
    return {std::vector<RobotId>(ids.begin(), ids.end()),
            std::vector<Vec2>(positions.begin(), positions.end()), comm_radius,
            weight_params.kappa, std::move(w)};
}

ProximityGraph with_weight(const ProximityGraph& graph, std::size_t i, std::size_t j, double w) {
    SquareMatrix weights = graph.weights();
    weights(i, j) = weights(j, i) = w;
    return {graph.node_ids(), graph.positions(), graph.comm_radius(), graph.kappa(),
            std::move(weights)};
}

SpectralInfo spectral(const ProximityGraph& graph) {
    const std::size_t n = graph.size();
    if (n == 0) throw InputError("spectral: empty graph");

    EigenDecomposition eig = jacobi_eigen(graph.laplacian());
    SpectralInfo info;
    info.eigenvalues = std::move(eig.values);
    if (n == 1) {
        info.fiedler_value = 0.0;
        return info;
    }
    info.fiedler_value = std::max(0.0, info.eigenvalues[1]);
    info.fiedler_vector = std::move(eig.vectors[1]);
    // Jacobi keeps columns orthonormal; renormalize against accumulated rounding.
    double norm = 0.0;
    for (double x : info.fiedler_vector) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : info.fiedler_vector) x /= norm;
    for (double x : info.fiedler_vector) {
        if (std::abs(x) > 1e-12) {
            if (x < 0.0)
                for (double& y : info.fiedler_vector) y = -y;
            break;
        }
    }
    return info;
}

std::vector<double> betweenness(const ProximityGraph& graph) {
    // Brandes accumulation over hop-count BFS from every source.
    const std::size_t n = graph.size();
    std::vector<double> bc(n, 0.0);
    std::vector<std::vector<std::size_t>> preds(n);
    std::vector<double> sigma(n);
    std::vector<long> dist(n);
    std::vector<double> delta(n);

    for (std::size_t s = 0; s < n; ++s) {
        for (auto& p : preds) p.clear();
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(delta.begin(), delta.end(), 0.0);
        sigma[s] = 1.0;
        dist[s] = 0;

        std::stack<std::size_t> order;
        std::queue<std::size_t> frontier;
        frontier.push(s);
        while (!frontier.empty()) {
            const std::size_t v = frontier.front();
            frontier.pop();
            order.push(v);
            for (std::size_t w : graph.neighbors(v)) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    frontier.push(w);
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                    preds[w].push_back(v);
                }
            }
        }
        while (!order.empty()) {
            const std::size_t w = order.top();
            order.pop();
            for (std::size_t v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            if (w != s) bc[w] += delta[w];
        }
    }
    // Every unordered pair was visited from both endpoints.
    for (double& x : bc) x *= 0.5;
    return bc;
}

std::vector<std::size_t> betweenness_order(const ProximityGraph& graph,
                                           std::span<const double> scores) {
    std::vector<std::size_t> order(graph.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (std::abs(scores[a] - scores[b]) > 1e-9) return scores[a] > scores[b];
        return graph.node_ids()[a] < graph.node_ids()[b];
    });
    return order;
}

bool is_connected_induced(const ProximityGraph& graph, const std::vector<bool>& keep) {
    const std::size_t n = graph.size();
    std::size_t start = n;
    std::size_t kept = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (!keep[k]) continue;
        if (start == n) start = k;
        ++kept;
    }
    if (kept <= 1) return true;

    std::vector<bool> seen(n, false);
    std::queue<std::size_t> frontier;
    seen[start] = true;
    frontier.push(start);
    std::size_t reached = 1;
    while (!frontier.empty()) {
        const std::size_t v = frontier.front();
        frontier.pop();
        for (std::size_t w : graph.neighbors(v)) {
            if (!keep[w] || seen[w]) continue;
            seen[w] = true;
            ++reached;
            frontier.push(w);
        }
    }
    return reached == kept;
}

bool is_connected(const ProximityGraph& graph) {
    return is_connected_induced(graph, std::vector<bool>(graph.size(), true));
}

double robustness_level(const ProximityGraph& graph) {
    const std::size_t n = graph.size();
    if (n < 2) throw PreconditionError("robustness_level: need at least two nodes");
    if (!is_connected(graph)) throw PreconditionError("robustness_level: graph is disconnected");

    const std::vector<double> scores = betweenness(graph);
    const std::vector<std::size_t> order = betweenness_order(graph, scores);
    std::vector<bool> keep(n, true);
    for (std::size_t phi = 1; phi < n; ++phi) {
        keep[order[phi - 1]] = false;
        if (!is_connected_induced(graph, keep))
            return static_cast<double>(phi) / static_cast<double>(n);
    }
    return static_cast<double>(n - 1) / static_cast<double>(n);
}

VulnerabilityReport vulnerability(const ProximityGraph& graph, std::size_t node, std::size_t beta) {
    if (node >= graph.size()) throw InputError("vulnerability: node index out of range");
    const std::size_t n = graph.size();

    // Two-level BFS. hops[u] = 1 or 2 for u in Π(v); common[u] counts the
    // length-2 paths v - w - u.
    std::vector<int> hops(n, 0);
    std::vector<std::size_t> common(n, 0);
    for (std::size_t w : graph.neighbors(node)) hops[w] = 1;
    for (std::size_t w : graph.neighbors(node)) {
        for (std::size_t u : graph.neighbors(w)) {
            if (u == node) continue;
            ++common[u];
            if (hops[u] == 0) hops[u] = 2;
        }
    }

    VulnerabilityReport report;
    report.node = node;
    report.beta = beta;
    for (std::size_t u = 0; u < n; ++u) {
        if (u == node || hops[u] == 0) continue;
        report.pi_set.push_back(u);
        if (hops[u] == 2) {
            report.pi2_set.push_back(u);
            if (common[u] <= beta) report.path_beta_set.push_back(u);
        }
    }
    report.p_theta = report.pi_set.empty()
                         ? 0.0
                         : static_cast<double>(report.path_beta_set.size()) /
                               static_cast<double>(report.pi_set.size());
    return report;
}

std::vector<VulnerabilityReport> vulnerability_all(const ProximityGraph& graph, std::size_t beta) {
    std::vector<VulnerabilityReport> reports;
    reports.reserve(graph.size());
    for (std::size_t k = 0; k < graph.size(); ++k) reports.push_back(vulnerability(graph, k, beta));
    return reports;
}

}  // namespace resinet
