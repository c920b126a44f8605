#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "resinet/linalg.hpp"
#include "resinet/types.hpp"

namespace resinet {

inline constexpr double kWeightFloor = 1e-6;
inline constexpr double kConnectivityTolerance = 1e-9;

struct WeightParams {
    double kappa = 0.5;  ///< Gaussian decay scale (m)
};

/// Weighted undirected proximity graph. Node k carries robot id node_ids[k].
/// Weight w_ij = exp(-d^2 / (2 kappa^2)) for d <= R, zero otherwise, and
/// weights under kWeightFloor are dropped.
class ProximityGraph {
public:
    ProximityGraph() = default;
    ProximityGraph(std::vector<RobotId> node_ids, std::vector<Vec2> positions, double comm_radius,
                   double kappa, SquareMatrix weights);

    [[nodiscard]] std::size_t size() const { return node_ids_.size(); }
    [[nodiscard]] const std::vector<RobotId>& node_ids() const { return node_ids_; }
    [[nodiscard]] const std::vector<Vec2>& positions() const { return positions_; }
    [[nodiscard]] double comm_radius() const { return comm_radius_; }
    [[nodiscard]] double kappa() const { return kappa_; }
    [[nodiscard]] const SquareMatrix& weights() const { return weights_; }
    [[nodiscard]] double weight(std::size_t i, std::size_t j) const { return weights_(i, j); }
    [[nodiscard]] bool adjacent(std::size_t i, std::size_t j) const { return weights_(i, j) > 0.0; }
    [[nodiscard]] const std::vector<std::size_t>& neighbors(std::size_t i) const { return neighbors_[i]; }

    /// L = D - W.
    [[nodiscard]] SquareMatrix laplacian() const;

    /// Node index of a robot id, if present.
    [[nodiscard]] std::optional<std::size_t> index_of(RobotId id) const;

private:
    std::vector<RobotId> node_ids_;
    std::vector<Vec2> positions_;
    double comm_radius_ = 0.0;
    double kappa_ = 0.0;
    SquareMatrix weights_;
    std::vector<std::vector<std::size_t>> neighbors_;
};

/// Builds the graph with node ids 0..N-1.
ProximityGraph build_graph(std::span<const Vec2> positions, double comm_radius,
                           const WeightParams& weight_params);

ProximityGraph build_graph(std::span<const RobotId> ids, std::span<const Vec2> positions,
                           double comm_radius, const WeightParams& weight_params);

/// Same graph with one weight replaced (symmetric); used for perturbation checks.
ProximityGraph with_weight(const ProximityGraph& graph, std::size_t i, std::size_t j, double w);

struct SpectralInfo {
    std::vector<double> eigenvalues;  ///< ascending
    double fiedler_value = 0.0;
    std::vector<double> fiedler_vector;  ///< unit norm, first nonzero component positive
};

SpectralInfo spectral(const ProximityGraph& graph);

/// Unnormalized hop-count betweenness, each unordered pair counted once,
/// indexed by node position in the graph.
std::vector<double> betweenness(const ProximityGraph& graph);

/// Node indices ordered by descending betweenness, ties by ascending robot id.
std::vector<std::size_t> betweenness_order(const ProximityGraph& graph,
                                           std::span<const double> scores);

/// Θ = φ/N where φ is the smallest prefix of the betweenness order whose
/// removal disconnects the rest; (N-1)/N when no prefix does.
/// Throws PreconditionError for disconnected graphs or N < 2.
double robustness_level(const ProximityGraph& graph);

struct VulnerabilityReport {
    std::size_t node = 0;                  ///< node index
    std::vector<std::size_t> pi_set;       ///< d(v,u) in {1, 2}, ascending index
    std::vector<std::size_t> pi2_set;      ///< d(v,u) == 2
    std::vector<std::size_t> path_beta_set;
    std::size_t beta = 1;
    double p_theta = 0.0;
};

VulnerabilityReport vulnerability(const ProximityGraph& graph, std::size_t node, std::size_t beta = 1);
std::vector<VulnerabilityReport> vulnerability_all(const ProximityGraph& graph, std::size_t beta = 1);

bool is_connected(const ProximityGraph& graph);

/// Connectivity of the subgraph induced by nodes with keep[k] == true.
/// An empty or single-node selection counts as connected.
bool is_connected_induced(const ProximityGraph& graph, const std::vector<bool>& keep);

}  // namespace resinet
