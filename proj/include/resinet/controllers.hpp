#pragma once

#include <span>
#include <vector>

#include "resinet/graph_metrics.hpp"
#include "resinet/types.hpp"

namespace resinet {

/// Linear combination gains (σ, ψ, ζ) for the connectivity, resilience and
/// coverage terms.
struct GainTriple {
    double sigma = 0.0;
    double psi = 0.0;
    double zeta = 0.0;

    friend constexpr GainTriple operator+(const GainTriple& a, const GainTriple& b) {
        return {a.sigma + b.sigma, a.psi + b.psi, a.zeta + b.zeta};
    }
    friend constexpr bool operator==(const GainTriple&, const GainTriple&) = default;
    friend constexpr auto operator<=>(const GainTriple&, const GainTriple&) = default;
};

/// Throws InputError unless every component lies in [0, g_max].
void validate_gains(const GainTriple& gains, double g_max);

struct ControlTerms {
    Vec2 u_c;
    Vec2 u_r;
    Vec2 u_d;
};

struct ConnectivityParams {
    double epsilon = 0.1;
    double saturation = 0.5;  ///< per-robot cap on ‖u^c‖ (m/s)
    /// Below the threshold the barrier is evaluated at epsilon + clamp_margin.
    double clamp_margin = 0.01;
};

struct ResilienceParams {
    double alpha = 0.1;  ///< constant approach speed (m/s)
    std::size_t beta = 1;
};

struct LennardJonesParams {
    double iota = 1.0;   ///< well depth
    double delta = 1.2;  ///< location of the minimum (m)
    double a = 4.0;
    double b = 2.0;
    double force_cap = 1.0;  ///< per-pair magnitude cap (m/s)
};

/// ∂λ/∂p_i for every node: Σ_j (∂w_ij/∂p_i)(v_i - v_j)^2 with the Gaussian
/// weight derivative ∂w_ij/∂p_i = -w_ij (p_i - p_j) / κ^2.
std::vector<Vec2> fiedler_gradient(const ProximityGraph& graph, const SpectralInfo& info);

/// -dV/dλ for the barrier V(λ) = coth(λ - ε), i.e. csch^2(λ_eff - ε) with
/// λ_eff = max(λ, ε + clamp_margin).
double barrier_slope(double lambda, const ConnectivityParams& params);

struct ConnectivityOutput {
    std::vector<Vec2> u;
    bool clamped = false;  ///< λ <= ε this step
};

ConnectivityOutput connectivity_term(const ProximityGraph& graph, const SpectralInfo& info,
                                     const ConnectivityParams& params);

/// ξ = 1 iff P_θ > r.
inline bool is_vulnerable(double p_theta, double r) { return p_theta > r; }

/// `draws[k]` is the uniform sample for node k this step.
std::vector<Vec2> resilience_term(const ProximityGraph& graph,
                                  std::span<const VulnerabilityReport> reports,
                                  std::span<const double> draws, const ResilienceParams& params);

/// Pairwise force -dP_LJ/dx, positive when repulsive.
double lennard_jones_force(double x, const LennardJonesParams& params);

std::vector<Vec2> coverage_term(const ProximityGraph& graph, const LennardJonesParams& params);

/// σu^c + ψu^r + ζu^d without saturation.
std::vector<Vec2> combine_raw(std::span<const ControlTerms> terms, const GainTriple& gains);

/// Linear combination with each robot's speed saturated at v_max.
std::vector<Vec2> combine(std::span<const ControlTerms> terms, const GainTriple& gains, double v_max);

}  // namespace resinet
