#include "resinet/controllers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

namespace resinet {

void validate_gains(const GainTriple& gains, double g_max) {
    for (double g : {gains.sigma, gains.psi, gains.zeta})
        if (!std::isfinite(g) || g < 0.0 || g > g_max)
            throw InputError("gain " + std::to_string(g) + " outside [0, " + std::to_string(g_max) + "]");
}

std::vector<Vec2> fiedler_gradient(const ProximityGraph& graph, const SpectralInfo& info) {
    const std::size_t n = graph.size();
    std::vector<Vec2> grad(n);
    if (n < 2) return grad;
    const double kappa_sq = graph.kappa() * graph.kappa();
    const auto& v = info.fiedler_vector;
    const auto& p = graph.positions();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j : graph.neighbors(i)) {
            const double diff = v[i] - v[j];
            const Vec2 dw = (p[i] - p[j]) * (-graph.weight(i, j) / kappa_sq);
            grad[i] += dw * (diff * diff);
        }
    }
    return grad;
}

double barrier_slope(double lambda, const ConnectivityParams& params) {
    const double effective = std::max(lambda, params.epsilon + params.clamp_margin);
    const double s = std::sinh(effective - params.epsilon);
    return 1.0 / (s * s);
}

ConnectivityOutput connectivity_term(const ProximityGraph& graph, const SpectralInfo& info,
                                     const ConnectivityParams& params) {
    ConnectivityOutput out;
    out.clamped = info.fiedler_value <= params.epsilon;
    out.u = fiedler_gradient(graph, info);
    const double slope = barrier_slope(info.fiedler_value, params);
    for (Vec2& u : out.u) u = saturate(u * slope, params.saturation);
    return out;
}

std::vector<Vec2> resilience_term(const ProximityGraph& graph,
                                  std::span<const VulnerabilityReport> reports,
                                  std::span<const double> draws, const ResilienceParams& params) {
    const std::size_t n = graph.size();
    std::vector<Vec2> u(n);
    const auto& p = graph.positions();
    for (std::size_t i = 0; i < n; ++i) {
        const VulnerabilityReport& report = reports[i];
        if (!is_vulnerable(report.p_theta, draws[i]) || report.path_beta_set.empty()) continue;
        Vec2 barycenter;
        for (std::size_t k : report.path_beta_set) barycenter += p[k];
        barycenter *= 1.0 / static_cast<double>(report.path_beta_set.size());
        const Vec2 to_target = barycenter - p[i];
        const double len = to_target.norm();
        if (len == 0.0) continue;
        u[i] = to_target * (params.alpha / len);
    }
    return u;
}

double lennard_jones_force(double x, const LennardJonesParams& params) {
    const double repulsive = params.a * std::pow(params.delta, params.a) / std::pow(x, params.a + 1.0);
    const double attractive = 2.0 * params.b * std::pow(params.delta, params.b) / std::pow(x, params.b + 1.0);
    return params.iota * (repulsive - attractive);
}

namespace {

// Fixed direction for a coincident pair, from a 64-bit mix of the two ids.
Vec2 pair_direction(RobotId lo, RobotId hi) {
    std::uint64_t z = (static_cast<std::uint64_t>(lo) << 32) | hi;
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    const double angle = static_cast<double>(z >> 11) * 0x1.0p-53 * 2.0 * std::numbers::pi;
    return {std::cos(angle), std::sin(angle)};
}

}  // namespace

std::vector<Vec2> coverage_term(const ProximityGraph& graph, const LennardJonesParams& params) {
    const std::size_t n = graph.size();
    std::vector<Vec2> u(n);
    const auto& p = graph.positions();
    const auto& ids = graph.node_ids();
    const double range = 2.0 * params.delta;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vec2 away = p[i] - p[j];  // from j toward i
            const double x = away.norm();
            if (x > range) continue;
            Vec2 push_i;
            if (x == 0.0) {
                const bool i_lower = ids[i] < ids[j];
                const Vec2 dir = pair_direction(std::min(ids[i], ids[j]), std::max(ids[i], ids[j]));
                push_i = (i_lower ? dir : -dir) * params.force_cap;
            } else {
                const double f = std::clamp(lennard_jones_force(x, params), -params.force_cap,
                                            params.force_cap);
                push_i = away * (f / x);
            }
            u[i] += push_i;
            u[j] -= push_i;
        }
    }
    return u;
}

std::vector<Vec2> combine_raw(std::span<const ControlTerms> terms, const GainTriple& gains) {
    std::vector<Vec2> u;
    u.reserve(terms.size());
    for (const ControlTerms& t : terms)
        u.push_back(gains.sigma * t.u_c + gains.psi * t.u_r + gains.zeta * t.u_d);
    return u;
}

std::vector<Vec2> combine(std::span<const ControlTerms> terms, const GainTriple& gains, double v_max) {
    std::vector<Vec2> u = combine_raw(terms, gains);
    for (Vec2& v : u) v = saturate(v, v_max);
    return u;
}

}  // namespace resinet
