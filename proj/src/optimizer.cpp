#include "resinet/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

#include "resinet/rng.hpp"

namespace resinet {

ObjectiveSample evaluate_candidate(const Snapshot& snapshot, const GainTriple& gains,
                                   const PredictionModel& model) {
    const std::vector<Vec2> u = combine(snapshot.terms, gains, model.v_max);
    std::vector<Vec2> next(snapshot.positions.size());
    for (std::size_t k = 0; k < next.size(); ++k)
        next[k] = model.workspace.bounds.clamp(snapshot.positions[k] + model.dt * u[k]);

    ObjectiveSample sample;
    sample.gains = gains;
    if (!next.empty()) {
        const ProximityGraph graph = build_graph(snapshot.ids, next, model.comm_radius, model.weights);
        sample.predicted_lambda = spectral(graph).fiedler_value;
    }
    sample.predicted_area = covered_area(next, model.workspace);
    sample.f_obj = sample.predicted_lambda * sample.predicted_area;
    return sample;
}

std::string_view to_string(SearchMethod method) {
    switch (method) {
        case SearchMethod::grid: return "grid";
        case SearchMethod::random: return "random";
        case SearchMethod::auglag: return "auglag";
    }
    return "?";
}

SearchMethod parse_search_method(std::string_view name) {
    if (name == "grid") return SearchMethod::grid;
    if (name == "random") return SearchMethod::random;
    if (name == "auglag") return SearchMethod::auglag;
    throw InputError("unknown search method '" + std::string(name) + "'");
}

void OptimizerConfig::validate() const {
    if (budget < 1) throw InputError("optimizer: G_p must be >= 1");
    if (period < 1) throw InputError("optimizer: O_p must be >= 1");
    if (!(g_max > 0.0)) throw InputError("optimizer: g_max must be positive");
    if (method == SearchMethod::grid && budget < 8) throw InputError("optimizer: grid search needs G_p >= 8");
    if (method == SearchMethod::auglag && budget < 50)
        throw InputError("optimizer: augmented Lagrangian needs G_p >= 50");
}

std::size_t select_best(std::span<const ObjectiveSample> samples) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < samples.size(); ++k)
        if (samples[k].f_obj > samples[best].f_obj) best = k;
    return best;
}

SearchResult search_candidates(std::span<const GainTriple> candidates, const Evaluator& evaluate) {
    if (candidates.empty()) throw InputError("search_candidates: no candidates");
    SearchResult result;
    result.samples.reserve(candidates.size());
    for (const GainTriple& g : candidates) result.samples.push_back(evaluate(g));
    result.best_sample = result.samples[select_best(result.samples)];
    result.best = result.best_sample.gains;
    return result;
}

std::vector<GainTriple> lattice_candidates(std::size_t budget, double g_max) {
    if (budget < 8) throw InputError("lattice_candidates: budget must be >= 8");
    std::size_t k = 2;
    while ((k + 1) * (k + 1) * (k + 1) <= budget) ++k;
    std::vector<double> axis(k);
    for (std::size_t i = 0; i < k; ++i)
        axis[i] = g_max * static_cast<double>(i) / static_cast<double>(k - 1);

    std::vector<GainTriple> out;
    out.reserve(k * k * k);
    for (double s : axis)
        for (double p : axis)
            for (double z : axis) out.push_back({s, p, z});
    return out;
}

std::vector<GainTriple> random_candidates(std::size_t budget, double g_max, std::mt19937_64& rng) {
    std::vector<GainTriple> out;
    out.reserve(budget);
    for (std::size_t k = 0; k < budget; ++k) {
        const double s = uniform(rng, 0.0, g_max);
        const double p = uniform(rng, 0.0, g_max);
        const double z = uniform(rng, 0.0, g_max);
        out.push_back({s, p, z});
    }
    return out;
}

SearchResult optimize_grid(const Evaluator& evaluate, const OptimizerConfig& config) {
    const auto candidates = lattice_candidates(config.budget, config.g_max);
    return search_candidates(candidates, evaluate);
}

SearchResult optimize_random(const Evaluator& evaluate, const OptimizerConfig& config,
                             const GainTriple& current, std::mt19937_64& rng) {
    auto candidates = random_candidates(config.budget, config.g_max, rng);
    candidates.push_back(current);
    return search_candidates(candidates, evaluate);
}

namespace {

using Point = std::array<double, 3>;

Point to_point(const GainTriple& g) { return {g.sigma, g.psi, g.zeta}; }
GainTriple to_gains(const Point& x) { return {x[0], x[1], x[2]}; }

Point project(Point x, double g_max) {
    for (double& v : x) v = std::clamp(v, 0.0, g_max);
    return x;
}

bool in_box(const Point& x, double g_max) {
    return std::all_of(x.begin(), x.end(), [&](double v) { return v >= 0.0 && v <= g_max; });
}

/// Six bound constraints c(x) <= 0: -x_k and x_k - g_max.
std::array<double, 6> violations(const Point& x, double g_max) {
    return {-x[0], -x[1], -x[2], x[0] - g_max, x[1] - g_max, x[2] - g_max};
}

class AugLagSolver {
public:
    AugLagSolver(const Evaluator& evaluate, const OptimizerConfig& config)
        : evaluate_(evaluate), config_(config), mu_(config.auglag.mu0) {}

    SearchResult run(const GainTriple& start) {
        // One evaluation is held back for the projected final iterate.
        limit_ = config_.budget - 1;
        Point x = project(to_point(start), config_.g_max);
        std::optional<double> fx = f(x);
        if (fx) {
            for (int outer = 0; outer < config_.auglag.max_outer && fx; ++outer) {
                fx = descend(x, *fx);
                if (!fx) break;
                const auto viol = violations(x, config_.g_max);
                for (std::size_t c = 0; c < multipliers_.size(); ++c)
                    multipliers_[c] = std::max(0.0, multipliers_[c] + mu_ * viol[c]);
                mu_ *= config_.auglag.mu_growth;
            }
            limit_ = config_.budget;
            if (!in_box(x, config_.g_max)) f(project(x, config_.g_max));
        }

        SearchResult result;
        result.samples = std::move(samples_);
        std::optional<std::size_t> best;
        for (std::size_t k = 0; k < result.samples.size(); ++k) {
            if (!in_box(to_point(result.samples[k].gains), config_.g_max)) continue;
            if (!best || result.samples[k].f_obj > result.samples[*best].f_obj) best = k;
        }
        result.best_sample = result.samples[best.value_or(0)];
        result.best = result.best_sample.gains;
        return result;
    }

private:
    std::optional<double> f(const Point& x) {
        if (samples_.size() >= limit_) return std::nullopt;
        samples_.push_back(evaluate_(to_gains(x)));
        return samples_.back().f_obj;
    }

    [[nodiscard]] double penalty(const Point& x) const {
        const auto viol = violations(x, config_.g_max);
        double sum = 0.0;
        for (std::size_t c = 0; c < viol.size(); ++c) {
            const double shifted = std::max(0.0, viol[c] + multipliers_[c] / mu_);
            sum += 0.5 * mu_ * shifted * shifted - multipliers_[c] * multipliers_[c] / (2.0 * mu_);
        }
        return sum;
    }

    /// Minimizes -f + penalty from x in place. Returns f at the final x, or
    /// nullopt once the budget is spent.
    std::optional<double> descend(Point& x, double fx) {
        const AugLagOptions& opt = config_.auglag;
        const double h = opt.fd_step_fraction * config_.g_max;
        for (int inner = 0; inner < opt.max_inner; ++inner) {
            const double phi_x = -fx + penalty(x);
            Point grad{};
            for (std::size_t k = 0; k < 3; ++k) {
                Point up = x;
                Point down = x;
                up[k] += h;
                down[k] -= h;
                const auto f_up = f(up);
                if (!f_up) return std::nullopt;
                const auto f_down = f(down);
                if (!f_down) return std::nullopt;
                grad[k] = ((-*f_up + penalty(up)) - (-*f_down + penalty(down))) / (2.0 * h);
            }
            const double grad_sq = grad[0] * grad[0] + grad[1] * grad[1] + grad[2] * grad[2];
            const double grad_norm = std::sqrt(grad_sq);
            if (grad_norm < opt.gradient_tolerance) return fx;

            // First trial step spans g_max; halve until Armijo holds.
            double t = config_.g_max / grad_norm;
            bool accepted = false;
            for (int halving = 0; halving < opt.max_halvings; ++halving, t *= 0.5) {
                Point trial{x[0] - t * grad[0], x[1] - t * grad[1], x[2] - t * grad[2]};
                const auto f_trial = f(trial);
                if (!f_trial) return std::nullopt;
                if (-*f_trial + penalty(trial) <= phi_x - opt.armijo_c * t * grad_sq) {
                    x = trial;
                    fx = *f_trial;
                    accepted = true;
                    break;
                }
            }
            if (!accepted) return fx;
        }
        return fx;
    }

    const Evaluator& evaluate_;
    const OptimizerConfig& config_;
    double mu_;
    std::array<double, 6> multipliers_{};
    std::size_t limit_ = 0;
    std::vector<ObjectiveSample> samples_;
};

}  // namespace

SearchResult optimize_auglag(const Evaluator& evaluate, const OptimizerConfig& config,
                             const GainTriple& current) {
    if (config.budget < 2) throw InputError("optimize_auglag: budget must be >= 2");
    return AugLagSolver(evaluate, config).run(current);
}

SearchResult optimization_round(const Snapshot& snapshot, const PredictionModel& model,
                                const OptimizerConfig& config, const GainTriple& current,
                                std::mt19937_64& rng) {
    const Evaluator evaluate = [&](const GainTriple& g) { return evaluate_candidate(snapshot, g, model); };
    switch (config.method) {
        case SearchMethod::grid: return optimize_grid(evaluate, config);
        case SearchMethod::random: return optimize_random(evaluate, config, current, rng);
        case SearchMethod::auglag: return optimize_auglag(evaluate, config, current);
    }
    throw InputError("optimization_round: unknown method");
}

}  // namespace resinet
