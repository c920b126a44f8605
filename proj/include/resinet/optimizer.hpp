#pragma once

#include <cstddef>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "resinet/controllers.hpp"
#include "resinet/coverage.hpp"
#include "resinet/graph_metrics.hpp"

namespace resinet {

/// One scored candidate. f_obj is always predicted_lambda * predicted_area.
struct ObjectiveSample {
    GainTriple gains;
    double predicted_lambda = 0.0;
    double predicted_area = 0.0;
    double f_obj = 0.0;
};

/// State frozen at the start of an optimization round; control terms are held
/// fixed across candidates.
struct Snapshot {
    std::vector<RobotId> ids;
    std::vector<Vec2> positions;
    std::vector<ControlTerms> terms;
};

/// What is needed to predict the next positions and score them.
struct PredictionModel {
    double dt = 0.1;
    double v_max = 0.5;
    double comm_radius = 1.0;
    WeightParams weights{};
    Workspace workspace{};
};

/// One-step look-ahead: p' = clamp(p + dt * saturate(σu^c + ψu^r + ζu^d)),
/// f_obj = λ(p') * A(p').
ObjectiveSample evaluate_candidate(const Snapshot& snapshot, const GainTriple& gains,
                                   const PredictionModel& model);

enum class SearchMethod { grid, random, auglag };

std::string_view to_string(SearchMethod method);
/// Throws InputError on an unknown name.
SearchMethod parse_search_method(std::string_view name);

struct AugLagOptions {
    double mu0 = 10.0;
    double mu_growth = 2.0;
    int max_outer = 5;
    int max_inner = 10;
    double armijo_c = 1e-4;
    double fd_step_fraction = 1e-3;  ///< central-difference step, relative to g_max
    double gradient_tolerance = 1e-6;
    int max_halvings = 40;
};

struct OptimizerConfig {
    SearchMethod method = SearchMethod::random;
    std::size_t budget = 400;  ///< G_p
    std::size_t period = 50;   ///< O_p
    double g_max = 2.0;
    AugLagOptions auglag{};

    void validate() const;
};

using Evaluator = std::function<ObjectiveSample(const GainTriple&)>;

struct SearchResult {
    GainTriple best;
    ObjectiveSample best_sample;
    std::vector<ObjectiveSample> samples;  ///< in evaluation order
};

/// Index of the first sample with the largest f_obj.
std::size_t select_best(std::span<const ObjectiveSample> samples);

/// Evaluates the candidates in order and keeps the first maximum.
SearchResult search_candidates(std::span<const GainTriple> candidates, const Evaluator& evaluate);

/// Uniform k^3 lattice over [0, g_max]^3 (endpoints included) with
/// k = floor(budget^(1/3)), in lexicographic (σ, ψ, ζ) order. Needs budget >= 8.
std::vector<GainTriple> lattice_candidates(std::size_t budget, double g_max);

/// `budget` triples drawn uniformly from [0, g_max]^3.
std::vector<GainTriple> random_candidates(std::size_t budget, double g_max, std::mt19937_64& rng);

SearchResult optimize_grid(const Evaluator& evaluate, const OptimizerConfig& config);

/// Drawn candidates first, then the active gains as a baseline.
SearchResult optimize_random(const Evaluator& evaluate, const OptimizerConfig& config,
                             const GainTriple& current, std::mt19937_64& rng);

/// Box-constrained augmented Lagrangian with finite-difference gradient descent,
/// starting from `current`. Never spends more than config.budget evaluations
/// and never returns a point outside [0, g_max]^3.
SearchResult optimize_auglag(const Evaluator& evaluate, const OptimizerConfig& config,
                             const GainTriple& current);

SearchResult optimization_round(const Snapshot& snapshot, const PredictionModel& model,
                                const OptimizerConfig& config, const GainTriple& current,
                                std::mt19937_64& rng);

}  // namespace resinet
