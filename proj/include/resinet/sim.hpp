#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "resinet/controllers.hpp"
#include "resinet/coverage.hpp"
#include "resinet/graph_metrics.hpp"
#include "resinet/optimizer.hpp"

namespace resinet {

struct RobotState {
    RobotId id = 0;
    Vec2 position;
    bool alive = true;
};

/// Kill target; an empty robot means "highest betweenness among the living".
struct FailureEvent {
    std::size_t step = 0;
    std::optional<RobotId> robot;
};

enum class PlacementKind { random_connected, explicit_list };

struct Placement {
    PlacementKind kind = PlacementKind::random_connected;
    std::vector<Vec2> positions;  ///< explicit_list only
    /// Side of the square, centered in the workspace, that random placements
    /// are drawn from.
    double spawn_side = 2.0;
    std::size_t max_attempts = 1000000;
};

struct ControllerParams {
    ConnectivityParams connectivity{};
    ResilienceParams resilience{};
    LennardJonesParams lennard_jones{};
    double v_max = 0.5;
};

struct ExperimentConfig {
    std::size_t n_robots = 8;
    std::size_t steps = 500;
    double dt = 0.1;
    std::uint64_t seed = 1;
    double comm_radius = 1.0;
    WeightParams weights{0.5};
    Placement placement{};
    std::vector<FailureEvent> failures;
    /// Empty: the fixed gains below stay active for the whole run.
    std::optional<OptimizerConfig> optimizer;
    GainTriple gains{1.0, 1.0, 1.0};
    Workspace workspace{};
    ControllerParams controller{};

    /// Defaults tied to R: κ = R/2, cover radius R/2, δ = 1.2 R, LJ cap 10 α.
    static ExperimentConfig with_defaults(double comm_radius = 1.0);

    void validate() const;
    [[nodiscard]] PredictionModel prediction_model() const;
};

struct MetricsRecord {
    std::size_t step = 0;
    double lambda = 0.0;
    double area = 0.0;
    double f_obj = 0.0;
    std::optional<double> theta;  ///< only for connected graphs with N >= 2
    double mean_ptheta = 0.0;
    GainTriple gains;
    std::size_t n_alive = 0;
    bool connected = false;
    bool connectivity_clamped = false;  ///< λ <= ε when the terms were computed
};

struct RoundLog {
    std::size_t step = 0;
    SearchResult result;
};

/// Thrown when a control term goes non-finite; what() carries a dump of the
/// step snapshot.
class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Graph-level quantities of the living robots at one instant.
struct Analysis {
    ProximityGraph graph;
    SpectralInfo spectral;
    std::vector<VulnerabilityReport> reports;
    double area = 0.0;
    bool connected = false;
};

class Simulation {
public:
    explicit Simulation(ExperimentConfig config);

    /// One control period: failures scheduled for the current step, control
    /// terms, optional optimization round, Euler step, clip, record.
    void step();

    /// Marks a robot dead (empty target = highest betweenness). Returns the id.
    RobotId inject_failure(std::optional<RobotId> target);

    void run();

    [[nodiscard]] const ExperimentConfig& config() const { return config_; }
    [[nodiscard]] const std::vector<RobotState>& robots() const { return robots_; }
    [[nodiscard]] std::size_t step_index() const { return step_index_; }
    [[nodiscard]] const GainTriple& active_gains() const { return active_gains_; }
    [[nodiscard]] const std::vector<MetricsRecord>& metrics() const { return metrics_; }
    [[nodiscard]] const std::vector<RoundLog>& rounds() const { return rounds_; }
    [[nodiscard]] const Analysis& analysis();

    /// Control terms and snapshot for the current state; advances the robot
    /// random streams.
    Snapshot compute_terms(bool* clamped = nullptr);

private:
    void record(bool clamped);
    [[nodiscard]] std::string dump_snapshot(const Snapshot& snapshot) const;

    ExperimentConfig config_;
    std::vector<RobotState> robots_;
    std::vector<std::mt19937_64> robot_streams_;
    std::mt19937_64 optimizer_stream_;
    std::size_t step_index_ = 0;
    GainTriple active_gains_;
    std::vector<MetricsRecord> metrics_;
    std::vector<RoundLog> rounds_;
    std::optional<Analysis> analysis_;
};

/// Random connected placement: uniform in the spawn square until λ > ε.
std::vector<Vec2> sample_connected_placement(const ExperimentConfig& config);

Analysis analyze(std::span<const RobotState> robots, const ExperimentConfig& config);

struct ExperimentResult {
    std::vector<MetricsRecord> metrics;
    std::vector<RoundLog> rounds;
    std::vector<RobotState> final_robots;
    GainTriple final_gains;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

/// The 18 constant-gain combinations ψ, σ ∈ {0, 1, 2}, ζ ∈ {0, 1}, ordered
/// lexicographically by (σ, ψ, ζ).
std::vector<GainTriple> constant_gain_set();

struct EnvelopePoint {
    double mean = 0.0;
    double stddev = 0.0;  ///< population standard deviation
};

struct SweepResult {
    std::vector<GainTriple> gains;
    std::vector<ExperimentResult> runs;  ///< runs[k] used gains[k]
    std::vector<EnvelopePoint> envelope; ///< f_obj per step across runs
};

std::vector<EnvelopePoint> f_obj_envelope(const std::vector<ExperimentResult>& runs);

/// Runs every constant gain triple from the same initial topology, with the
/// optimizer disabled.
SweepResult run_constant_gain_sweep(const ExperimentConfig& config, std::size_t jobs = 1);

}  // namespace resinet
