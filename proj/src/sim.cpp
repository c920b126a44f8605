#include "resinet/sim.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "resinet/parallel.hpp"
#include "resinet/rng.hpp"

namespace resinet {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kPlacementSalt = 1;
constexpr std::uint64_t kOptimizerSalt = 2;

}  // namespace

ExperimentConfig ExperimentConfig::with_defaults(double comm_radius) {
    ExperimentConfig c;
    c.comm_radius = comm_radius;
    c.weights.kappa = comm_radius / 2.0;
    c.workspace.cover_radius = comm_radius / 2.0;
    c.controller.lennard_jones.delta = 1.2 * comm_radius;
    c.controller.lennard_jones.force_cap = 10.0 * c.controller.resilience.alpha;
    return c;
}

void ExperimentConfig::validate() const {
    if (n_robots < 1) throw InputError("experiment: n_robots must be >= 1");
    if (!(dt > 0.0)) throw InputError("experiment: dt must be positive");
    if (!(comm_radius > 0.0)) throw InputError("graph: comm_radius must be positive");
    if (!(weights.kappa > 0.0)) throw InputError("graph: kappa must be positive");
    workspace.validate();
    if (!(controller.connectivity.epsilon > 0.0)) throw InputError("connectivity: epsilon must be positive");
    if (!(controller.connectivity.saturation > 0.0)) throw InputError("connectivity: saturation must be positive");
    if (controller.resilience.alpha < 0.0) throw InputError("resilience: alpha must be >= 0");
    const auto& lj = controller.lennard_jones;
    if (!(lj.delta > comm_radius)) throw InputError("lennard_jones: delta must exceed comm_radius");
    if (!(lj.a > lj.b && lj.b > 0.0)) throw InputError("lennard_jones: need a > b > 0");
    if (!(lj.force_cap > 0.0)) throw InputError("lennard_jones: force_cap must be positive");
    if (!(controller.v_max > 0.0)) throw InputError("motion: v_max must be positive");

    validate_gains(gains, optimizer ? optimizer->g_max : OptimizerConfig{}.g_max);
    if (optimizer) optimizer->validate();

    if (placement.kind == PlacementKind::explicit_list) {
        if (placement.positions.size() != n_robots)
            throw InputError("placement: expected " + std::to_string(n_robots) + " positions, got " +
                             std::to_string(placement.positions.size()));
        for (const Vec2& p : placement.positions)
            if (!p.finite() || !workspace.bounds.contains(p))
                throw InputError("placement: position outside the workspace");
    } else if (!(placement.spawn_side > 0.0)) {
        throw InputError("placement: spawn_side must be positive");
    }
    for (const FailureEvent& f : failures)
        if (f.robot && *f.robot >= n_robots)
            throw InputError("failures: unknown robot id " + std::to_string(*f.robot));
}

PredictionModel ExperimentConfig::prediction_model() const {
    return {dt, controller.v_max, comm_radius, weights, workspace};
}

std::vector<Vec2> sample_connected_placement(const ExperimentConfig& config) {
    std::mt19937_64 rng(mix_seed(config.seed, kPlacementSalt));
    const Bounds& b = config.workspace.bounds;
    const double cx = 0.5 * (b.xmin + b.xmax);
    const double cy = 0.5 * (b.ymin + b.ymax);
    const double half_w = 0.5 * std::min(config.placement.spawn_side, b.width());
    const double half_h = 0.5 * std::min(config.placement.spawn_side, b.height());

    std::vector<Vec2> positions(config.n_robots);
    for (std::size_t attempt = 0; attempt < config.placement.max_attempts; ++attempt) {
        for (Vec2& p : positions) {
            p.x = uniform(rng, cx - half_w, cx + half_w);
            p.y = uniform(rng, cy - half_h, cy + half_h);
        }
        if (config.n_robots == 1) return positions;
        const ProximityGraph g = build_graph(positions, config.comm_radius, config.weights);
        if (spectral(g).fiedler_value > config.controller.connectivity.epsilon) return positions;
    }
    throw InputError("placement: no connected placement found; enlarge comm_radius or shrink spawn_side");
}

Analysis analyze(std::span<const RobotState> robots, const ExperimentConfig& config) {
    std::vector<RobotId> ids;
    std::vector<Vec2> positions;
    for (const RobotState& r : robots) {
        if (!r.alive) continue;
        ids.push_back(r.id);
        positions.push_back(r.position);
    }
    Analysis a;
    a.area = covered_area(positions, config.workspace);
    if (ids.empty()) return a;
    a.graph = build_graph(ids, positions, config.comm_radius, config.weights);
    a.spectral = spectral(a.graph);
    a.reports = vulnerability_all(a.graph, config.controller.resilience.beta);
    a.connected = is_connected(a.graph);
    return a;
}

Simulation::Simulation(ExperimentConfig config) : config_(std::move(config)) {
    config_.validate();
    const std::vector<Vec2> start = config_.placement.kind == PlacementKind::explicit_list
                                        ? config_.placement.positions
                                        : sample_connected_placement(config_);
    if (config_.placement.kind == PlacementKind::explicit_list && config_.n_robots > 1 &&
        !is_connected(build_graph(start, config_.comm_radius, config_.weights)))
        throw InputError("placement: explicit initial graph is disconnected");

    robots_.reserve(config_.n_robots);
    robot_streams_.reserve(config_.n_robots);
    for (std::size_t k = 0; k < config_.n_robots; ++k) {
        const auto id = static_cast<RobotId>(k);
        robots_.push_back({id, start[k], true});
        robot_streams_.emplace_back(config_.seed ^ static_cast<std::uint64_t>(id));
    }
    optimizer_stream_.seed(mix_seed(config_.seed, kOptimizerSalt));
    active_gains_ = config_.gains;
    record(false);
}

const Analysis& Simulation::analysis() {
    if (!analysis_) analysis_ = analyze(robots_, config_);
    return *analysis_;
}

RobotId Simulation::inject_failure(std::optional<RobotId> target) {
    RobotId victim = 0;
    if (target) {
        if (*target >= robots_.size()) throw InputError("inject_failure: unknown robot " + std::to_string(*target));
        if (!robots_[*target].alive) throw PreconditionError("inject_failure: robot already dead");
        victim = *target;
    } else {
        const Analysis& a = analysis();
        if (a.graph.size() == 0) throw PreconditionError("inject_failure: no living robots");
        const auto scores = betweenness(a.graph);
        victim = a.graph.node_ids()[betweenness_order(a.graph, scores).front()];
    }
    robots_[victim].alive = false;
    analysis_.reset();
    return victim;
}

Snapshot Simulation::compute_terms(bool* clamped) {
    const Analysis& a = analysis();
    Snapshot snap;
    snap.ids = a.graph.node_ids();
    snap.positions = a.graph.positions();
    const std::size_t n = snap.ids.size();
    if (n == 0) return snap;

    std::vector<double> draws(n);
    for (std::size_t k = 0; k < n; ++k) draws[k] = uniform01(robot_streams_[snap.ids[k]]);

    const auto& params = config_.controller;
    const ConnectivityOutput uc = connectivity_term(a.graph, a.spectral, params.connectivity);
    const std::vector<Vec2> ur = resilience_term(a.graph, a.reports, draws, params.resilience);
    const std::vector<Vec2> ud = coverage_term(a.graph, params.lennard_jones);
    snap.terms.resize(n);
    for (std::size_t k = 0; k < n; ++k) snap.terms[k] = {uc.u[k], ur[k], ud[k]};
    if (clamped) *clamped = uc.clamped;
    return snap;
}

std::string Simulation::dump_snapshot(const Snapshot& snapshot) const {
    std::ostringstream out;
    out << std::setprecision(17) << "non-finite control term at step " << step_index_ << '\n';
    for (std::size_t k = 0; k < snapshot.ids.size(); ++k) {
        const ControlTerms& t = snapshot.terms[k];
        out << "  robot " << snapshot.ids[k] << " p=(" << snapshot.positions[k].x << ','
            << snapshot.positions[k].y << ") u_c=(" << t.u_c.x << ',' << t.u_c.y << ") u_r=(" << t.u_r.x
            << ',' << t.u_r.y << ") u_d=(" << t.u_d.x << ',' << t.u_d.y << ")\n";
    }
    return out.str();
}

void Simulation::step() {
    for (const FailureEvent& f : config_.failures) {
        if (f.step != step_index_) continue;
        if (f.robot && !robots_[*f.robot].alive) continue;
        inject_failure(f.robot);
    }

    bool clamped = false;
    const Snapshot snap = compute_terms(&clamped);
    for (const ControlTerms& t : snap.terms)
        if (!t.u_c.finite() || !t.u_r.finite() || !t.u_d.finite()) throw SimulationError(dump_snapshot(snap));

    if (config_.optimizer && step_index_ % config_.optimizer->period == 0 && !snap.ids.empty()) {
        RoundLog log{step_index_, optimization_round(snap, config_.prediction_model(), *config_.optimizer,
                                                     active_gains_, optimizer_stream_)};
        active_gains_ = log.result.best;
        rounds_.push_back(std::move(log));
    }

    const std::vector<Vec2> u = combine(snap.terms, active_gains_, config_.controller.v_max);
    for (std::size_t k = 0; k < snap.ids.size(); ++k) {
        RobotState& robot = robots_[snap.ids[k]];
        robot.position = config_.workspace.bounds.clamp(robot.position + config_.dt * u[k]);
    }
    analysis_.reset();
    ++step_index_;
    record(clamped);
}

void Simulation::record(bool clamped) {
    const Analysis& a = analysis();
    MetricsRecord m;
    m.step = step_index_;
    m.lambda = a.graph.size() > 0 ? a.spectral.fiedler_value : 0.0;
    m.area = a.area;
    m.f_obj = m.lambda * m.area;
    m.n_alive = a.graph.size();
    m.connected = a.graph.size() > 0 && a.connected;
    if (m.connected && m.n_alive >= 2) m.theta = robustness_level(a.graph);
    double sum = 0.0;
    for (const auto& r : a.reports) sum += r.p_theta;
    m.mean_ptheta = a.reports.empty() ? 0.0 : sum / static_cast<double>(a.reports.size());
    m.gains = active_gains_;
    m.connectivity_clamped = clamped;
    metrics_.push_back(m);
}

void Simulation::run() {
    while (step_index_ < config_.steps) step();
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    Simulation sim(config);
    sim.run();
    return {sim.metrics(), sim.rounds(), sim.robots(), sim.active_gains()};
}

std::vector<GainTriple> constant_gain_set() {
    std::vector<GainTriple> out;
    for (double sigma : {0.0, 1.0, 2.0})
        for (double psi : {0.0, 1.0, 2.0})
            for (double zeta : {0.0, 1.0}) out.push_back({sigma, psi, zeta});
    return out;
}

std::vector<EnvelopePoint> f_obj_envelope(const std::vector<ExperimentResult>& runs) {
    if (runs.empty()) return {};
    const std::size_t steps = runs.front().metrics.size();
    std::vector<EnvelopePoint> env(steps);
    const auto count = static_cast<double>(runs.size());
    for (std::size_t t = 0; t < steps; ++t) {
        double sum = 0.0;
        for (const auto& r : runs) sum += r.metrics.at(t).f_obj;
        const double mean = sum / count;
        double sq = 0.0;
        for (const auto& r : runs) sq += (r.metrics[t].f_obj - mean) * (r.metrics[t].f_obj - mean);
        env[t] = {mean, std::sqrt(sq / count)};
    }
    return env;
}

SweepResult run_constant_gain_sweep(const ExperimentConfig& config, std::size_t jobs) {
    SweepResult out;
    out.gains = constant_gain_set();
    out.runs.resize(out.gains.size());
    parallel_for(out.gains.size(), jobs, [&](std::size_t k) {
        ExperimentConfig c = config;
        c.optimizer.reset();
        c.gains = out.gains[k];
        out.runs[k] = run_experiment(c);
    });
    out.envelope = f_obj_envelope(out.runs);
    return out;
}

}  // namespace resinet
