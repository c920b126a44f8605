// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "resinet/app/config.hpp"
#include "resinet/rng.hpp"
#include "resinet/sim.hpp"
#include "support/oracles.hpp"

using namespace resinet;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ProximityGraph random_geometric(std::mt19937_64& rng, std::size_t n, double side) {
    const auto pts = oracle::random_points(rng, n, side);
    return build_graph(std::span<const Vec2>(pts), 1.0, WeightParams{0.5});
}

ProximityGraph weighted(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges, double w) {
    SquareMatrix m(n, 0.0);
    for (auto [i, j] : edges) m(i, j) = m(j, i) = w;
    std::vector<RobotId> ids(n);
    for (std::size_t k = 0; k < n; ++k) ids[k] = static_cast<RobotId>(k);
    return {ids, std::vector<Vec2>(n), 1.0, 0.5, m};
}

double slope(const std::vector<double>& y) {
    const double n = static_cast<double>(y.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < y.size(); ++k) {
        const double x = static_cast<double>(k);
        sx += x;
        sy += y[k];
        sxx += x * x;
        sxy += x * y[k];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double final_f(const ExperimentResult& r) { return r.metrics.back().f_obj; }

Outcome oracle_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1001);
    std::uniform_int_distribution<std::size_t> size(2, 8);
    int graphs = 0;
    int mismatches = 0;
    while (graphs < 500) {
        const std::size_t n = size(rng);
        const auto g = random_geometric(rng, n, 0.5 * std::sqrt(static_cast<double>(n)) + 0.3);
        if (!oracle::connected(oracle::adjacency(g), std::vector<bool>(n, true))) continue;
        ++graphs;
        const auto a = oracle::adjacency(g);
        bool ok = true;
        const auto bc = betweenness(g);
        const auto ref_bc = oracle::betweenness(a);
        for (std::size_t k = 0; k < n; ++k) ok = ok && std::abs(bc[k] - ref_bc[k]) <= 1e-9;
        std::vector<unsigned> ids(g.node_ids().begin(), g.node_ids().end());
        ok = ok && robustness_level(g) == oracle::robustness(a, ids);
        for (std::size_t v = 0; v < n; ++v) {
            const auto r = vulnerability(g, v, 1);
            const auto nb = oracle::neighborhood(a, v, 1);
            ok = ok && r.pi_set == nb.pi && r.pi2_set == nb.pi2 && r.path_beta_set == nb.path_beta &&
                 r.p_theta == nb.p_theta;
        }
        mismatches += ok ? 0 : 1;
    }
    const double secs = seconds_since(t0);
    return {mismatches == 0 && secs < 60.0,
            fmt("%d connected graphs (N <= 8), %d mismatches, %.1f s (limit 60 s)", graphs, mismatches, secs)};
}

Outcome spectral_correctness() {
    std::mt19937_64 rng(1002);
    std::uniform_int_distribution<std::size_t> size(3, 20);
    int disagreements = 0;
    int connected = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = size(rng);
        const auto g = random_geometric(rng, n, 0.55 * std::sqrt(static_cast<double>(n)) + 0.3);
        const bool bfs = oracle::connected(oracle::adjacency(g), std::vector<bool>(n, true));
        connected += bfs ? 1 : 0;
        disagreements += ((spectral(g).fiedler_value > 1e-9) == bfs) ? 0 : 1;
    }
    const double w = std::exp(-0.5);
    const double k2 = spectral(weighted(2, {{0, 1}}, w)).fiedler_value;
    const double p3 = spectral(weighted(3, {{0, 1}, {1, 2}}, 1.0)).fiedler_value;
    const double k4 = spectral(weighted(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, w)).fiedler_value;
    const double err = std::max({std::abs(k2 - 2 * w), std::abs(p3 - 1.0), std::abs(k4 - 4 * w)});
    return {disagreements == 0 && err <= 1e-9,
            fmt("200 graphs (%d connected), %d disagreements; K2/P3/K4 max error %.2e (limit 1e-9)", connected,
                disagreements, err)};
}

Outcome gradient_check() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1003);
    std::uniform_int_distribution<std::size_t> size(4, 10);
    int checked = 0;
    double worst = 0.0;
    while (checked < 50) {
        const std::size_t n = size(rng);
        const auto pts = oracle::random_points(rng, n, 0.45 * std::sqrt(static_cast<double>(n)));
        bool near_cutoff = false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) near_cutoff |= std::abs(distance(pts[i], pts[j]) - 1.0) < 1e-3;
        if (near_cutoff) continue;
        const auto g = build_graph(std::span<const Vec2>(pts), 1.0, WeightParams{0.5});
        const auto ref = oracle::laplacian_spectrum(g);
        if (ref(1) < 1e-6 || ref(2) - ref(1) < 1e-3) continue;  // simple eigenvalue only
        ++checked;
        const auto grad = fiedler_gradient(g, spectral(g));
        const double h = 1e-6;
        double err = 0.0;
        double scale = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (int axis = 0; axis < 2; ++axis) {
                auto up = pts;
                auto down = pts;
                (axis == 0 ? up[i].x : up[i].y) += h;
                (axis == 0 ? down[i].x : down[i].y) -= h;
                const double fd =
                    (oracle::fiedler_value(build_graph(std::span<const Vec2>(up), 1.0, WeightParams{0.5})) -
                     oracle::fiedler_value(build_graph(std::span<const Vec2>(down), 1.0, WeightParams{0.5}))) /
                    (2 * h);
                err = std::max(err, std::abs((axis == 0 ? grad[i].x : grad[i].y) - fd));
                scale = std::max(scale, std::abs(fd));
            }
        worst = std::max(worst, err / scale);
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-4 && secs < 60.0,
            fmt("50 configurations, worst relative error %.2e (limit 1e-4), %.1f s", worst, secs)};
}

Outcome connectivity_preservation() {
    int violations = 0;
    double lowest = 1e300;
    double epsilon = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto cfg = ExperimentConfig::with_defaults(1.0);
        cfg.seed = seed;
        cfg.gains = {1, 0, 0};
        epsilon = cfg.controller.connectivity.epsilon;
        for (const auto& m : run_experiment(cfg).metrics) {
            lowest = std::min(lowest, m.lambda);
            violations += m.lambda >= epsilon ? 0 : 1;
        }
    }
    return {violations == 0, fmt("20 seeds x 501 records, min lambda %.4f vs epsilon %.2f, %d violations", lowest,
                                 epsilon, violations)};
}

struct CompareSeed {
    double constant_mean = 0.0;
    std::map<SearchMethod, double> optimized;
};

std::vector<CompareSeed> compare_runs() {
    std::vector<CompareSeed> out;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        app::Settings s;
        s.experiment.seed = seed;
        CompareSeed row;
        const auto sweep = run_constant_gain_sweep(s.experiment);
        for (const auto& r : sweep.runs) row.constant_mean += final_f(r) / static_cast<double>(sweep.runs.size());
        for (SearchMethod m : {SearchMethod::grid, SearchMethod::random, SearchMethod::auglag})
            row.optimized[m] = final_f(run_experiment(s.optimized(m)));
        out.push_back(row);
    }
    return out;
}

Outcome per_method_shape(const std::vector<CompareSeed>& rows, double secs) {
    int wins = 0;
    for (const auto& r : rows) wins += r.optimized.at(SearchMethod::random) >= r.constant_mean ? 1 : 0;
    return {wins >= 8 && secs < 1800.0,
            fmt("random >= constant-gain mean in %d/10 seeds (need 8), compare time %.1f s", wins, secs)};
}

Outcome method_ordering(const std::vector<CompareSeed>& rows) {
    double grid = 0, random = 0, auglag = 0, constant = 0;
    for (const auto& r : rows) {
        grid += r.optimized.at(SearchMethod::grid) / 10.0;
        random += r.optimized.at(SearchMethod::random) / 10.0;
        auglag += r.optimized.at(SearchMethod::auglag) / 10.0;
        constant += r.constant_mean / 10.0;
    }
    const double vs_grid = (random - grid) / grid;
    const double vs_auglag = (random - auglag) / auglag;
    const bool within = vs_grid >= -0.05 && vs_auglag >= -0.05;
    std::string flag = within ? "" : " FLAGGED: random trails by more than 5%";
    return {within, fmt("mean final f_obj random %.3f, grid %.3f (%+.1f%%), auglag %.3f (%+.1f%%), constant %.3f%s",
                        random, grid, 100 * vs_grid, auglag, 100 * vs_auglag, constant, flag.c_str())};
}

Outcome sweep_insensitivity() {
    app::Settings s;
    std::vector<double> finals;
    std::string cells;
    for (std::size_t gp : s.sweep_budgets)
        for (std::size_t op : s.sweep_periods) {
            auto cfg = s.optimized(SearchMethod::random);
            cfg.optimizer->budget = gp;
            cfg.optimizer->period = op;
            finals.push_back(final_f(run_experiment(cfg)));
        }
    const double hi = *std::max_element(finals.begin(), finals.end());
    const double lo = *std::min_element(finals.begin(), finals.end());
    const double spread = (hi - lo) / hi;
    return {spread <= 0.15, fmt("9 cells, final f_obj in [%.3f, %.3f], spread %.1f%% (limit 15%%)", lo, hi, 100 * spread)};
}

Outcome early_shape() {
    int good = 0;
    std::string slopes;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        app::Settings s;
        s.experiment.seed = seed;
        const auto r = run_experiment(s.experiment);
        const std::size_t quarter = s.experiment.steps / 4;
        std::vector<double> lambda;
        std::vector<double> area;
        for (std::size_t t = 0; t <= quarter; ++t) {
            lambda.push_back(r.metrics[t].lambda);
            area.push_back(r.metrics[t].area);
        }
        const bool ok = slope(lambda) >= 0.0 && slope(area) < 0.0;
        good += ok ? 1 : 0;
    }
    return {good >= 8, fmt("lambda slope >= 0 and area slope < 0 over steps 0-125 in %d/10 seeds (need 8)", good)};
}

Outcome resilience_effect() {
    double theta[2] = {0, 0};
    int connected[2] = {0, 0};
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
        for (int psi = 0; psi < 2; ++psi) {
            auto cfg = ExperimentConfig::with_defaults(1.0);
            cfg.seed = seed;
            cfg.steps = 200;
            cfg.gains = {1, static_cast<double>(psi), 0};
            cfg.placement.kind = PlacementKind::explicit_list;
            // Eight robots in a jittered line, 0.6 m apart: every interior
            // robot is a cut vertex.
            std::mt19937_64 jitter(seed);
            for (int k = 0; k < 8; ++k)
                cfg.placement.positions.push_back(
                    {2.5 - 3.5 * 0.6 + 0.6 * k + uniform(jitter, -0.03, 0.03), 2.5 + uniform(jitter, -0.03, 0.03)});
            Simulation sim(cfg);
            sim.run();
            theta[psi] += sim.metrics().back().theta.value_or(0.0) / 20.0;
            sim.inject_failure(std::nullopt);
            connected[psi] += sim.analysis().connected ? 1 : 0;
        }
    const bool theta_ok = theta[1] > theta[0];
    const bool kill_ok = connected[1] >= connected[0];
    return {theta_ok && kill_ok,
            fmt("mean final theta psi=1 %.4f vs psi=0 %.4f (%s); connected after top-BC kill %d/20 vs %d/20 (%s)",
                theta[1], theta[0], theta_ok ? "exceeds" : "does not exceed", connected[1], connected[0],
                kill_ok ? "ok" : "worse")};
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(RESINET_CLI) + " " + args + " > /dev/null 2> cli_stderr.txt";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome determinism() {
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"run", "run --seed 5"},
        {"compare", "compare --seed 5 --methods grid,random,auglag"},
        {"sweep", "sweep --seed 5"},
    };
    int files = 0;
    int differing = 0;
    std::string failed;
    for (const auto& [name, args] : commands) {
        const fs::path a = "determinism_" + name + "_a";
        const fs::path b = "determinism_" + name + "_b";
        fs::remove_all(a);
        fs::remove_all(b);
        if (run_cli(args + " --out " + a.string()) != 0 || run_cli(args + " --out " + b.string()) != 0) {
            failed += " " + name;
            continue;
        }
        for (const auto& e : fs::recursive_directory_iterator(a)) {
            if (e.path().filename() != "metrics.csv") continue;
            ++files;
            const fs::path twin = b / fs::relative(e.path(), a);
            differing += slurp(e.path()) == slurp(twin) && fs::exists(twin) ? 0 : 1;
        }
        fs::remove_all(a);
        fs::remove_all(b);
    }
    return {failed.empty() && differing == 0 && files > 0,
            fmt("run/compare/sweep repeated with seed 5: %d metrics.csv pairs, %d differ%s", files, differing,
                failed.empty() ? "" : (" (command failed:" + failed + ")").c_str())};
}

}  // namespace

int main() {
    int passed = 0;
    int total = 0;
    auto report = [&](int id, const char* name, const Outcome& o) {
        ++total;
        passed += o.pass ? 1 : 0;
        std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
        std::fflush(stdout);
    };

    report(1, "oracle equivalence", oracle_equivalence());
    report(2, "spectral correctness", spectral_correctness());
    report(3, "gradient check", gradient_check());
    report(4, "connectivity preservation", connectivity_preservation());
    const auto t0 = std::chrono::steady_clock::now();
    const auto rows = compare_runs();
    const double compare_secs = seconds_since(t0);
    report(5, "optimized beats constant gains", per_method_shape(rows, compare_secs));
    report(6, "method ordering", method_ordering(rows));
    report(7, "sweep insensitivity", sweep_insensitivity());
    report(8, "early lambda rise and coverage dip", early_shape());
    report(9, "resilience effect", resilience_effect());
    report(10, "determinism", determinism());

    std::printf("%d/%d criteria passed\n", passed, total);
    return passed == total ? 0 : 1;
}
