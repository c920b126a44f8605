#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "resinet/app/config.hpp"
#include "resinet/app/csv.hpp"
#include "resinet/app/manifest.hpp"
#include "resinet/app/svg.hpp"

using namespace resinet;
using namespace resinet::app;
namespace fs = std::filesystem;

namespace {

std::string error_of(const std::string& text) {
    try {
        resolve_settings(parse_config_text(text));
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

std::size_t count(const std::string& haystack, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
    return n;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("resinet_app_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("config grammar") {
    const auto raw = parse_config_text(
        "# experiment settings\n"
        "\n"
        "[experiment]\n"
        "n_robots = 6   # fewer robots\n"
        "  seed=42\n"
        "[gains]\n"
        "sigma = 0.5\n");
    REQUIRE(raw.size() == 3);
    CHECK(raw.at("experiment.n_robots").text == "6");
    CHECK(raw.at("experiment.n_robots").line == 4);
    CHECK(raw.at("experiment.seed").line == 5);
    const auto s = resolve_settings(raw);
    CHECK(s.experiment.n_robots == 6);
    CHECK(s.experiment.seed == 42);
    CHECK(s.experiment.gains.sigma == 0.5);
}

TEST_CASE("config errors carry line numbers and key names") {
    CHECK(error_of("[graph]\ncomm_radius = 1\nbogus = 3\n") == "line 3: graph.bogus: unknown key 'graph.bogus'");
    CHECK(error_of("[experiment]\n\nsteps = many\n").find("line 3: experiment.steps") == 0);
    CHECK(error_of("n_robots = 3\n").find("line 1") == 0);
    CHECK(error_of("[experiment\n").find("line 1: malformed section") == 0);
    CHECK(error_of("[experiment]\nsteps\n").find("line 2") == 0);
    CHECK(error_of("[gains]\nsigma = 1\nsigma = 2\n").find("line 3: duplicate key gains.sigma") == 0);
    CHECK(error_of("[gains]\nsigma = 3\n").find("invalid config") == 0);
    CHECK(error_of("[optimizer]\nmethod = simplex\n").find("line 2: optimizer.method") == 0);
    CHECK(error_of("[compare]\nmethods = grid, newton\n").find("line 2: compare.methods") == 0);
}

TEST_CASE("overrides") {
    RawConfig raw = parse_config_text("[experiment]\nsteps = 10\n");
    apply_override(raw, "experiment.steps=20");
    apply_override(raw, "motion.v_max = 0.25");
    const auto s = resolve_settings(raw);
    CHECK(s.experiment.steps == 20);
    CHECK(s.experiment.controller.v_max == 0.25);
    CHECK_THROWS_AS(apply_override(raw, "steps=3"), ConfigError);
    CHECK_THROWS_AS(apply_override(raw, "experiment.steps"), ConfigError);
    apply_override(raw, "motion.warp=1");
    try {
        resolve_settings(raw);
        FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("motion.warp") != std::string::npos);
    }
}

TEST_CASE("radius-derived defaults follow comm_radius unless set") {
    const auto s = resolve_settings(parse_config_text("[graph]\ncomm_radius = 2\n"));
    CHECK(s.experiment.weights.kappa == 1.0);
    CHECK(s.experiment.workspace.cover_radius == 1.0);
    CHECK(s.experiment.controller.lennard_jones.delta == doctest::Approx(2.4));
    const auto t = resolve_settings(parse_config_text("[graph]\ncomm_radius = 2\nkappa = 0.3\n"));
    CHECK(t.experiment.weights.kappa == 0.3);
    const auto u = resolve_settings(parse_config_text("[resilience]\nalpha = 0.05\n"));
    CHECK(u.experiment.controller.lennard_jones.force_cap == doctest::Approx(0.5));
}

TEST_CASE("optimizer, placement and failure keys") {
    const auto s = resolve_settings(parse_config_text(
        "[optimizer]\nmethod = grid\ngp = 27\nop = 5\n"
        "[experiment]\nn_robots = 3\n"
        "[placement]\nmode = explicit\npositions = 1,1; 1.5,1 ;2,1.2\n"
        "[failures]\nevents = 10:2; 20:top-bc\n"
        "[compare]\nmethods = grid,auglag\n"
        "[sweep]\ngp = 100\nop = 1,2\n"));
    REQUIRE(s.experiment.optimizer.has_value());
    CHECK(s.experiment.optimizer->method == SearchMethod::grid);
    CHECK(s.experiment.optimizer->budget == 27);
    CHECK(s.experiment.optimizer->period == 5);
    CHECK(s.experiment.placement.kind == PlacementKind::explicit_list);
    REQUIRE(s.experiment.placement.positions.size() == 3);
    CHECK(s.experiment.placement.positions[2].y == 1.2);
    REQUIRE(s.experiment.failures.size() == 2);
    CHECK(s.experiment.failures[0].step == 10);
    CHECK(s.experiment.failures[0].robot == std::optional<RobotId>(2));
    CHECK_FALSE(s.experiment.failures[1].robot.has_value());
    CHECK(s.compare_methods == std::vector<SearchMethod>{SearchMethod::grid, SearchMethod::auglag});
    CHECK(s.sweep_budgets == std::vector<std::size_t>{100});
    CHECK(s.sweep_periods == std::vector<std::size_t>{1, 2});

    const auto fixed = resolve_settings(parse_config_text("[optimizer]\nmethod = none\n"));
    CHECK_FALSE(fixed.experiment.optimizer.has_value());
    CHECK(fixed.optimized(SearchMethod::random).optimizer.has_value());
}

TEST_CASE("canonical config text round-trips") {
    const auto s = resolve_settings(parse_config_text(
        "[graph]\ncomm_radius = 1.3\n[gains]\nsigma = 0.1\n[failures]\nevents = 4:1\n[auglag]\nmu0 = 3\n"));
    const std::string text = to_config_text(s);
    const auto again = resolve_settings(parse_config_text(text));
    CHECK(to_config_text(again) == text);
    CHECK(again.experiment.gains.sigma == 0.1);
    CHECK(again.experiment.comm_radius == 1.3);
    // Every addressable key is written out.
    for (const std::string& key : known_keys()) {
        const std::string name = key.substr(key.find('.') + 1);
        CHECK_MESSAGE(text.find("\n" + name + " =") != std::string::npos, key);
    }
}

TEST_CASE("git blob hash") {
    CHECK(git_blob_hash("") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
    CHECK(git_blob_hash("hello\n") == "ce013625030ba8dba906f756967f9e9ca394464a");
}

TEST_CASE("metrics csv round trip") {
    MetricsRecord a;
    a.step = 0;
    a.lambda = 0.123456789012;
    a.area = 3.5;
    a.f_obj = a.lambda * a.area;
    a.theta = 0.25;
    a.mean_ptheta = 0.1;
    a.gains = {1, 0.5, 2};
    a.n_alive = 8;
    a.connected = true;
    MetricsRecord b = a;
    b.step = 1;
    b.theta.reset();
    b.connected = false;

    std::ostringstream out;
    write_metrics_csv(out, {a, b});
    const std::string text = out.str();
    CHECK(text.rfind(std::string(kMetricsHeader) + "\n", 0) == 0);
    CHECK(text.find("\n1,0.123456789,3.5,0.432098762,,0.1,1,0.5,2,8,0\n") != std::string::npos);

    const auto dir = scratch("csv");
    const auto path = (dir / "metrics.csv").string();
    write_metrics_csv(path, {a, b});
    const auto back = read_metrics_csv(path);
    REQUIRE(back.size() == 2);
    CHECK(back[0].theta == std::optional<double>(0.25));
    CHECK_FALSE(back[1].theta.has_value());
    CHECK(back[1].gains.zeta == 2.0);
    CHECK(back[0].connected);
    CHECK(back[1].lambda == doctest::Approx(a.lambda).epsilon(1e-8));
}

TEST_CASE("metrics csv schema violations") {
    const auto dir = scratch("schema");
    const auto bad_header = (dir / "a.csv").string();
    std::ofstream(bad_header) << "step,lambda,area\n0,1,2\n";
    CHECK_THROWS_AS(read_metrics_csv(bad_header), SchemaError);
    const auto short_row = (dir / "b.csv").string();
    std::ofstream(short_row) << kMetricsHeader << "\n0,1,2\n";
    CHECK_THROWS_AS(read_metrics_csv(short_row), SchemaError);
    const auto junk = (dir / "c.csv").string();
    std::ofstream(junk) << kMetricsHeader << "\n0,x,2,3,,0,1,1,1,8,1\n";
    CHECK_THROWS_AS(read_metrics_csv(junk), SchemaError);
    CHECK_THROWS_AS(read_metrics_csv((dir / "missing.csv").string()), SchemaError);
}

TEST_CASE("manifest round trip") {
    RunManifest m;
    m.command = "compare";
    m.config_path = "exp.ini";
    m.overrides = {"gains.sigma=1"};
    m.seed = 7;
    m.output_dir = "runs/x";
    m.resolved_config = "[gains]\nsigma = 1\n";
    m.config_hash = git_blob_hash(m.resolved_config);
    m.methods = {"grid", "random"};
    const auto path = (scratch("manifest") / "manifest.json").string();
    write_manifest(path, m);
    const auto back = read_manifest(path);
    CHECK(back.command == m.command);
    CHECK(back.overrides == m.overrides);
    CHECK(back.seed == 7);
    CHECK(back.resolved_config == m.resolved_config);
    CHECK(back.config_hash == m.config_hash);
    CHECK(back.methods == m.methods);
}

TEST_CASE("svg figure structure") {
    Figure fig;
    fig.title = "t & <u>";
    for (int p = 0; p < 3; ++p) {
        Panel panel;
        panel.title = "panel " + std::to_string(p);
        panel.lines.push_back({"first", {0, 1, 2}, {1, 2, 1}, palette(0)});
        panel.lines.push_back({"second", {0, 1, 2}, {0, 0, 0}, palette(1)});
        if (p == 0) panel.bands.push_back({"band", {0, 1, 2}, {0, 0, 0}, {1, 1, 1}, "#ccc"});
        fig.panels.push_back(panel);
    }
    const std::string svg = render_svg(fig);
    CHECK(svg.rfind("<svg xmlns=", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(count(svg, "class=\"panel\"") == 3);
    CHECK(count(svg, "class=\"legend-entry\"") == 3);
    CHECK(count(svg, "class=\"series\"") == 6);
    CHECK(svg.find("t &amp; &lt;u&gt;") != std::string::npos);
    CHECK(svg.find("nan") == std::string::npos);
}
