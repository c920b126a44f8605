#include "resinet/app/commands.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

#include "resinet/app/config.hpp"
#include "resinet/app/csv.hpp"
#include "resinet/app/manifest.hpp"
#include "resinet/app/svg.hpp"
#include "resinet/parallel.hpp"

namespace resinet::app {

namespace fs = std::filesystem;

namespace {

struct Prepared {
    Settings settings;
    RunManifest manifest;
    fs::path out_dir;
};

fs::path unique_default_dir(const std::string& command, const std::string& hash, std::uint64_t seed) {
    const fs::path base = fs::path("runs") / (command + "-" + hash.substr(0, 12) + "-s" + std::to_string(seed));
    fs::path candidate = base;
    for (int k = 2; fs::exists(candidate); ++k) candidate = base.string() + "-" + std::to_string(k);
    return candidate;
}

// A manifest.json stands in for the config it recorded, so any output
// directory can be regenerated from its manifest alone.
RawConfig load_raw(const std::string& path) {
    if (path.empty()) return {};
    if (fs::path(path).extension() == ".json") {
        RunManifest m;
        try {
            m = read_manifest(path);
        } catch (const std::exception& e) {
            throw ConfigError(path + ": not a readable manifest (" + e.what() + ")");
        }
        return parse_config_text(m.resolved_config);
    }
    return load_config_file(path);
}

Prepared prepare(const std::string& command, const CommandOptions& options) {
    RawConfig raw = load_raw(options.config_path);
    for (const std::string& s : options.sets) apply_override(raw, s);
    if (options.seed) raw["experiment.seed"] = {std::to_string(*options.seed), 0};
    if (!options.methods.empty()) {
        std::string joined;
        for (const auto& m : options.methods) joined += (joined.empty() ? "" : ",") + m;
        raw["compare.methods"] = {joined, 0};
    }

    Prepared p;
    p.settings = resolve_settings(raw);
    RunManifest& m = p.manifest;
    m.command = command;
    m.config_path = options.config_path;
    m.overrides = options.sets;
    m.seed = p.settings.experiment.seed;
    m.resolved_config = to_config_text(p.settings);
    m.config_hash = git_blob_hash(m.resolved_config);
    if (command == "compare")
        for (SearchMethod method : p.settings.compare_methods) m.methods.emplace_back(to_string(method));
    p.out_dir = options.out.empty() ? unique_default_dir(command, m.config_hash, m.seed) : fs::path(options.out);
    fs::create_directories(p.out_dir);
    m.output_dir = p.out_dir.string();
    write_manifest((p.out_dir / "manifest.json").string(), m);
    return p;
}

void write_run(const fs::path& dir, const ExperimentResult& result) {
    fs::create_directories(dir);
    write_metrics_csv((dir / "metrics.csv").string(), result.metrics);
    write_final_state((dir / "final_state.json").string(), result);
    if (!result.rounds.empty()) write_rounds_csv((dir / "rounds.csv").string(), result.rounds);
}

std::vector<double> steps_of(const std::vector<MetricsRecord>& m) {
    std::vector<double> out;
    for (const auto& r : m) out.push_back(static_cast<double>(r.step));
    return out;
}

std::vector<double> f_of(const std::vector<MetricsRecord>& m) {
    std::vector<double> out;
    for (const auto& r : m) out.push_back(r.f_obj);
    return out;
}

std::string gain_dir_name(const GainTriple& g) {
    return "sigma" + format_float(g.sigma) + "_psi" + format_float(g.psi) + "_zeta" + format_float(g.zeta);
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const SchemaError& e) {
        err << "schema error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const SimulationError& e) {
        err << "simulation aborted: " << e.what() << '\n';
        return kExitFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace

int cmd_run(const CommandOptions& options, std::ostream& log, std::ostream& err) {
    return guarded(err, [&] {
        const Prepared p = prepare("run", options);
        const ExperimentResult result = run_experiment(p.settings.experiment);
        write_run(p.out_dir, result);
        const MetricsRecord& last = result.metrics.back();
        log << "run: " << result.metrics.size() << " records, final f_obj " << format_float(last.f_obj)
            << " (lambda " << format_float(last.lambda) << ", area " << format_float(last.area) << ") -> "
            << p.out_dir.string() << '\n';
        return kExitOk;
    });
}

int cmd_compare(const CommandOptions& options, std::ostream& log, std::ostream& err) {
    return guarded(err, [&] {
        const Prepared p = prepare("compare", options);
        const Settings& s = p.settings;
        const SweepResult sweep = run_constant_gain_sweep(s.experiment, options.jobs);
        for (std::size_t k = 0; k < sweep.runs.size(); ++k)
            write_run(p.out_dir / "constant" / gain_dir_name(sweep.gains[k]), sweep.runs[k]);
        write_envelope_csv((p.out_dir / "envelope.csv").string(), sweep.envelope);

        std::vector<ExperimentResult> optimized(s.compare_methods.size());
        parallel_for(optimized.size(), options.jobs,
                     [&](std::size_t k) { optimized[k] = run_experiment(s.optimized(s.compare_methods[k])); });

        Figure fig;
        fig.title = "Objective: optimized gains vs constant gains";
        const std::vector<double> xs = steps_of(sweep.runs.front().metrics);
        std::vector<double> mean;
        std::vector<double> lo;
        std::vector<double> hi;
        for (const EnvelopePoint& e : sweep.envelope) {
            mean.push_back(e.mean);
            lo.push_back(e.mean - e.stddev);
            hi.push_back(e.mean + e.stddev);
        }
        for (std::size_t k = 0; k < optimized.size(); ++k) {
            const std::string name(to_string(s.compare_methods[k]));
            write_run(p.out_dir / "optimized" / name, optimized[k]);
            Panel panel;
            panel.title = name;
            panel.x_label = "step";
            panel.y_label = "f_obj";
            panel.bands.push_back({"constant gains (mean ± sd)", xs, lo, hi, "#d62728"});
            panel.lines.push_back({"constant gains (mean ± sd)", xs, mean, "#d62728"});
            panel.lines.push_back({"optimized", steps_of(optimized[k].metrics), f_of(optimized[k].metrics), "#2ca02c"});
            fig.panels.push_back(std::move(panel));
            log << "compare: " << name << " final f_obj " << format_float(optimized[k].metrics.back().f_obj)
                << " vs constant mean " << format_float(sweep.envelope.back().mean) << '\n';
        }
        write_svg((p.out_dir / "comparison.svg").string(), fig);
        log << "compare: " << sweep.runs.size() + optimized.size() << " runs -> " << p.out_dir.string() << '\n';
        return kExitOk;
    });
}

int cmd_sweep(const CommandOptions& options, std::ostream& log, std::ostream& err) {
    return guarded(err, [&] {
        const Prepared p = prepare("sweep", options);
        const Settings& s = p.settings;
        struct Cell {
            std::size_t budget;
            std::size_t period;
            ExperimentResult result;
        };
        std::vector<Cell> cells;
        for (std::size_t gp : s.sweep_budgets)
            for (std::size_t op : s.sweep_periods) cells.push_back({gp, op, {}});
        parallel_for(cells.size(), options.jobs, [&](std::size_t k) {
            ExperimentConfig c = s.optimized(SearchMethod::random);
            c.optimizer->budget = cells[k].budget;
            c.optimizer->period = cells[k].period;
            cells[k].result = run_experiment(c);
        });

        std::ofstream summary(p.out_dir / "sweep_summary.csv", std::ios::binary);
        summary << "gp,op,final_f_obj,final_lambda,final_area\n";
        for (const Cell& c : cells) {
            write_run(p.out_dir / ("gp" + std::to_string(c.budget) + "_op" + std::to_string(c.period)), c.result);
            const MetricsRecord& last = c.result.metrics.back();
            summary << c.budget << ',' << c.period << ',' << format_float(last.f_obj) << ','
                    << format_float(last.lambda) << ',' << format_float(last.area) << '\n';
        }

        auto grouped = [&](bool fixed_budget) {
            Figure fig;
            fig.title = fixed_budget ? "Random search: constant generated points" : "Random search: constant optimization period";
            fig.columns = 1;
            const auto& outer = fixed_budget ? s.sweep_budgets : s.sweep_periods;
            for (std::size_t value : outer) {
                Panel panel;
                panel.title = (fixed_budget ? "G_p = " : "O_p = ") + std::to_string(value);
                panel.x_label = "step";
                panel.y_label = "f_obj";
                std::size_t color = 0;
                for (const Cell& c : cells) {
                    if ((fixed_budget ? c.budget : c.period) != value) continue;
                    const std::string label = fixed_budget ? "O_p = " + std::to_string(c.period)
                                                           : "G_p = " + std::to_string(c.budget);
                    panel.lines.push_back({label, steps_of(c.result.metrics), f_of(c.result.metrics), palette(color++)});
                }
                fig.panels.push_back(std::move(panel));
            }
            return fig;
        };
        write_svg((p.out_dir / "sweep_fixed_gp.svg").string(), grouped(true));
        write_svg((p.out_dir / "sweep_fixed_op.svg").string(), grouped(false));
        log << "sweep: " << cells.size() << " runs -> " << p.out_dir.string() << '\n';
        return kExitOk;
    });
}

int cmd_plot(const std::vector<std::string>& inputs, const std::string& out, std::ostream& log, std::ostream& err) {
    return guarded(err, [&] {
        if (inputs.empty()) throw SchemaError("plot: no input files");
        Figure fig;
        fig.title = "Objective, coverage and connectivity";
        Panel f_panel{"objective f_obj", "step", "f_obj", {}, {}};
        Panel a_panel{"covered area A", "step", "area (m^2)", {}, {}};
        Panel l_panel{"algebraic connectivity lambda", "step", "lambda", {}, {}};
        for (std::size_t k = 0; k < inputs.size(); ++k) {
            const auto records = read_metrics_csv(inputs[k]);
            const auto xs = steps_of(records);
            std::vector<double> area;
            std::vector<double> lambda;
            for (const auto& r : records) {
                area.push_back(r.area);
                lambda.push_back(r.lambda);
            }
            const std::string& color = palette(k);
            f_panel.lines.push_back({inputs[k], xs, f_of(records), color});
            a_panel.lines.push_back({inputs[k], xs, area, color});
            l_panel.lines.push_back({inputs[k], xs, lambda, color});
        }
        fig.panels = {f_panel, a_panel, l_panel};
        write_svg(out, fig);
        log << "plot: " << inputs.size() << " input(s) -> " << out << '\n';
        return kExitOk;
    });
}

}  // namespace resinet::app
