#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "resinet/app/commands.hpp"

int main(int argc, char** argv) {
    using namespace resinet::app;

    CLI::App app{"resinet: multi-robot connectivity simulator with online gain optimization"};
    app.require_subcommand(1);

    CommandOptions options;
    std::uint64_t seed = 0;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", options.config_path, "Config file (INI-style sections)");
        cmd->add_option("--seed", seed, "Experiment seed (overrides experiment.seed)");
        cmd->add_option("--out", options.out, "Output directory (default: a fresh dir under runs/)");
        cmd->add_option("--set", options.sets, "Override a config key: section.key=value")->take_all();
        cmd->add_option("--jobs", options.jobs, "Parallel runs")->check(CLI::PositiveNumber);
    };

    auto* run = app.add_subcommand("run", "Run one experiment");
    add_common(run);
    auto* compare = app.add_subcommand("compare", "Constant-gain sweep vs optimized runs");
    add_common(compare);
    compare->add_option("--methods", options.methods, "Search methods: grid, random, auglag")->delimiter(',');
    auto* sweep = app.add_subcommand("sweep", "Random search over the G_p x O_p matrix");
    add_common(sweep);

    auto* plot = app.add_subcommand("plot", "Plot one or more metrics.csv files");
    std::vector<std::string> inputs;
    std::string plot_out = "plot.svg";
    plot->add_option("inputs", inputs, "metrics.csv files")->required();
    plot->add_option("--out", plot_out, "Output SVG path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    for (CLI::App* cmd : {run, compare, sweep})
        if (cmd->parsed() && cmd->count("--seed") > 0) options.seed = seed;

    if (run->parsed()) return cmd_run(options, std::cout, std::cerr);
    if (compare->parsed()) return cmd_compare(options, std::cout, std::cerr);
    if (sweep->parsed()) return cmd_sweep(options, std::cout, std::cerr);
    return cmd_plot(inputs, plot_out, std::cout, std::cerr);
}
