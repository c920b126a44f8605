#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace resinet::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;  ///< bad config, override or input schema

struct CommandOptions {
    std::string config_path;  ///< empty: built-in defaults
    std::optional<std::uint64_t> seed;
    std::string out;  ///< empty: a fresh directory under runs/
    std::vector<std::string> sets;
    std::vector<std::string> methods;  ///< compare only; overrides compare.methods
    std::size_t jobs = 1;
};

/// One experiment: manifest.json, metrics.csv, final_state.json, and
/// rounds.csv when the optimizer is on.
int cmd_run(const CommandOptions& options, std::ostream& log, std::ostream& err);

/// 18-run constant-gain sweep plus one optimized run per method:
/// constant/*/metrics.csv, optimized/<method>/metrics.csv, envelope.csv,
/// comparison.svg.
int cmd_compare(const CommandOptions& options, std::ostream& log, std::ostream& err);

/// Random search over the sweep.gp x sweep.op matrix: gp<G>_op<O>/metrics.csv,
/// sweep_summary.csv, sweep_fixed_gp.svg, sweep_fixed_op.svg.
int cmd_sweep(const CommandOptions& options, std::ostream& log, std::ostream& err);

/// Three stacked panels (f_obj, area, lambda), one line per input.
int cmd_plot(const std::vector<std::string>& inputs, const std::string& out, std::ostream& log,
             std::ostream& err);

}  // namespace resinet::app
