#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "resinet/sim.hpp"

namespace resinet::app {

/// Config or override problem; the message names the key and line.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Everything a command needs: the experiment plus the compare/sweep matrices.
/// Library defaults with random search (G_p = 400, O_p = 50) switched on.
ExperimentConfig default_experiment();

struct Settings {
    ExperimentConfig experiment = default_experiment();
    std::vector<SearchMethod> compare_methods{SearchMethod::random};
    std::vector<std::size_t> sweep_budgets{400, 2200, 4000};
    std::vector<std::size_t> sweep_periods{1, 10, 50};
    /// Optimizer parameters used by compare/sweep, even under method = none.
    OptimizerConfig optimizer_defaults{};

    /// Experiment copy with the optimizer switched to `method`.
    [[nodiscard]] ExperimentConfig optimized(SearchMethod method) const;
};

/// A value as written, with the line it came from (0 for --set overrides).
struct RawValue {
    std::string text;
    int line = 0;
};

using RawConfig = std::map<std::string, RawValue>;  ///< keyed "section.key"

/// Parses the INI-style grammar:
///
///     # comment
///     [section]
///     key = value   # trailing comment
///
/// Duplicate keys and text outside a section are errors.
RawConfig parse_config_text(const std::string& text);

RawConfig load_config_file(const std::string& path);

/// Applies "section.key=value".
void apply_override(RawConfig& raw, const std::string& assignment);

/// Resolves defaults and validates. Keys derived from the communication
/// radius (graph.kappa, workspace.cover_radius, lennard_jones.delta) and
/// lennard_jones.force_cap (10 alpha) follow their base value unless set.
Settings resolve_settings(const RawConfig& raw);

/// Every addressable key, in canonical order.
const std::vector<std::string>& known_keys();

/// Full canonical config text; parsing it yields the same Settings.
std::string to_config_text(const Settings& settings);

}  // namespace resinet::app
