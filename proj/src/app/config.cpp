#include "resinet/app/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace resinet::app {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string where(const std::string& key, const RawValue& v) {
    return v.line > 0 ? "line " + std::to_string(v.line) + ": " + key : "override " + key;
}

[[noreturn]] void bad_value(const std::string& key, const RawValue& v, const std::string& expected) {
    throw ConfigError(where(key, v) + ": expected " + expected + ", got '" + v.text + "'");
}

double to_double(const std::string& key, const RawValue& v, const std::string& text) {
    double out = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last || text.empty()) bad_value(key, v, "a number");
    return out;
}

std::uint64_t to_uint(const std::string& key, const RawValue& v, const std::string& text) {
    std::uint64_t out = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last || text.empty()) bad_value(key, v, "a non-negative integer");
    return out;
}

double as_double(const std::string& key, const RawValue& v) { return to_double(key, v, trim(v.text)); }
std::size_t as_size(const std::string& key, const RawValue& v) {
    return static_cast<std::size_t>(to_uint(key, v, trim(v.text)));
}

std::vector<std::size_t> as_size_list(const std::string& key, const RawValue& v) {
    std::vector<std::size_t> out;
    for (const std::string& item : split(v.text, ','))
        out.push_back(static_cast<std::size_t>(to_uint(key, v, item)));
    if (out.empty()) bad_value(key, v, "a comma-separated list");
    return out;
}

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

template <class T>
std::string join(const std::vector<T>& items, const std::string& sep,
                 const std::function<std::string(const T&)>& fmt) {
    std::string out;
    for (std::size_t k = 0; k < items.size(); ++k) {
        if (k > 0) out += sep;
        out += fmt(items[k]);
    }
    return out;
}

struct KeySpec {
    std::string name;
    std::function<void(Settings&, const std::string&, const RawValue&)> apply;
    std::function<std::string(const Settings&)> show;
};

#define DOUBLE_KEY(NAME, FIELD)                                                                   \
    KeySpec {                                                                                     \
        NAME, [](Settings& s, const std::string& k, const RawValue& v) { s.FIELD = as_double(k, v); }, \
            [](const Settings& s) { return fmt_double(s.FIELD); }                                 \
    }
#define SIZE_KEY(NAME, FIELD)                                                                     \
    KeySpec {                                                                                     \
        NAME, [](Settings& s, const std::string& k, const RawValue& v) { s.FIELD = as_size(k, v); }, \
            [](const Settings& s) { return std::to_string(s.FIELD); }                             \
    }

/// Applied in this order; derived defaults are reset by their base key.
const std::vector<KeySpec>& key_table() {
    static const std::vector<KeySpec> table = {
        KeySpec{"graph.comm_radius",
                [](Settings& s, const std::string& k, const RawValue& v) {
                    const double r = as_double(k, v);
                    if (!(r > 0.0)) bad_value(k, v, "a positive radius");
                    ExperimentConfig fresh = ExperimentConfig::with_defaults(r);
                    s.experiment.comm_radius = r;
                    s.experiment.weights = fresh.weights;
                    s.experiment.workspace.cover_radius = fresh.workspace.cover_radius;
                    s.experiment.controller.lennard_jones.delta = fresh.controller.lennard_jones.delta;
                },
                [](const Settings& s) { return fmt_double(s.experiment.comm_radius); }},
        DOUBLE_KEY("graph.kappa", experiment.weights.kappa),

        SIZE_KEY("experiment.n_robots", experiment.n_robots),
        SIZE_KEY("experiment.steps", experiment.steps),
        DOUBLE_KEY("experiment.dt", experiment.dt),
        KeySpec{"experiment.seed",
                [](Settings& s, const std::string& k, const RawValue& v) {
                    s.experiment.seed = to_uint(k, v, trim(v.text));
                },
                [](const Settings& s) { return std::to_string(s.experiment.seed); }},

        KeySpec{"placement.mode",
                [](Settings& s, const std::string& k, const RawValue& v) {
                    const std::string mode = trim(v.text);
                    if (mode == "random") s.experiment.placement.kind = PlacementKind::random_connected;
                    else if (mode == "explicit") s.experiment.placement.kind = PlacementKind::explicit_list;
                    else bad_value(k, v, "'random' or 'explicit'");
                },
                [](const Settings& s) {
                    return std::string(s.experiment.placement.kind == PlacementKind::explicit_list ? "explicit"
                                                                                                  : "random");
                }},
        DOUBLE_KEY("placement.spawn_side", experiment.placement.spawn_side),
        SIZE_KEY("placement.max_attempts", experiment.placement.max_attempts),
        KeySpec{"placement.positions",
                [](Settings& s, const std::string& k, const RawValue& v) {
                    s.experiment.placement.positions.clear();
                    if (trim(v.text).empty()) return;
                    for (const std::string& pair : split(v.text, ';')) {
                        const auto xy = split(pair, ',');
                        if (xy.size() != 2) bad_value(k, v, "'x,y; x,y; ...'");
                        s.experiment.placement.positions.push_back({to_double(k, v, xy[0]), to_double(k, v, xy[1])});
                    }
                },
                [](const Settings& s) {
                    return join<Vec2>(s.experiment.placement.positions, "; ", [](const Vec2& p) {
                        return fmt_double(p.x) + "," + fmt_double(p.y);
                    });
                }},

        KeySpec{"failures.events",
                [](Settings& s, const std::string& k, const RawValue& v) {
                    s.experiment.failures.clear();
                    if (trim(v.text).empty()) return;
                    for (const std::string& item : split(v.text, ';')) {
                        const auto parts = split(item, ':');
                        if (parts.size() != 2) bad_value(k, v, "'step:robot' or 'step:top-bc' items");
                        FailureEvent f;
                        f.step = static_cast<std::size_t>(to_uint(k, v, parts[0]));
                        if (parts[1] != "top-bc") f.robot = static_cast<RobotId>(to_uint(k, v, parts[1]));
                        s.experiment.failures.push_back(f);
                    }
                },
                [](const Settings& s) {
                    return join<FailureEvent>(s.experiment.failures, "; ", [](const FailureEvent& f) {
                        return std::to_string(f.step) + ":" + (f.robot ? std::to_string(*f.robot) : "top-bc");
                    });
                }},

        DOUBLE_KEY("workspace.xmin", experiment.workspace.bounds.xmin),
        DOUBLE_KEY("workspace.ymin", experiment.workspace.bounds.ymin),
        DOUBLE_KEY("workspace.xmax", experiment.workspace.bounds.xmax),
        DOUBLE_KEY("workspace.ymax", experiment.workspace.bounds.ymax),
        DOUBLE_KEY("workspace.cover_radius", experiment.workspace.cover_radius),
        DOUBLE_KEY("workspace.resolution", experiment.workspace.resolution),

        DOUBLE_KEY("gains.sigma", experiment.gains.sigma),
        DOUBLE_KEY("gains.psi", experiment.gains.psi),
        DOUBLE_KEY("gains.zeta", experiment.gains.zeta),

        DOUBLE_KEY("connectivity.epsilon", experiment.controller.connectivity.epsilon),
        DOUBLE_KEY("connectivity.saturation", experiment.controller.connectivity.saturation),
        DOUBLE_KEY("connectivity.clamp_margin", experiment.controller.connectivity.clamp_margin),

        KeySpec{"resilience.alpha",
                [](Settings& s, const std::string& k, const RawValue& v) {
                    s.experiment.controller.resilience.alpha = as_double(k, v);
                    s.experiment.controller.lennard_jones.force_cap = 10.0 * s.experiment.controller.resilience.alpha;
                },
                [](const Settings& s) { return fmt_double(s.experiment.controller.resilience.alpha); }},
        SIZE_KEY("resilience.beta", experiment.controller.resilience.beta),

        DOUBLE_KEY("lennard_jones.iota", experiment.controller.lennard_jones.iota),
        DOUBLE_KEY("lennard_jones.delta", experiment.controller.lennard_jones.delta),
        DOUBLE_KEY("lennard_jones.a", experiment.controller.lennard_jones.a),
        DOUBLE_KEY("lennard_jones.b", experiment.controller.lennard_jones.b),
        DOUBLE_KEY("lennard_jones.force_cap", experiment.controller.lennard_jones.force_cap),

        DOUBLE_KEY("motion.v_max", experiment.controller.v_max),

        KeySpec{"optimizer.method",
                [](Settings& s, const std::string& k, const RawValue& v) {
                    const std::string name = trim(v.text);
                    if (name == "none") {
                        s.experiment.optimizer.reset();
                        return;
                    }
                    if (!s.experiment.optimizer) s.experiment.optimizer = OptimizerConfig{};
                    try {
                        s.experiment.optimizer->method = parse_search_method(name);
                    } catch (const InputError&) {
                        bad_value(k, v, "none, grid, random or auglag");
                    }
                },
                [](const Settings& s) {
                    return s.experiment.optimizer ? std::string(to_string(s.experiment.optimizer->method))
                                                  : std::string("none");
                }},
    };
    return table;
}

/// Optimizer parameters live outside ExperimentConfig::optimizer so they can
/// be set while the method is "none" (compare/sweep still use them).
struct OptimizerKey {
    std::string name;
    std::function<void(OptimizerConfig&, const std::string&, const RawValue&)> apply;
    std::function<std::string(const OptimizerConfig&)> show;
};

#define OPT_DOUBLE(NAME, FIELD)                                                                   \
    OptimizerKey {                                                                                \
        NAME, [](OptimizerConfig& o, const std::string& k, const RawValue& v) { o.FIELD = as_double(k, v); }, \
            [](const OptimizerConfig& o) { return fmt_double(o.FIELD); }                          \
    }
#define OPT_SIZE(NAME, FIELD)                                                                     \
    OptimizerKey {                                                                                \
        NAME, [](OptimizerConfig& o, const std::string& k, const RawValue& v) { o.FIELD = as_size(k, v); }, \
            [](const OptimizerConfig& o) { return std::to_string(o.FIELD); }                      \
    }
#define OPT_INT(NAME, FIELD)                                                                      \
    OptimizerKey {                                                                                \
        NAME, [](OptimizerConfig& o, const std::string& k, const RawValue& v) {                   \
            o.FIELD = static_cast<int>(as_size(k, v)); },                                         \
            [](const OptimizerConfig& o) { return std::to_string(o.FIELD); }                      \
    }

const std::vector<OptimizerKey>& optimizer_table() {
    static const std::vector<OptimizerKey> table = {
        OPT_SIZE("optimizer.gp", budget),
        OPT_SIZE("optimizer.op", period),
        OPT_DOUBLE("optimizer.g_max", g_max),
        OPT_DOUBLE("auglag.mu0", auglag.mu0),
        OPT_DOUBLE("auglag.mu_growth", auglag.mu_growth),
        OPT_INT("auglag.max_outer", auglag.max_outer),
        OPT_INT("auglag.max_inner", auglag.max_inner),
        OPT_DOUBLE("auglag.armijo_c", auglag.armijo_c),
        OPT_DOUBLE("auglag.fd_step_fraction", auglag.fd_step_fraction),
        OPT_DOUBLE("auglag.gradient_tolerance", auglag.gradient_tolerance),
        OPT_INT("auglag.max_halvings", auglag.max_halvings),
    };
    return table;
}

const std::vector<std::string> kListKeys = {"compare.methods", "sweep.gp", "sweep.op"};

}  // namespace

ExperimentConfig default_experiment() {
    ExperimentConfig c = ExperimentConfig::with_defaults();
    c.optimizer = OptimizerConfig{};
    return c;
}

ExperimentConfig Settings::optimized(SearchMethod method) const {
    ExperimentConfig c = experiment;
    c.optimizer = optimizer_defaults;
    c.optimizer->method = method;
    return c;
}

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> out;
        for (const auto& k : key_table()) out.push_back(k.name);
        for (const auto& k : optimizer_table()) out.push_back(k.name);
        for (const auto& k : kListKeys) out.push_back(k);
        return out;
    }();
    return keys;
}

RawConfig parse_config_text(const std::string& text) {
    RawConfig raw;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string content = trim(line);
        if (content.empty()) continue;
        if (content.front() == '[') {
            if (content.back() != ']' || content.size() < 3)
                throw ConfigError("line " + std::to_string(lineno) + ": malformed section header '" + content + "'");
            section = trim(std::string_view(content).substr(1, content.size() - 2));
            continue;
        }
        const auto eq = content.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value', got '" + content + "'");
        if (section.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": key outside of any [section]");
        const std::string key = section + "." + trim(std::string_view(content).substr(0, eq));
        if (raw.contains(key))
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key " + key);
        raw[key] = {trim(std::string_view(content).substr(eq + 1)), lineno};
    }
    return raw;
}

RawConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

void apply_override(RawConfig& raw, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError("override '" + assignment + "': expected section.key=value");
    const std::string key = trim(std::string_view(assignment).substr(0, eq));
    if (key.find('.') == std::string::npos)
        throw ConfigError("override '" + assignment + "': key must be section.key");
    raw[key] = {trim(std::string_view(assignment).substr(eq + 1)), 0};
}

Settings resolve_settings(const RawConfig& raw) {
    const auto& keys = known_keys();
    for (const auto& [key, value] : raw)
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw ConfigError(where(key, value) + ": unknown key '" + key + "'");

    Settings s;
    for (const KeySpec& spec : key_table())
        if (const auto it = raw.find(spec.name); it != raw.end()) spec.apply(s, spec.name, it->second);

    OptimizerConfig opt = s.experiment.optimizer.value_or(OptimizerConfig{});
    for (const OptimizerKey& spec : optimizer_table())
        if (const auto it = raw.find(spec.name); it != raw.end()) spec.apply(opt, spec.name, it->second);
    if (s.experiment.optimizer) {
        opt.method = s.experiment.optimizer->method;
        s.experiment.optimizer = opt;
    }
    // Kept for compare/sweep even when the run itself uses fixed gains.
    if (const auto it = raw.find("compare.methods"); it != raw.end()) {
        s.compare_methods.clear();
        for (const std::string& name : split(it->second.text, ',')) {
            try {
                s.compare_methods.push_back(parse_search_method(name));
            } catch (const InputError&) {
                bad_value("compare.methods", it->second, "a list of grid, random, auglag");
            }
        }
    }
    if (const auto it = raw.find("sweep.gp"); it != raw.end()) s.sweep_budgets = as_size_list("sweep.gp", it->second);
    if (const auto it = raw.find("sweep.op"); it != raw.end()) s.sweep_periods = as_size_list("sweep.op", it->second);

    try {
        s.experiment.validate();
        OptimizerConfig check = opt;
        check.method = SearchMethod::random;
        check.validate();
    } catch (const InputError& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }
    s.optimizer_defaults = opt;
    return s;
}

std::string to_config_text(const Settings& s) {
    std::ostringstream out;
    std::string current_section;
    auto emit = [&](const std::string& key, const std::string& value) {
        const std::string section = key.substr(0, key.find('.'));
        if (section != current_section) {
            if (!current_section.empty()) out << '\n';
            out << '[' << section << "]\n";
            current_section = section;
        }
        out << key.substr(key.find('.') + 1) << " = " << value << '\n';
    };
    for (const KeySpec& spec : key_table()) emit(spec.name, spec.show(s));
    for (const OptimizerKey& spec : optimizer_table()) emit(spec.name, spec.show(s.optimizer_defaults));
    emit("compare.methods", join<SearchMethod>(s.compare_methods, ",", [](const SearchMethod& m) {
             return std::string(to_string(m));
         }));
    emit("sweep.gp", join<std::size_t>(s.sweep_budgets, ",", [](const std::size_t& x) { return std::to_string(x); }));
    emit("sweep.op", join<std::size_t>(s.sweep_periods, ",", [](const std::size_t& x) { return std::to_string(x); }));
    return out.str();
}

}  // namespace resinet::app
