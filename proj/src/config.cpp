#include "vofrac/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace vofrac {

namespace {

using nlohmann::json;

std::string join(const std::string& parent, const std::string& key) {
    return parent.empty() ? key : parent + "." + key;
}

// Thin accessor over a JSON object that reports errors by dotted path.
class Node {
public:
    Node(const json& value, std::string path) : value_(value), path_(std::move(path)) {
        if (!value_.is_object()) throw ConfigError(path_.empty() ? "config" : path_, "expected an object");
    }

    void allow(std::initializer_list<const char*> keys) const {
        const std::set<std::string> allowed(keys.begin(), keys.end());
        for (const auto& [key, _] : value_.items()) {
            if (!allowed.count(key)) throw ConfigError(join(path_, key), "unknown key");
        }
    }

    [[nodiscard]] bool has(const std::string& key) const { return value_.contains(key); }

    [[nodiscard]] const json& at(const std::string& key) const {
        if (!has(key)) throw ConfigError(join(path_, key), "missing required key");
        return value_.at(key);
    }

    [[nodiscard]] Node child(const std::string& key) const { return {at(key), join(path_, key)}; }

    [[nodiscard]] double number(const std::string& key) const {
        const json& v = at(key);
        if (!v.is_number()) throw ConfigError(join(path_, key), "expected a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) throw ConfigError(join(path_, key), "must be finite");
        return d;
    }

    [[nodiscard]] double number_or(const std::string& key, double fallback) const {
        return has(key) ? number(key) : fallback;
    }

    [[nodiscard]] std::string string(const std::string& key) const {
        const json& v = at(key);
        if (!v.is_string()) throw ConfigError(join(path_, key), "expected a string");
        return v.get<std::string>();
    }

    [[nodiscard]] bool boolean_or(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        const json& v = at(key);
        if (!v.is_boolean()) throw ConfigError(join(path_, key), "expected true or false");
        return v.get<bool>();
    }

    [[nodiscard]] std::vector<double> numbers(const std::string& key) const {
        const json& v = at(key);
        if (!v.is_array()) throw ConfigError(join(path_, key), "expected an array of numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number() || !std::isfinite(v[i].get<double>())) {
                throw ConfigError(join(path_, key) + "[" + std::to_string(i) + "]",
                                  "expected a finite number");
            }
            out.push_back(v[i].get<double>());
        }
        return out;
    }

    [[nodiscard]] const std::string& path() const noexcept { return path_; }

private:
    const json& value_;
    std::string path_;
};

template <typename Fn>
auto rethrow_as(const std::string& field, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(field, e.what());
    }
}

SchemeConfig parse_scheme_block(const Node& node) {
    node.allow({"name", "mode", "cf_normalization", "history_bootstrap"});
    SchemeConfig cfg;
    cfg.scheme = rethrow_as(join(node.path(), "name"), [&] { return parse_scheme(node.string("name")); });
    if (node.has("mode")) {
        const std::string mode = node.string("mode");
        if (mode == "reference") cfg.mode = SchemeMode::Reference;
        else if (mode == "paper-literal") cfg.mode = SchemeMode::PaperLiteral;
        else throw ConfigError(join(node.path(), "mode"), "expected 'reference' or 'paper-literal'");
    }
    if (node.has("cf_normalization")) {
        const std::string norm = node.string("cf_normalization");
        if (norm == "paper") cfg.cf_normalization = CfNormalization::Paper;
        else if (norm == "unit") cfg.cf_normalization = CfNormalization::Unit;
        else throw ConfigError(join(node.path(), "cf_normalization"), "expected 'paper' or 'unit'");
    }
    if (node.has("history_bootstrap")) {
        const std::string boot = node.string("history_bootstrap");
        if (boot == "flat") cfg.history_bootstrap = HistoryBootstrap::Flat;
        else if (boot == "zero") cfg.history_bootstrap = HistoryBootstrap::Zero;
        else throw ConfigError(join(node.path(), "history_bootstrap"), "expected 'flat' or 'zero'");
    }
    return cfg;
}

OrderFunction parse_order(const Node& node, const GridSpec& grid) {
    const std::string kind = node.has("kind") ? node.string("kind") : "constant";
    OrderFunction order;
    if (kind == "constant") {
        node.allow({"kind", "value", "clamp"});
        order = OrderFunction::constant(node.number_or("value", 1.0));
    } else if (kind == "ramp") {
        node.allow({"kind", "start", "end", "t_start", "t_end", "clamp"});
        order = OrderFunction::ramp(node.number("start"), node.number("end"),
                                    node.number_or("t_start", grid.t0),
                                    node.number_or("t_end", grid.t_end));
    } else if (kind == "sinusoidal") {
        node.allow({"kind", "base", "amplitude", "omega", "clamp"});
        order = OrderFunction::sinusoidal(node.number("base"), node.number("amplitude"),
                                          node.number_or("omega", 1.0));
    } else {
        throw ConfigError(join(node.path(), "kind"), "expected 'constant', 'ramp' or 'sinusoidal'");
    }
    if (node.has("clamp")) {
        const auto clamp = node.numbers("clamp");
        if (clamp.size() != 2) throw ConfigError(join(node.path(), "clamp"), "expected [min, max]");
        order.clamp_min = clamp[0];
        order.clamp_max = clamp[1];
    }
    rethrow_as(node.path(), [&] {
        order.validate();
        return 0;
    });
    return order;
}

std::size_t component_index(const json& v, const std::string& field, std::size_t dimension) {
    if (!v.is_number_integer() || v.get<long long>() < 0 ||
        static_cast<std::size_t>(v.get<long long>()) >= dimension) {
        throw ConfigError(field, "component index must be an integer in [0, " +
                                     std::to_string(dimension) + ")");
    }
    return static_cast<std::size_t>(v.get<long long>());
}

}  // namespace

Scheme parse_scheme(const std::string& name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (upper == "LC") return Scheme::LC;
    if (upper == "CFC" || upper == "CF") return Scheme::CFC;
    if (upper == "ABC" || upper == "AB") return Scheme::ABC;
    if (upper == "RK4") return Scheme::RK4;
    throw std::invalid_argument("unknown scheme '" + name + "' (expected LC, CFC, ABC or RK4)");
}

RunConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("config", std::string("parse error: ") + e.what());
    }
    const Node root(doc, "");
    root.allow({"system", "initial_condition", "scheme", "schemes", "order", "grid", "output",
                "diagnostics", "sweep"});

    RunConfig cfg;

    const Node sys = root.child("system");
    sys.allow({"id", "preset", "params", "langford_corrected"});
    cfg.system_id = sys.string("id");
    const CatalogEntry& entry =
        rethrow_as("system.id", [&]() -> const CatalogEntry& { return catalog_entry(cfg.system_id); });
    if (sys.has("preset")) {
        cfg.preset = sys.string("preset");
        rethrow_as("system.preset", [&]() -> const Preset& { return find_preset(entry, *cfg.preset); });
    }
    if (sys.has("params")) {
        const Node params = sys.child("params");
        const json& raw = sys.at("params");
        for (const auto& [key, _] : raw.items()) {
            const bool known = std::any_of(entry.parameters.begin(), entry.parameters.end(),
                                           [&](const ParameterInfo& p) { return p.name == key; });
            if (!known) throw ConfigError("system.params." + key, "unknown parameter for " + entry.id);
            cfg.params[key] = params.number(key);
        }
    }
    cfg.system_options.langford_corrected = sys.boolean_or("langford_corrected", false);
    if (sys.has("langford_corrected") && entry.id != "langford") {
        throw ConfigError("system.langford_corrected", "only applies to the langford system");
    }

    if (root.has("initial_condition")) {
        cfg.initial_condition = root.numbers("initial_condition");
    } else if (cfg.preset && find_preset(entry, *cfg.preset).initial_condition) {
        cfg.initial_condition = *find_preset(entry, *cfg.preset).initial_condition;
    } else {
        throw ConfigError("initial_condition", "missing and not supplied by a preset");
    }
    if (cfg.initial_condition.size() != entry.dimension) {
        throw ConfigError("initial_condition", "expected " + std::to_string(entry.dimension) +
                                                   " components for " + entry.id);
    }

    if (root.has("scheme") && root.has("schemes")) {
        throw ConfigError("schemes", "give either 'scheme' or 'schemes', not both");
    }
    if (root.has("scheme")) {
        cfg.schemes.push_back(parse_scheme_block(root.child("scheme")));
    } else if (root.has("schemes")) {
        const json& list = root.at("schemes");
        if (!list.is_array()) throw ConfigError("schemes", "expected an array of scheme blocks");
        for (std::size_t i = 0; i < list.size(); ++i) {
            cfg.schemes.push_back(parse_scheme_block(Node(list[i], "schemes[" + std::to_string(i) + "]")));
        }
    } else {
        throw ConfigError("scheme", "missing required key");
    }

    const Node grid = root.child("grid");
    grid.allow({"t0", "t_end", "h", "max_steps"});
    cfg.grid.t0 = grid.number_or("t0", 0.0);
    cfg.grid.t_end = grid.number("t_end");
    cfg.grid.h = grid.number("h");
    if (grid.has("max_steps")) {
        const double cap = grid.number("max_steps");
        if (cap < 1.0 || cap != std::floor(cap)) throw ConfigError("grid.max_steps", "expected a positive integer");
        cfg.grid.max_steps = static_cast<std::size_t>(cap);
    }
    if (!(cfg.grid.h > 0.0)) throw ConfigError("grid.h", "step must be positive");
    if (!(cfg.grid.t_end > cfg.grid.t0)) throw ConfigError("grid.t_end", "must exceed grid.t0");
    rethrow_as("grid", [&] { return build_grid(cfg.grid.t0, cfg.grid.t_end, cfg.grid.h, cfg.grid.max_steps); });

    cfg.order = root.has("order") ? parse_order(root.child("order"), cfg.grid) : OrderFunction::constant(1.0);

    if (root.has("output")) {
        const Node out = root.child("output");
        out.allow({"csv", "svg", "summary", "table", "portrait"});
        if (out.has("csv")) cfg.output.csv = out.string("csv");
        if (out.has("svg")) cfg.output.svg = out.string("svg");
        if (out.has("summary")) cfg.output.summary = out.string("summary");
        if (out.has("table")) cfg.output.table = out.string("table");
        if (out.has("portrait")) {
            const json& pair = out.at("portrait");
            if (!pair.is_array() || pair.size() != 2) {
                throw ConfigError("output.portrait", "expected two component indices");
            }
            cfg.output.portrait = {component_index(pair[0], "output.portrait[0]", entry.dimension),
                                   component_index(pair[1], "output.portrait[1]", entry.dimension)};
        }
    }
    if (!root.has("output") || !Node(root.at("output"), "output").has("portrait")) {
        if (entry.dimension < 3) cfg.output.portrait = {0, 0};
    }

    if (root.has("diagnostics")) {
        const Node diag = root.child("diagnostics");
        diag.allow({"transient_fraction", "lyapunov", "sync"});
        cfg.diagnostics.transient_fraction = diag.number_or("transient_fraction", 0.1);
        if (!(cfg.diagnostics.transient_fraction >= 0.0 && cfg.diagnostics.transient_fraction < 1.0)) {
            throw ConfigError("diagnostics.transient_fraction", "must lie in [0, 1)");
        }
        if (diag.has("lyapunov")) {
            const Node ly = diag.child("lyapunov");
            ly.allow({"horizon", "h"});
            LyapunovSpec spec;
            spec.horizon = ly.number_or("horizon", spec.horizon);
            if (spec.horizon < 200.0) throw ConfigError("diagnostics.lyapunov.horizon", "must be at least 200");
            if (ly.has("h")) {
                spec.h = ly.number("h");
                if (!(*spec.h > 0.0)) throw ConfigError("diagnostics.lyapunov.h", "must be positive");
            }
            const bool integer_order = cfg.order.is_constant() && eval_order(cfg.order, 0.0) == 1.0;
            if (!integer_order) {
                throw ConfigError("diagnostics.lyapunov", "only available for constant order 1");
            }
            cfg.diagnostics.lyapunov = spec;
        }
        if (diag.has("sync")) {
            const Node sync = diag.child("sync");
            sync.allow({"threshold"});
            SyncSpec spec;
            spec.threshold = sync.number_or("threshold", spec.threshold);
            if (!(spec.threshold > 0.0)) throw ConfigError("diagnostics.sync.threshold", "must be positive");
            if (entry.dimension % 2 != 0) {
                throw ConfigError("diagnostics.sync", "needs a system with two equal halves");
            }
            cfg.diagnostics.sync = spec;
        }
    }

    if (root.has("sweep")) {
        const Node sweep = root.child("sweep");
        sweep.allow({"parameter", "values", "parallel"});
        SweepSpec spec;
        spec.parameter = sweep.string("parameter");
        const bool known = std::any_of(entry.parameters.begin(), entry.parameters.end(),
                                       [&](const ParameterInfo& p) { return p.name == spec.parameter; });
        if (!known) throw ConfigError("sweep.parameter", "unknown parameter for " + entry.id);
        spec.values = sweep.numbers("values");
        if (spec.values.empty()) throw ConfigError("sweep.values", "must not be empty");
        spec.parallel = sweep.boolean_or("parallel", true);
        cfg.sweep = spec;
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("file", "cannot read " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

}  // namespace vofrac
