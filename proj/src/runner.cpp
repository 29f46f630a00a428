#include "vofrac/runner.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "vofrac/export.hpp"
#include "vofrac/solvers.hpp"

namespace vofrac {

namespace {

using ojson = nlohmann::ordered_json;

ojson number_or_null(double v) {
    return std::isfinite(v) ? ojson(v) : ojson(nullptr);
}

ojson order_json(const OrderFunction& order) {
    ojson j;
    j["kind"] = to_string(order.kind);
    switch (order.kind) {
        case OrderKind::Constant:
            j["value"] = order.value;
            break;
        case OrderKind::LinearRamp:
            j["start"] = order.value;
            j["end"] = order.end_value;
            j["t_start"] = order.ramp_t0;
            j["t_end"] = order.ramp_t1;
            break;
        case OrderKind::Sinusoidal:
            j["base"] = order.value;
            j["amplitude"] = order.amplitude;
            j["omega"] = order.omega;
            break;
    }
    j["clamp"] = {order.clamp_min, order.clamp_max};
    return j;
}

ojson scheme_json(const SchemeConfig& s) {
    return {{"name", to_string(s.scheme)},
            {"mode", to_string(s.mode)},
            {"cf_normalization", to_string(s.cf_normalization)},
            {"history_bootstrap", to_string(s.history_bootstrap)}};
}

std::string summary_for(const RunConfig& cfg, const SystemDefinition& system,
                        const RunOutcome& outcome, const std::optional<double>& lyapunov) {
    const Trajectory& traj = outcome.trajectory;
    ojson j;
    ojson sys;
    sys["id"] = system.id;
    sys["preset"] = cfg.preset ? ojson(*cfg.preset) : ojson(nullptr);
    if (cfg.preset) {
        sys["provenance"] = find_preset(catalog_entry(system.id), *cfg.preset).provenance;
    }
    ojson params = ojson::object();
    for (std::size_t i = 0; i < system.param_names.size(); ++i) {
        params[system.param_names[i]] = system.params[i];
    }
    sys["params"] = params;
    if (system.id == "langford") sys["langford_corrected"] = cfg.system_options.langford_corrected;
    j["system"] = sys;
    if (outcome.sweep_value) {
        j["sweep"] = {{"parameter", cfg.sweep->parameter}, {"value", *outcome.sweep_value}};
    }
    j["initial_condition"] = cfg.initial_condition;
    j["scheme"] = scheme_json(traj.scheme());
    j["order"] = order_json(traj.order());
    j["grid"] = {{"t0", traj.grid().t0()},
                 {"h", traj.grid().h()},
                 {"n_steps", traj.grid().n_steps()},
                 {"t_end", traj.grid().t_end()}};
    j["elapsed_seconds"] = traj.wall_time();
    j["diverged_at"] = traj.diverged_at() ? ojson(*traj.diverged_at()) : ojson(nullptr);
    j["stored_nodes"] = traj.size();
    j["final_state"] = std::vector<double>(traj.back().begin(), traj.back().end());

    ojson diag;
    diag["transient_fraction"] = outcome.stats.transient_fraction;
    diag["retained_nodes"] = outcome.stats.retained_nodes;
    ojson comps = ojson::array();
    for (const auto& c : outcome.stats.components) {
        comps.push_back({{"min", c.min},
                         {"max", c.max},
                         {"mean", c.mean},
                         {"variance", c.variance},
                         {"excess_kurtosis", number_or_null(c.excess_kurtosis)}});
    }
    diag["components"] = comps;
    diag["lyapunov_estimate"] = lyapunov ? number_or_null(*lyapunov) : ojson(nullptr);
    if (outcome.sync) {
        diag["sync"] = {{"threshold", cfg.diagnostics.sync->threshold},
                        {"tail_mean", outcome.sync->tail_mean},
                        {"max_error", outcome.sync->max_error},
                        {"synchronized", outcome.sync->synchronized}};
    }
    j["diagnostics"] = diag;
    return j.dump(2) + "\n";
}

std::string number_label(double v) {
    return format_double(v);
}

void write_outputs(const RunConfig& cfg, RunOutcome& outcome, const std::string& suffix) {
    if (cfg.output.csv) {
        const auto path = with_suffix(*cfg.output.csv, suffix);
        write_text(path, format_csv(outcome.trajectory));
        outcome.written.push_back(path);
    }
    if (cfg.output.svg) {
        const auto path = with_suffix(*cfg.output.svg, suffix);
        const std::string label = to_string(outcome.trajectory.scheme().scheme);
        write_text(path, format_svg({{&outcome.trajectory, label}}, cfg.output.portrait[0],
                                    cfg.output.portrait[1]));
        outcome.written.push_back(path);
    }
    if (cfg.output.summary) {
        const auto path = with_suffix(*cfg.output.summary, suffix);
        write_text(path, outcome.summary_json);
        outcome.written.push_back(path);
    }
}

std::string scheme_suffix(const SchemeConfig& s) {
    std::string name = to_string(s.scheme);
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    std::string suffix = "_" + name;
    if (s.scheme != Scheme::RK4 && s.mode == SchemeMode::PaperLiteral) suffix += "_literal";
    if (s.scheme == Scheme::CFC && s.cf_normalization == CfNormalization::Unit) suffix += "_unit";
    if (s.history_bootstrap == HistoryBootstrap::Zero) suffix += "_zeroboot";
    return suffix;
}

}  // namespace

std::filesystem::path with_suffix(const std::filesystem::path& path, const std::string& suffix) {
    if (suffix.empty()) return path;
    auto out = path;
    out.replace_filename(path.stem().string() + suffix + path.extension().string());
    return out;
}

RunOutcome simulate(const RunConfig& cfg, const SchemeConfig& scheme,
                    const std::optional<double>& sweep_value) {
    auto overrides = cfg.params;
    if (sweep_value) overrides[cfg.sweep->parameter] = *sweep_value;
    const SystemDefinition system = make_system(cfg.system_id, cfg.preset, overrides, cfg.system_options);
    const TimeGrid grid = build_grid(cfg.grid.t0, cfg.grid.t_end, cfg.grid.h, cfg.grid.max_steps);

    Trajectory traj = solve(system, cfg.order, grid, cfg.initial_condition, scheme);
    ChaosReport stats = trajectory_stats(traj, cfg.diagnostics.transient_fraction);

    std::optional<SyncReport> sync;
    if (cfg.diagnostics.sync) {
        const std::size_t half = traj.dimension() / 2;
        sync = sync_error(traj.components(0, half), traj.components(half, half),
                          cfg.diagnostics.sync->threshold);
    }
    std::optional<double> lyapunov;
    if (cfg.diagnostics.lyapunov) {
        const double h = cfg.diagnostics.lyapunov->h.value_or(cfg.grid.h);
        try {
            lyapunov = largest_lyapunov(system, cfg.initial_condition, cfg.diagnostics.lyapunov->horizon, h);
        } catch (const std::runtime_error&) {
            lyapunov = std::numeric_limits<double>::quiet_NaN();
        }
        stats.lyapunov_estimate = lyapunov;
    }

    RunOutcome outcome{std::move(traj), std::move(stats), std::move(sync), sweep_value, {}, {}};
    outcome.summary_json = summary_for(cfg, system, outcome, lyapunov);
    return outcome;
}

std::vector<RunOutcome> run(const RunConfig& cfg) {
    if (cfg.schemes.size() != 1) {
        throw ConfigError("scheme", "run takes exactly one scheme; use compare for several");
    }
    const SchemeConfig& scheme = cfg.schemes.front();
    std::vector<RunOutcome> outcomes;
    if (!cfg.sweep) {
        outcomes.push_back(simulate(cfg, scheme));
        write_outputs(cfg, outcomes.back(), "");
        return outcomes;
    }

    const auto launch = cfg.sweep->parallel ? std::launch::async : std::launch::deferred;
    std::vector<std::future<RunOutcome>> pending;
    for (double value : cfg.sweep->values) {
        pending.push_back(std::async(launch, [&cfg, &scheme, value] {
            RunOutcome outcome = simulate(cfg, scheme, value);
            write_outputs(cfg, outcome, "." + cfg.sweep->parameter + "=" + number_label(value));
            return outcome;
        }));
    }
    for (auto& f : pending) outcomes.push_back(f.get());
    return outcomes;
}

CompareOutcome compare(const RunConfig& cfg) {
    if (cfg.schemes.size() < 2) {
        throw ConfigError("schemes", "compare needs at least two schemes");
    }
    if (cfg.sweep) {
        throw ConfigError("sweep", "not supported by compare");
    }
    CompareOutcome result;
    std::set<std::string> used;
    for (std::size_t i = 0; i < cfg.schemes.size(); ++i) {
        RunOutcome outcome = simulate(cfg, cfg.schemes[i]);
        std::string suffix = scheme_suffix(cfg.schemes[i]);
        if (!used.insert(suffix).second) suffix += "_" + std::to_string(i);
        used.insert(suffix);
        write_outputs(cfg, outcome, suffix);
        result.runs.push_back(std::move(outcome));
    }

    std::ostringstream table;
    const std::size_t dim = result.runs.front().trajectory.dimension();
    table << "scheme,mode,cf_normalization,elapsed_seconds,diverged_at,stored_nodes,t_final";
    for (std::size_t i = 1; i <= dim; ++i) table << ",x" << i;
    table << '\n';
    for (const auto& r : result.runs) {
        const Trajectory& t = r.trajectory;
        table << to_string(t.scheme().scheme) << ',' << to_string(t.scheme().mode) << ','
              << to_string(t.scheme().cf_normalization) << ',' << format_double(t.wall_time()) << ','
              << (t.diverged_at() ? std::to_string(*t.diverged_at()) : std::string{}) << ','
              << t.size() << ',' << format_double(t.time(t.size() - 1));
        for (double v : t.back()) table << ',' << format_double(v);
        table << '\n';
    }
    result.table_csv = table.str();
    if (cfg.output.table) write_text(*cfg.output.table, result.table_csv);
    return result;
}

std::string list_systems_text() {
    std::ostringstream out;
    for (const auto& e : system_catalog()) {
        out << e.id << "  (dimension " << e.dimension << ")  " << e.description << '\n';
        out << "  parameters:\n";
        for (const auto& p : e.parameters) {
            out << "    " << p.name << " = " << format_double(p.default_value);
            if (!p.note.empty()) out << "  # " << p.note;
            out << '\n';
        }
        out << "  presets:\n";
        for (const auto& preset : e.presets) {
            out << "    " << preset.name << ":";
            for (const auto& [name, value] : preset.params) out << ' ' << name << '=' << format_double(value);
            if (preset.initial_condition) {
                out << "  x0=(";
                for (std::size_t i = 0; i < preset.initial_condition->size(); ++i) {
                    if (i) out << ',';
                    out << format_double((*preset.initial_condition)[i]);
                }
                out << ')';
            }
            out << "\n      provenance: " << preset.provenance << '\n';
        }
    }
    return out.str();
}

std::string list_systems_json() {
    ojson list = ojson::array();
    for (const auto& e : system_catalog()) {
        ojson entry;
        entry["id"] = e.id;
        entry["dimension"] = e.dimension;
        entry["description"] = e.description;
        ojson params = ojson::array();
        for (const auto& p : e.parameters) {
            params.push_back({{"name", p.name}, {"default", p.default_value}, {"note", p.note}});
        }
        entry["parameters"] = params;
        ojson presets = ojson::array();
        for (const auto& preset : e.presets) {
            ojson pj;
            pj["name"] = preset.name;
            pj["params"] = preset.params;
            pj["initial_condition"] = preset.initial_condition ? ojson(*preset.initial_condition) : ojson(nullptr);
            pj["provenance"] = preset.provenance;
            presets.push_back(pj);
        }
        entry["presets"] = presets;
        list.push_back(entry);
    }
    return list.dump(2) + "\n";
}

}  // namespace vofrac
