#pragma once

// Orchestration behind the `run`, `compare` and `list-systems` verbs.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vofrac/config.hpp"
#include "vofrac/diagnostics.hpp"

namespace vofrac {

struct RunOutcome {
    Trajectory trajectory;
    ChaosReport stats;
    std::optional<SyncReport> sync;
    std::optional<double> sweep_value;
    std::string summary_json;
    std::vector<std::filesystem::path> written;
};

/// Simulate one scheme of the configuration without writing anything.
RunOutcome simulate(const RunConfig& cfg, const SchemeConfig& scheme,
                    const std::optional<double>& sweep_value = {});

/// `run`: exactly one scheme; one outcome per sweep value (or one without a
/// sweep). Writes the configured CSV/SVG/summary files; sweep runs get a
/// `.<param>=<value>` suffix before the extension.
std::vector<RunOutcome> run(const RunConfig& cfg);

struct CompareOutcome {
    std::vector<RunOutcome> runs;
    std::string table_csv;  ///< one row per scheme: timing and endpoint state
};

/// `compare`: two or more schemes on the same system, order and grid. Each
/// scheme's CSV/SVG/summary gets a `_<scheme>` suffix; the table goes to
/// output.table when set. Throws ConfigError for fewer than two schemes.
CompareOutcome compare(const RunConfig& cfg);

/// Human-readable catalog listing.
std::string list_systems_text();

/// Catalog as JSON (ids, dimensions, parameters, presets with provenance).
std::string list_systems_json();

/// `base.ext` -> `base<suffix>.ext`
std::filesystem::path with_suffix(const std::filesystem::path& path, const std::string& suffix);

}  // namespace vofrac
