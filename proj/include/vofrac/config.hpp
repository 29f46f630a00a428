#pragma once

// Run configuration: a strict JSON document (unknown keys are rejected).
// See README.md for the schema.

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vofrac/core_model.hpp"
#include "vofrac/systems.hpp"

namespace vofrac {

/// Configuration problem tied to a dotted field path such as "grid.h".
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

    [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

struct GridSpec {
    double t0 = 0.0;
    double t_end = 0.0;
    double h = 0.0;
    std::size_t max_steps = kDefaultMaxSteps;
};

struct OutputSpec {
    std::optional<std::filesystem::path> csv;
    std::optional<std::filesystem::path> svg;
    std::optional<std::filesystem::path> summary;
    /// Timing table written by `compare`.
    std::optional<std::filesystem::path> table;
    std::array<std::size_t, 2> portrait{0, 2};
};

struct LyapunovSpec {
    double horizon = 1000.0;
    std::optional<double> h;  ///< defaults to the grid step
};

struct SyncSpec {
    double threshold = 1e-3;
};

struct DiagnosticsSpec {
    double transient_fraction = 0.1;
    std::optional<LyapunovSpec> lyapunov;
    std::optional<SyncSpec> sync;  ///< compares the two halves of the state
};

struct SweepSpec {
    std::string parameter;
    std::vector<double> values;
    bool parallel = true;
};

struct RunConfig {
    std::string system_id;
    std::optional<std::string> preset;
    std::map<std::string, double> params;
    SystemOptions system_options;
    StateVector initial_condition;
    std::vector<SchemeConfig> schemes;  ///< exactly one for `run`, two or more for `compare`
    OrderFunction order;
    GridSpec grid;
    OutputSpec output;
    DiagnosticsSpec diagnostics;
    std::optional<SweepSpec> sweep;
};

/// Parse and validate against the catalog. Throws ConfigError.
RunConfig parse_config(const std::string& json_text);

/// Read and parse a config file. Throws ConfigError (field "file" when unreadable).
RunConfig load_config(const std::filesystem::path& path);

Scheme parse_scheme(const std::string& name);

}  // namespace vofrac
