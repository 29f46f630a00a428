#pragma once

// Right-hand sides of the test systems and the catalog used by the CLI.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vofrac/core_model.hpp"

namespace vofrac {

using Vec3 = std::array<double, 3>;
using Vec6 = std::array<double, 6>;

struct FinancialParams {
    double L;  ///< saving amount
    double M;  ///< cost per investment
    double N;  ///< demand elasticity
};

struct LorenzParams {
    double sigma;
    double r;
    double b;
};

struct CoupledLorenzParams {
    double sigma;
    double r;
    double b;
    double k;  ///< diffusive coupling strength on the x components
};

/// Caption symbols: a=alpha, b=beta, Omega=omega, L=lambda, p=rho, E=epsilon.
struct LangfordParams {
    double a;
    double b;
    double Omega;
    double L;
    double p;
    double E;
    /// Use (z - b) y in the y equation instead of the printed (z - Omega) y.
    bool corrected = false;
};

struct RosslerParams {
    double a;
    double b;
    double c;
};

struct ShilnikovParams {
    double a;
    double b;
    double c;
    double d;
};

/// (z + (y - L) x, 1 - M y - x^2, -x - N z)
Vec3 financial_rhs(const Vec3& s, const FinancialParams& p);
Vec3 lorenz_rhs(const Vec3& s, const LorenzParams& p);
/// Two Lorenz copies; x1 += k (x2 - x1), x2 += k (x1 - x2).
Vec6 coupled_lorenz_rhs(const Vec6& s, const CoupledLorenzParams& p);
Vec3 langford_rhs(const Vec3& s, const LangfordParams& p);
Vec3 rossler_rhs(const Vec3& s, const RosslerParams& p);
/// (y, z, -a z - y + b x (1 - c x - d x^2))
Vec3 shilnikov_rhs(const Vec3& s, const ShilnikovParams& p);
double linear_probe_rhs(double x, double lambda);

struct Preset {
    std::string name;
    std::map<std::string, double> params;
    std::optional<StateVector> initial_condition;
    std::string provenance;
};

struct ParameterInfo {
    std::string name;
    double default_value;
    std::string note;
};

struct CatalogEntry {
    std::string id;
    std::size_t dimension;
    std::string description;
    std::vector<ParameterInfo> parameters;
    std::vector<Preset> presets;
};

/// Options that alter a system's equations rather than its parameter values.
struct SystemOptions {
    bool langford_corrected = false;
};

/// All shipped systems, in a fixed order.
const std::vector<CatalogEntry>& system_catalog();

/// Throws std::invalid_argument for an unknown id.
const CatalogEntry& catalog_entry(const std::string& id);

/// Throws std::invalid_argument for an unknown preset name.
const Preset& find_preset(const CatalogEntry& entry, const std::string& name);

/// Build a system from catalog defaults, then the preset (if any), then the
/// explicit overrides. Unknown parameter names are rejected.
SystemDefinition make_system(const std::string& id, const std::optional<std::string>& preset = {},
                             const std::map<std::string, double>& overrides = {},
                             const SystemOptions& options = {});

}  // namespace vofrac
