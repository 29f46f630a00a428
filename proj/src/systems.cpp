#include "vofrac/systems.hpp"

#include <algorithm>
#include <stdexcept>

namespace vofrac {

Vec3 financial_rhs(const Vec3& s, const FinancialParams& p) {
    const auto [x, y, z] = s;
    return {z + (y - p.L) * x, 1.0 - p.M * y - x * x, -x - p.N * z};
}

Vec3 lorenz_rhs(const Vec3& s, const LorenzParams& p) {
    const auto [x, y, z] = s;
    return {-p.sigma * x + p.sigma * y, p.r * x - y - x * z, x * y - p.b * z};
}

Vec6 coupled_lorenz_rhs(const Vec6& s, const CoupledLorenzParams& p) {
    const LorenzParams lp{p.sigma, p.r, p.b};
    const Vec3 d1 = lorenz_rhs({s[0], s[1], s[2]}, lp);
    const Vec3 d2 = lorenz_rhs({s[3], s[4], s[5]}, lp);
    return {d1[0] + p.k * (s[3] - s[0]), d1[1], d1[2],
            d2[0] + p.k * (s[0] - s[3]), d2[1], d2[2]};
}

Vec3 langford_rhs(const Vec3& s, const LangfordParams& p) {
    const auto [x, y, z] = s;
    const double y_damping = p.corrected ? (z - p.b) : (z - p.Omega);
    return {(z - p.b) * x - p.Omega * y,
            p.Omega * x + y_damping * y,
            p.L + p.a * z - z * z * z / 3.0 - (x * x + y * y) * (1.0 + p.p * z) + p.E * z * x * x * x};
}

Vec3 rossler_rhs(const Vec3& s, const RosslerParams& p) {
    const auto [x, y, z] = s;
    return {-y - z, x + p.a * y, p.b + x * z - p.c * z};
}

Vec3 shilnikov_rhs(const Vec3& s, const ShilnikovParams& p) {
    const auto [x, y, z] = s;
    return {y, z, -p.a * z - y + p.b * x * (1.0 - p.c * x - p.d * x * x)};
}

double linear_probe_rhs(double x, double lambda) {
    return lambda * x;
}

namespace {

const std::string kDuplicateCaption =
    "; the same caption text is repeated verbatim for figures 1, 4 and 5, so it does not "
    "independently confirm any of them";

std::vector<CatalogEntry> build_catalog() {
    std::vector<CatalogEntry> c;

    c.push_back({"financial", 3, "nonlinear financial model (interest rate, investment demand, price index)",
                 {{"L", 1.0, "saving amount"}, {"M", 0.1, "cost per investment"},
                  {"N", 1.0, "elasticity of demand"}},
                 {{"fig1", {{"L", 1.0}, {"M", 0.1}, {"N", 1.0}}, StateVector{2.0, -1.0, 1.0},
                   "figure 1 caption a=1, b=0.1, c=1 mapped positionally to L, M, N; x0=(2,-1,1), "
                   "h=0.01, t in [0,300]" + kDuplicateCaption},
                  {"chaotic", {{"L", 3.0}, {"M", 0.1}, {"N", 1.0}}, StateVector{2.0, -1.0, 1.0},
                   "widely studied chaotic regime of this model; chaos is checked in-repo by the "
                   "Lyapunov diagnostic, not taken from the published figures"}}});

    c.push_back({"lorenz", 3, "Lorenz system",
                 {{"sigma", 10.0, ""}, {"r", 28.0, ""}, {"b", 8.0 / 3.0, ""}},
                 {{"fig2", {{"sigma", 10.0}, {"r", 30.0}, {"b", 8.0 / 3.0}}, StateVector{0.1, 0.1, 0.1},
                   "figure 2(a,b) caption: sigma=10, b=8/3, r=30, x0=(0.1,0.1,0.1), h=0.01, t in [0,500]"},
                  {"fig2c", {{"sigma", 0.1}, {"r", 30.0}, {"b", 8.0 / 3.0}}, StateVector{0.1, 0.1, 0.1},
                   "figure 2(c) caption: sigma=0.1, b=8/3, r=30, x0=(0.1,0.1,0.1), h=0.01, t in [0,500]"},
                  {"classical", {{"sigma", 10.0}, {"r", 28.0}, {"b", 8.0 / 3.0}}, StateVector{1.0, 1.0, 1.0},
                   "classical chaotic Lorenz parameters (literature value, not from the published figures)"}}});

    c.push_back({"coupled-lorenz", 6, "two identical Lorenz systems with symmetric diffusive coupling on x",
                 {{"sigma", 10.0, ""}, {"r", 30.0, ""}, {"b", 8.0 / 3.0, ""},
                  {"k", 0.0, "coupling strength; the published control form is incomplete, so "
                             "the coupling is reconstructed as k (x2 - x1) on the x equations"}},
                 {{"sync", {{"sigma", 10.0}, {"r", 30.0}, {"b", 8.0 / 3.0}, {"k", 10.0}},
                   StateVector{0.1, 0.1, 0.1, 1.0, 1.0, 1.0},
                   "figure 2 Lorenz parameters with coupling k=10 and distinct initial conditions"},
                  {"uncoupled", {{"sigma", 10.0}, {"r", 30.0}, {"b", 8.0 / 3.0}, {"k", 0.0}},
                   StateVector{0.1, 0.1, 0.1, 1.0, 1.0, 1.0},
                   "figure 2 Lorenz parameters with coupling off"}}});

    c.push_back({"langford", 3, "Langford torus-to-chaos system (y equation as printed unless corrected)",
                 {{"a", 1.0, "caption alpha"}, {"b", 0.6, "caption beta"}, {"Omega", 3.6, "caption omega"},
                  {"L", 0.6, "caption lambda"}, {"p", 0.2, "caption rho"}, {"E", 0.0, "caption epsilon"}},
                 {{"fig3", {{"a", 1.0}, {"b", 0.6}, {"Omega", 3.6}, {"L", 0.6}, {"p", 0.2}, {"E", 0.0}},
                   StateVector{0.0, 0.3, 0.0},
                   "figure 3(a,b) caption: alpha=1, beta=0.6, lambda=0.6, omega=3.6, rho=0.2, "
                   "epsilon=0, x0=(0,0.3,0)"}}});

    c.push_back({"rossler", 3, "Rossler system",
                 {{"a", 0.2, ""}, {"b", 0.2, ""}, {"c", 5.7, ""}},
                 {{"classical", {{"a", 0.2}, {"b", 0.2}, {"c", 5.7}}, StateVector{1.0, 1.0, 1.0},
                   "classical chaotic Rossler parameters (literature value)"},
                  {"fig4", {{"a", 1.0}, {"b", 0.1}, {"c", 1.0}}, StateVector{2.0, -1.0, 1.0},
                   "figure 4 caption a=1, b=0.1, c=1, x0=(2,-1,1), h=0.01, t in [0,300]" +
                       kDuplicateCaption}}});

    c.push_back({"shilnikov", 3, "Shilnikov cashless-economy model",
                 {{"a", 1.0, ""}, {"b", 0.1, ""}, {"c", 1.0, ""},
                  {"d", 0.0, "absent from the published caption; 0 is the minimal reading"}},
                 {{"fig5", {{"a", 1.0}, {"b", 0.1}, {"c", 1.0}, {"d", 0.0}}, StateVector{2.0, -1.0, 1.0},
                   "figure 5 caption a=1, b=0.1, c=1 (d not given, set to 0), x0=(2,-1,1), h=0.01, "
                   "t in [0,300]" + kDuplicateCaption}}});

    c.push_back({"linear-probe", 1, "scalar test equation dx/dt = lambda x",
                 {{"lambda", -1.0, "exact solution x0 E_psi(lambda t^psi) for constant psi"}},
                 {{"decay", {{"lambda", -1.0}}, StateVector{1.0}, "oracle problem for solver tests"}}});

    return c;
}

template <typename Params, typename Fn>
RhsFunction wrap3(Fn fn, Params (*unpack)(std::span<const double>)) {
    return [fn, unpack](double, std::span<const double> x, std::span<const double> p,
                        std::span<double> dx) {
        const Vec3 d = fn(Vec3{x[0], x[1], x[2]}, unpack(p));
        std::copy(d.begin(), d.end(), dx.begin());
    };
}

RhsFunction rhs_for(const std::string& id, const SystemOptions& options) {
    if (id == "financial") {
        return wrap3<FinancialParams>(financial_rhs, [](std::span<const double> p) {
            return FinancialParams{p[0], p[1], p[2]};
        });
    }
    if (id == "lorenz") {
        return wrap3<LorenzParams>(lorenz_rhs, [](std::span<const double> p) {
            return LorenzParams{p[0], p[1], p[2]};
        });
    }
    if (id == "coupled-lorenz") {
        return [](double, std::span<const double> x, std::span<const double> p, std::span<double> dx) {
            Vec6 s;
            std::copy_n(x.begin(), 6, s.begin());
            const Vec6 d = coupled_lorenz_rhs(s, {p[0], p[1], p[2], p[3]});
            std::copy(d.begin(), d.end(), dx.begin());
        };
    }
    if (id == "langford") {
        const bool corrected = options.langford_corrected;
        return [corrected](double, std::span<const double> x, std::span<const double> p,
                           std::span<double> dx) {
            const LangfordParams lp{p[0], p[1], p[2], p[3], p[4], p[5], corrected};
            const Vec3 d = langford_rhs({x[0], x[1], x[2]}, lp);
            std::copy(d.begin(), d.end(), dx.begin());
        };
    }
    if (id == "rossler") {
        return wrap3<RosslerParams>(rossler_rhs, [](std::span<const double> p) {
            return RosslerParams{p[0], p[1], p[2]};
        });
    }
    if (id == "shilnikov") {
        return wrap3<ShilnikovParams>(shilnikov_rhs, [](std::span<const double> p) {
            return ShilnikovParams{p[0], p[1], p[2], p[3]};
        });
    }
    if (id == "linear-probe") {
        return [](double, std::span<const double> x, std::span<const double> p, std::span<double> dx) {
            dx[0] = linear_probe_rhs(x[0], p[0]);
        };
    }
    throw std::invalid_argument("unknown system '" + id + "'");
}

}  // namespace

const std::vector<CatalogEntry>& system_catalog() {
    static const std::vector<CatalogEntry> catalog = build_catalog();
    return catalog;
}

const CatalogEntry& catalog_entry(const std::string& id) {
    const auto& catalog = system_catalog();
    const auto it = std::find_if(catalog.begin(), catalog.end(),
                                 [&](const CatalogEntry& e) { return e.id == id; });
    if (it == catalog.end()) {
        throw std::invalid_argument("unknown system '" + id + "'");
    }
    return *it;
}

const Preset& find_preset(const CatalogEntry& entry, const std::string& name) {
    const auto it = std::find_if(entry.presets.begin(), entry.presets.end(),
                                 [&](const Preset& p) { return p.name == name; });
    if (it == entry.presets.end()) {
        throw std::invalid_argument("system '" + entry.id + "' has no preset '" + name + "'");
    }
    return *it;
}

SystemDefinition make_system(const std::string& id, const std::optional<std::string>& preset,
                             const std::map<std::string, double>& overrides,
                             const SystemOptions& options) {
    const CatalogEntry& entry = catalog_entry(id);
    SystemDefinition sys;
    sys.id = entry.id;
    sys.dimension = entry.dimension;
    for (const auto& info : entry.parameters) {
        sys.param_names.push_back(info.name);
        sys.params.push_back(info.default_value);
    }
    auto assign = [&](const std::map<std::string, double>& values) {
        for (const auto& [name, value] : values) {
            const auto it = std::find(sys.param_names.begin(), sys.param_names.end(), name);
            if (it == sys.param_names.end()) {
                throw std::invalid_argument("system '" + id + "' has no parameter '" + name + "'");
            }
            sys.params[static_cast<std::size_t>(it - sys.param_names.begin())] = value;
        }
    };
    if (preset) assign(find_preset(entry, *preset).params);
    assign(overrides);
    sys.rhs = rhs_for(id, options);
    return sys;
}

}  // namespace vofrac
