#include "vofrac/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "vofrac/kernels.hpp"
#include "vofrac/special_functions.hpp"

namespace vofrac {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_inputs(const SystemDefinition& system, const OrderFunction* order,
                  const StateVector& x0, const SchemeConfig& cfg, Scheme expected) {
    if (cfg.scheme != expected) {
        throw std::invalid_argument("solver for " + to_string(expected) + " called with scheme " +
                                    to_string(cfg.scheme));
    }
    if (system.dimension == 0 || !system.rhs) {
        throw std::invalid_argument("system '" + system.id + "' is not initialised");
    }
    if (x0.size() != system.dimension) {
        throw std::invalid_argument("initial condition has " + std::to_string(x0.size()) +
                                    " components, system '" + system.id + "' needs " +
                                    std::to_string(system.dimension));
    }
    if (order) order->validate();
}

bool within_bounds(std::span<const double> x) {
    return std::all_of(x.begin(), x.end(), [](double v) {
        return std::isfinite(v) && std::abs(v) <= kDivergenceThreshold;
    });
}

// sum_{j=0..n} coeff[j] * f[n - j], four independent partial sums.
double convolve(const double* coeff, const double* f, std::size_t n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    const std::size_t count = n + 1;
    const double* fn = f + n;
    std::size_t j = 0;
    for (; j + 4 <= count; j += 4) {
        s0 += coeff[j] * fn[-static_cast<std::ptrdiff_t>(j)];
        s1 += coeff[j + 1] * fn[-static_cast<std::ptrdiff_t>(j + 1)];
        s2 += coeff[j + 2] * fn[-static_cast<std::ptrdiff_t>(j + 2)];
        s3 += coeff[j + 3] * fn[-static_cast<std::ptrdiff_t>(j + 3)];
    }
    for (; j < count; ++j) {
        s0 += coeff[j] * fn[-static_cast<std::ptrdiff_t>(j)];
    }
    return (s0 + s1) + (s2 + s3);
}

// Lag coefficients of the history sum after collecting terms by F_m:
//   coeff[0] = E1_0, coeff[j] = E1_j - W_{j-1}   (j >= 1)
// where W = E2 (reference) or E1 (paper-literal). The F_{-1} term carries W_n.
class HistoryCoefficients {
public:
    HistoryCoefficients(double h, SchemeMode mode) : table_(h), mode_(mode) {}

    void build(double psi, std::size_t max_lag) {
        table_.fill(psi, max_lag);
        const auto& e1 = table_.e1();
        const auto& w = mode_ == SchemeMode::Reference ? table_.e2() : table_.e1();
        coeff_.resize(max_lag + 1);
        coeff_[0] = e1[0];
        for (std::size_t j = 1; j <= max_lag; ++j) {
            coeff_[j] = e1[j] - w[j - 1];
        }
        bootstrap_ = w;
    }

    [[nodiscard]] double psi() const noexcept { return table_.psi(); }
    [[nodiscard]] const double* coeff() const noexcept { return coeff_.data(); }
    [[nodiscard]] double bootstrap_weight(std::size_t n) const noexcept { return bootstrap_[n]; }

private:
    WeightTable table_;
    SchemeMode mode_;
    std::vector<double> coeff_;
    std::vector<double> bootstrap_;
};

// Shared O(N^2) stepper for the power-law history sum:
//   X_{n+1} = X_0 + local(psi) F_n + scale(psi) * (sum_j coeff_j F_{n-j} - W_n F_{-1})
enum class HistoryKind { LiouvilleCaputo, AtanganaBaleanu };

Trajectory solve_history(const SystemDefinition& system, const OrderFunction& order,
                         const TimeGrid& grid, const StateVector& x0, const SchemeConfig& cfg,
                         HistoryKind kind) {
    const auto start = Clock::now();
    const std::size_t dim = system.dimension;
    const std::size_t steps = grid.n_steps();
    const double h = grid.h();
    const bool abc_local = kind == HistoryKind::AtanganaBaleanu && cfg.mode == SchemeMode::Reference;

    Trajectory traj(grid, dim, cfg, order);
    traj.reserve(steps + 1);
    traj.push_back(x0);

    // history[i][m] = F_m, component i
    std::vector<std::vector<double>> history(dim);
    for (auto& column : history) column.reserve(steps + 1);
    StateVector x(x0), dx(dim);
    system.evaluate(grid.node(0), x, dx);
    for (std::size_t i = 0; i < dim; ++i) history[i].push_back(dx[i]);

    StateVector f_before_start(dim, 0.0);
    if (cfg.history_bootstrap == HistoryBootstrap::Flat) f_before_start = dx;

    HistoryCoefficients coefficients(h, cfg.mode);
    double gamma_psi = 0.0;
    double ab_norm = 1.0;
    auto prepare_order = [&](double psi) {
        gamma_psi = gamma(psi);
        ab_norm = abc_local ? norm_ab(psi) : 1.0;
    };
    if (order.is_constant()) {
        const double psi = eval_order(order, grid.node(0));
        coefficients.build(psi, steps);
        prepare_order(psi);
    }

    for (std::size_t n = 0; n < steps; ++n) {
        const double t_next = grid.node(n + 1);
        if (!order.is_constant()) {
            const double psi = eval_order(order, t_next);
            coefficients.build(psi, n);
            prepare_order(psi);
        }
        const double psi = coefficients.psi();
        double scale = 1.0 / (h * gamma_psi);
        double local = 0.0;
        if (abc_local) {
            scale *= psi / ab_norm;
            local = (1.0 - psi) / ab_norm;
        }
        const double w_boot = coefficients.bootstrap_weight(n);
        for (std::size_t i = 0; i < dim; ++i) {
            const double* f = history[i].data();
            const double sum = convolve(coefficients.coeff(), f, n) - w_boot * f_before_start[i];
            x[i] = x0[i] + local * f[n] + scale * sum;
        }
        if (!within_bounds(x)) {
            traj.mark_diverged(n + 1);
            break;
        }
        traj.push_back(x);
        system.evaluate(t_next, x, dx);
        for (std::size_t i = 0; i < dim; ++i) history[i].push_back(dx[i]);
    }
    traj.set_wall_time(seconds_since(start));
    return traj;
}

}  // namespace

Trajectory solve_lc(const SystemDefinition& system, const OrderFunction& order,
                    const TimeGrid& grid, const StateVector& x0, const SchemeConfig& cfg) {
    check_inputs(system, &order, x0, cfg, Scheme::LC);
    return solve_history(system, order, grid, x0, cfg, HistoryKind::LiouvilleCaputo);
}

Trajectory solve_abc(const SystemDefinition& system, const OrderFunction& order,
                     const TimeGrid& grid, const StateVector& x0, const SchemeConfig& cfg) {
    check_inputs(system, &order, x0, cfg, Scheme::ABC);
    return solve_history(system, order, grid, x0, cfg, HistoryKind::AtanganaBaleanu);
}

Trajectory solve_cfc(const SystemDefinition& system, const OrderFunction& order,
                     const TimeGrid& grid, const StateVector& x0, const SchemeConfig& cfg) {
    check_inputs(system, &order, x0, cfg, Scheme::CFC);
    const auto start = Clock::now();
    const std::size_t dim = system.dimension;
    const double h = grid.h();

    Trajectory traj(grid, dim, cfg, order);
    traj.reserve(grid.node_count());
    traj.push_back(x0);

    StateVector x(x0), f_now(dim), f_prev(dim, 0.0), next(dim);
    system.evaluate(grid.node(0), x, f_now);
    if (cfg.history_bootstrap == HistoryBootstrap::Flat) f_prev = f_now;

    for (std::size_t n = 0; n < grid.n_steps(); ++n) {
        const double t_next = grid.node(n + 1);
        const double psi = eval_order(order, t_next);
        double c_diff = 1.0 - psi;
        double c_int = psi;
        if (cfg.cf_normalization == CfNormalization::Paper) {
            c_diff = (2.0 - psi) * (1.0 - psi) / 2.0;
            c_int = psi * (2.0 - psi) / 2.0;
        }
        const StateVector& base = cfg.mode == SchemeMode::Reference ? x : x0;
        for (std::size_t i = 0; i < dim; ++i) {
            const double integral = h * (3.0 * f_now[i] - f_prev[i]) / 2.0;
            next[i] = base[i] + c_diff * (f_now[i] - f_prev[i]) + c_int * integral;
        }
        if (!within_bounds(next)) {
            traj.mark_diverged(n + 1);
            break;
        }
        x.swap(next);
        traj.push_back(x);
        f_prev.swap(f_now);
        system.evaluate(t_next, x, f_now);
    }
    traj.set_wall_time(seconds_since(start));
    return traj;
}

Rk4Stepper::Rk4Stepper(std::size_t dimension)
    : k1_(dimension), k2_(dimension), k3_(dimension), k4_(dimension), tmp_(dimension) {}

void Rk4Stepper::step(const SystemDefinition& system, double t, double h, std::span<double> x) {
    const std::size_t dim = x.size();
    system.evaluate(t, x, k1_);
    for (std::size_t i = 0; i < dim; ++i) tmp_[i] = x[i] + 0.5 * h * k1_[i];
    system.evaluate(t + 0.5 * h, tmp_, k2_);
    for (std::size_t i = 0; i < dim; ++i) tmp_[i] = x[i] + 0.5 * h * k2_[i];
    system.evaluate(t + 0.5 * h, tmp_, k3_);
    for (std::size_t i = 0; i < dim; ++i) tmp_[i] = x[i] + h * k3_[i];
    system.evaluate(t + h, tmp_, k4_);
    for (std::size_t i = 0; i < dim; ++i) {
        x[i] += h / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
    }
}

Trajectory solve_rk4(const SystemDefinition& system, const TimeGrid& grid, const StateVector& x0) {
    SchemeConfig cfg;
    cfg.scheme = Scheme::RK4;
    check_inputs(system, nullptr, x0, cfg, Scheme::RK4);
    const auto start = Clock::now();
    const std::size_t dim = system.dimension;
    const double h = grid.h();

    Trajectory traj(grid, dim, cfg, OrderFunction::constant(1.0));
    traj.reserve(grid.node_count());
    traj.push_back(x0);

    Rk4Stepper stepper(dim);
    StateVector x(x0), next(dim);
    for (std::size_t n = 0; n < grid.n_steps(); ++n) {
        next = x;
        stepper.step(system, grid.node(n), h, next);
        if (!within_bounds(next)) {
            traj.mark_diverged(n + 1);
            break;
        }
        x.swap(next);
        traj.push_back(x);
    }
    traj.set_wall_time(seconds_since(start));
    return traj;
}

Trajectory solve(const SystemDefinition& system, const OrderFunction& order, const TimeGrid& grid,
                 const StateVector& x0, const SchemeConfig& cfg) {
    switch (cfg.scheme) {
        case Scheme::LC: return solve_lc(system, order, grid, x0, cfg);
        case Scheme::CFC: return solve_cfc(system, order, grid, x0, cfg);
        case Scheme::ABC: return solve_abc(system, order, grid, x0, cfg);
        case Scheme::RK4: return solve_rk4(system, grid, x0);
    }
    throw std::invalid_argument("unknown scheme");
}

}  // namespace vofrac
