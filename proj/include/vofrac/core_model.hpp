#pragma once

// Value types shared by the solvers, diagnostics and the command-line driver:
// uniform time grids, variable-order functions, system definitions and
// trajectories.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vofrac {

using StateVector = std::vector<double>;

/// Default cap on the number of steps a grid may hold.
inline constexpr std::size_t kDefaultMaxSteps = 10'000'000;

/// Uniform mesh t_k = t0 + k*h, k = 0..n_steps.
class TimeGrid {
public:
    TimeGrid(double t0, double h, std::size_t n_steps);

    [[nodiscard]] double t0() const noexcept { return t0_; }
    [[nodiscard]] double h() const noexcept { return h_; }
    [[nodiscard]] std::size_t n_steps() const noexcept { return n_steps_; }
    [[nodiscard]] std::size_t node_count() const noexcept { return n_steps_ + 1; }
    [[nodiscard]] double node(std::size_t k) const noexcept {
        return t0_ + static_cast<double>(k) * h_;
    }
    [[nodiscard]] double t_end() const noexcept { return node(n_steps_); }

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

private:
    double t0_;
    double h_;
    std::size_t n_steps_;
};

/// N = round((t_end - t0)/h). Throws std::invalid_argument for h <= 0,
/// t_end <= t0, non-finite input or N above max_steps.
TimeGrid build_grid(double t0, double t_end, double h,
                    std::size_t max_steps = kDefaultMaxSteps);

enum class OrderKind { Constant, LinearRamp, Sinusoidal };

/// Variable order psi(t), clamped into [clamp_min, clamp_max] which must lie in (0, 1].
///
/// Constant:   psi(t) = value
/// LinearRamp: psi goes linearly from `value` at ramp_t0 to `end_value` at ramp_t1,
///             held flat outside that interval
/// Sinusoidal: psi(t) = value + amplitude * sin(omega * t)
struct OrderFunction {
    OrderKind kind = OrderKind::Constant;
    double value = 1.0;
    double end_value = 1.0;
    double ramp_t0 = 0.0;
    double ramp_t1 = 1.0;
    double amplitude = 0.0;
    double omega = 1.0;
    double clamp_min = 0.05;
    double clamp_max = 1.0;

    static OrderFunction constant(double psi);
    static OrderFunction ramp(double psi_start, double psi_end, double t_start, double t_end);
    static OrderFunction sinusoidal(double psi0, double amplitude, double omega);

    /// Throws std::invalid_argument when the clamp bounds leave (0, 1] or a
    /// parameter is non-finite.
    void validate() const;

    [[nodiscard]] bool is_constant() const noexcept { return kind == OrderKind::Constant; }

    friend bool operator==(const OrderFunction&, const OrderFunction&) = default;
};

/// Evaluate psi(t). Pure; the result always lies within the clamp bounds.
double eval_order(const OrderFunction& order, double t);

std::string to_string(OrderKind kind);

/// Right-hand side dx = f(t, x; params). Must be deterministic and write
/// exactly `dimension` values.
using RhsFunction = std::function<void(double t, std::span<const double> x,
                                       std::span<const double> params, std::span<double> dx)>;

struct SystemDefinition {
    std::string id;
    std::size_t dimension = 0;
    std::vector<std::string> param_names;
    std::vector<double> params;
    RhsFunction rhs;

    void evaluate(double t, std::span<const double> x, std::span<double> dx) const {
        rhs(t, x, params, dx);
    }

    /// Value of a named parameter; throws std::out_of_range if unknown.
    [[nodiscard]] double param(const std::string& name) const;
};

enum class Scheme { LC, CFC, ABC, RK4 };
enum class SchemeMode { Reference, PaperLiteral };
enum class CfNormalization { Paper, Unit };
/// Value substituted for the right-hand side at t_{-1} on the first step.
enum class HistoryBootstrap { Flat, Zero };

struct SchemeConfig {
    Scheme scheme = Scheme::LC;
    SchemeMode mode = SchemeMode::Reference;
    CfNormalization cf_normalization = CfNormalization::Paper;
    HistoryBootstrap history_bootstrap = HistoryBootstrap::Flat;

    friend bool operator==(const SchemeConfig&, const SchemeConfig&) = default;
};

std::string to_string(Scheme s);
std::string to_string(SchemeMode m);
std::string to_string(CfNormalization n);
std::string to_string(HistoryBootstrap b);

/// Computed states on a grid. States are stored row-major; a diverged run
/// keeps only the finite states preceding `diverged_at`.
class Trajectory {
public:
    Trajectory(TimeGrid grid, std::size_t dimension, SchemeConfig scheme, OrderFunction order);

    [[nodiscard]] const TimeGrid& grid() const noexcept { return grid_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }
    [[nodiscard]] const SchemeConfig& scheme() const noexcept { return scheme_; }
    [[nodiscard]] const OrderFunction& order() const noexcept { return order_; }

    /// Number of stored states (N+1 unless diverged).
    [[nodiscard]] std::size_t size() const noexcept { return data_.size() / dimension_; }
    [[nodiscard]] std::span<const double> state(std::size_t k) const noexcept {
        return {data_.data() + k * dimension_, dimension_};
    }
    [[nodiscard]] std::span<const double> back() const noexcept { return state(size() - 1); }
    [[nodiscard]] double time(std::size_t k) const noexcept { return grid_.node(k); }
    [[nodiscard]] std::span<const double> data() const noexcept { return data_; }

    [[nodiscard]] std::optional<std::size_t> diverged_at() const noexcept { return diverged_at_; }
    [[nodiscard]] double wall_time() const noexcept { return wall_time_; }

    void reserve(std::size_t states) { data_.reserve(states * dimension_); }
    void push_back(std::span<const double> x);
    void mark_diverged(std::size_t step) noexcept { diverged_at_ = step; }
    void set_wall_time(double seconds) noexcept { wall_time_ = seconds; }

    /// Copy of components [first, first + count) as a standalone trajectory.
    [[nodiscard]] Trajectory components(std::size_t first, std::size_t count) const;

private:
    TimeGrid grid_;
    std::size_t dimension_;
    SchemeConfig scheme_;
    OrderFunction order_;
    std::vector<double> data_;
    std::optional<std::size_t> diverged_at_;
    double wall_time_ = 0.0;
};

}  // namespace vofrac
