#include "vofrac/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace vofrac {

TimeGrid::TimeGrid(double t0, double h, std::size_t n_steps) : t0_(t0), h_(h), n_steps_(n_steps) {
    if (!std::isfinite(t0) || !std::isfinite(h) || !(h > 0.0)) {
        throw std::invalid_argument("time grid: h must be finite and positive");
    }
    if (n_steps == 0) {
        throw std::invalid_argument("time grid: at least one step is required");
    }
}

TimeGrid build_grid(double t0, double t_end, double h, std::size_t max_steps) {
    if (!std::isfinite(t0) || !std::isfinite(t_end) || !std::isfinite(h)) {
        throw std::invalid_argument("build_grid: non-finite grid specification");
    }
    if (!(h > 0.0)) {
        throw std::invalid_argument("build_grid: h must be positive");
    }
    if (!(t_end > t0)) {
        throw std::invalid_argument("build_grid: t_end must exceed t0");
    }
    const double steps = std::round((t_end - t0) / h);
    if (steps < 1.0) {
        throw std::invalid_argument("build_grid: interval shorter than half a step");
    }
    if (steps > static_cast<double>(max_steps)) {
        throw std::invalid_argument("build_grid: step count " + std::to_string(steps) +
                                    " exceeds cap " + std::to_string(max_steps));
    }
    return TimeGrid(t0, h, static_cast<std::size_t>(steps));
}

OrderFunction OrderFunction::constant(double psi) {
    OrderFunction f;
    f.kind = OrderKind::Constant;
    f.value = psi;
    f.end_value = psi;
    return f;
}

OrderFunction OrderFunction::ramp(double psi_start, double psi_end, double t_start, double t_end) {
    OrderFunction f;
    f.kind = OrderKind::LinearRamp;
    f.value = psi_start;
    f.end_value = psi_end;
    f.ramp_t0 = t_start;
    f.ramp_t1 = t_end;
    return f;
}

OrderFunction OrderFunction::sinusoidal(double psi0, double amplitude, double omega) {
    OrderFunction f;
    f.kind = OrderKind::Sinusoidal;
    f.value = psi0;
    f.amplitude = amplitude;
    f.omega = omega;
    return f;
}

void OrderFunction::validate() const {
    for (double v : {value, end_value, ramp_t0, ramp_t1, amplitude, omega, clamp_min, clamp_max}) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("order function: non-finite parameter");
        }
    }
    if (!(clamp_min > 0.0) || clamp_max > 1.0 || clamp_min > clamp_max) {
        throw std::invalid_argument("order function: clamp bounds must satisfy 0 < min <= max <= 1");
    }
    if (kind == OrderKind::LinearRamp && !(ramp_t1 > ramp_t0)) {
        throw std::invalid_argument("order function: ramp interval must be non-empty");
    }
}

double eval_order(const OrderFunction& order, double t) {
    double raw = order.value;
    switch (order.kind) {
        case OrderKind::Constant:
            break;
        case OrderKind::LinearRamp: {
            const double s =
                std::clamp((t - order.ramp_t0) / (order.ramp_t1 - order.ramp_t0), 0.0, 1.0);
            raw = order.value + s * (order.end_value - order.value);
            break;
        }
        case OrderKind::Sinusoidal:
            raw = order.value + order.amplitude * std::sin(order.omega * t);
            break;
    }
    return std::clamp(raw, order.clamp_min, order.clamp_max);
}

std::string to_string(OrderKind kind) {
    switch (kind) {
        case OrderKind::Constant: return "constant";
        case OrderKind::LinearRamp: return "ramp";
        case OrderKind::Sinusoidal: return "sinusoidal";
    }
    return "unknown";
}

double SystemDefinition::param(const std::string& name) const {
    const auto it = std::find(param_names.begin(), param_names.end(), name);
    if (it == param_names.end()) {
        throw std::out_of_range("system " + id + " has no parameter '" + name + "'");
    }
    return params[static_cast<std::size_t>(it - param_names.begin())];
}

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::LC: return "LC";
        case Scheme::CFC: return "CFC";
        case Scheme::ABC: return "ABC";
        case Scheme::RK4: return "RK4";
    }
    return "unknown";
}

std::string to_string(SchemeMode m) {
    return m == SchemeMode::Reference ? "reference" : "paper-literal";
}

std::string to_string(CfNormalization n) {
    return n == CfNormalization::Paper ? "paper" : "unit";
}

std::string to_string(HistoryBootstrap b) {
    return b == HistoryBootstrap::Flat ? "flat" : "zero";
}

Trajectory::Trajectory(TimeGrid grid, std::size_t dimension, SchemeConfig scheme,
                       OrderFunction order)
    : grid_(grid), dimension_(dimension), scheme_(scheme), order_(order) {
    if (dimension == 0) {
        throw std::invalid_argument("trajectory: dimension must be positive");
    }
}

void Trajectory::push_back(std::span<const double> x) {
    if (x.size() != dimension_) {
        throw std::invalid_argument("trajectory: state dimension mismatch");
    }
    data_.insert(data_.end(), x.begin(), x.end());
}

Trajectory Trajectory::components(std::size_t first, std::size_t count) const {
    if (count == 0 || first + count > dimension_) {
        throw std::out_of_range("trajectory: component range out of bounds");
    }
    Trajectory out(grid_, count, scheme_, order_);
    out.reserve(size());
    for (std::size_t k = 0; k < size(); ++k) {
        out.push_back(state(k).subspan(first, count));
    }
    if (diverged_at_) out.mark_diverged(*diverged_at_);
    out.set_wall_time(wall_time_);
    return out;
}

}  // namespace vofrac
