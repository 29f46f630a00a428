#include "vofrac/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vofrac/solvers.hpp"

namespace vofrac {

SyncReport sync_error(const Trajectory& a, const Trajectory& b, double threshold) {
    if (!(a.grid() == b.grid())) {
        throw std::invalid_argument("sync_error: trajectories are on different grids");
    }
    if (a.dimension() != b.dimension()) {
        throw std::invalid_argument("sync_error: dimension mismatch");
    }
    if (a.size() != b.size() || a.size() == 0) {
        throw std::invalid_argument("sync_error: trajectories store different node counts");
    }
    SyncReport report;
    report.error.reserve(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        const auto xa = a.state(k);
        const auto xb = b.state(k);
        double sq = 0.0;
        for (std::size_t i = 0; i < xa.size(); ++i) {
            const double d = xa[i] - xb[i];
            sq += d * d;
        }
        report.error.push_back(std::sqrt(sq));
    }
    const std::size_t tail = std::max<std::size_t>(1, report.error.size() / 10);
    double sum = 0.0;
    for (std::size_t k = report.error.size() - tail; k < report.error.size(); ++k) {
        sum += report.error[k];
    }
    report.tail_mean = sum / static_cast<double>(tail);
    report.max_error = *std::max_element(report.error.begin(), report.error.end());
    report.synchronized = report.tail_mean < threshold;
    return report;
}

ChaosReport trajectory_stats(const Trajectory& traj, double transient_fraction) {
    if (!(transient_fraction >= 0.0) || !(transient_fraction < 1.0)) {
        throw std::invalid_argument("trajectory_stats: transient fraction must lie in [0, 1)");
    }
    const std::size_t total = traj.size();
    const auto skip = static_cast<std::size_t>(std::floor(transient_fraction * static_cast<double>(total)));
    if (skip >= total) {
        throw std::invalid_argument("trajectory_stats: empty retained window");
    }
    ChaosReport report;
    report.transient_fraction = transient_fraction;
    report.retained_nodes = total - skip;
    const double count = static_cast<double>(report.retained_nodes);

    for (std::size_t i = 0; i < traj.dimension(); ++i) {
        ComponentStats s;
        s.min = std::numeric_limits<double>::infinity();
        s.max = -std::numeric_limits<double>::infinity();
        double sum = 0.0;
        for (std::size_t k = skip; k < total; ++k) {
            const double v = traj.state(k)[i];
            s.min = std::min(s.min, v);
            s.max = std::max(s.max, v);
            sum += v;
        }
        s.mean = sum / count;
        double m2 = 0.0, m4 = 0.0;
        for (std::size_t k = skip; k < total; ++k) {
            const double d = traj.state(k)[i] - s.mean;
            const double d2 = d * d;
            m2 += d2;
            m4 += d2 * d2;
        }
        m2 /= count;
        m4 /= count;
        s.variance = m2;
        s.excess_kurtosis = m2 > 0.0 ? m4 / (m2 * m2) - 3.0 : std::numeric_limits<double>::quiet_NaN();
        report.components.push_back(s);
    }
    return report;
}

double largest_lyapunov(const SystemDefinition& system, const StateVector& x0, double horizon,
                        double h, const LyapunovOptions& options) {
    if (x0.size() != system.dimension) {
        throw std::invalid_argument("largest_lyapunov: initial condition dimension mismatch");
    }
    if (!(horizon >= 200.0)) {
        throw std::invalid_argument("largest_lyapunov: horizon must be at least 200 time units");
    }
    if (!(h > 0.0) || !(options.initial_separation > 0.0) ||
        !(options.renormalization_interval >= h) || !(options.transient_fraction >= 0.0) ||
        !(options.transient_fraction < 1.0)) {
        throw std::invalid_argument("largest_lyapunov: invalid step or estimator options");
    }

    const std::size_t dim = system.dimension;
    const auto steps_per_interval =
        static_cast<std::size_t>(std::llround(options.renormalization_interval / h));
    const auto total_steps = static_cast<std::size_t>(std::llround(horizon / h));
    const auto transient_steps = static_cast<std::size_t>(
        std::llround(options.transient_fraction * static_cast<double>(total_steps)));

    Rk4Stepper base_stepper(dim);
    Rk4Stepper companion_stepper(dim);
    StateVector base(x0);
    auto check_base = [&] {
        for (double v : base) {
            if (!std::isfinite(v) || std::abs(v) > kDivergenceThreshold) {
                throw std::runtime_error("largest_lyapunov: base trajectory diverged");
            }
        }
    };

    std::size_t step = 0;
    for (; step < transient_steps; ++step) {
        base_stepper.step(system, static_cast<double>(step) * h, h, base);
    }
    check_base();

    const double d0 = options.initial_separation;
    StateVector companion(base);
    const double offset = d0 / std::sqrt(static_cast<double>(dim));
    for (double& v : companion) v += offset;

    double log_growth = 0.0;
    double elapsed = 0.0;
    while (step + steps_per_interval <= total_steps) {
        for (std::size_t s = 0; s < steps_per_interval; ++s, ++step) {
            const double t = static_cast<double>(step) * h;
            base_stepper.step(system, t, h, base);
            companion_stepper.step(system, t, h, companion);
        }
        check_base();
        double sq = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            const double d = companion[i] - base[i];
            sq += d * d;
        }
        const double separation = std::sqrt(sq);
        if (separation == 0.0) {
            return -std::numeric_limits<double>::infinity();
        }
        log_growth += std::log(separation / d0);
        elapsed += static_cast<double>(steps_per_interval) * h;
        const double pull = d0 / separation;
        for (std::size_t i = 0; i < dim; ++i) {
            companion[i] = base[i] + (companion[i] - base[i]) * pull;
        }
    }
    if (elapsed == 0.0) {
        throw std::invalid_argument("largest_lyapunov: horizon shorter than one interval");
    }
    return log_growth / elapsed;
}

}  // namespace vofrac
