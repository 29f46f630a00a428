#pragma once

#include <optional>
#include <vector>

#include "vofrac/core_model.hpp"

namespace vofrac {

inline constexpr double kDefaultSyncThreshold = 1e-3;
inline constexpr double kDefaultTransientFraction = 0.1;

struct SyncReport {
    std::vector<double> error;  ///< |X1(t_k) - X2(t_k)|_2 per node
    double tail_mean = 0.0;     ///< mean error over the last 10% of nodes
    double max_error = 0.0;
    bool synchronized = false;  ///< tail_mean < threshold
};

/// Throws std::invalid_argument when grids, dimensions or stored lengths differ.
SyncReport sync_error(const Trajectory& a, const Trajectory& b,
                      double threshold = kDefaultSyncThreshold);

struct ComponentStats {
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double variance = 0.0;  ///< population variance
    /// m4 / m2^2 - 3; NaN for a component with zero variance.
    double excess_kurtosis = 0.0;
};

struct ChaosReport {
    std::optional<double> lyapunov_estimate;
    std::vector<ComponentStats> components;
    double transient_fraction = kDefaultTransientFraction;
    std::size_t retained_nodes = 0;
};

/// Moments and bounds over the stored states after discarding the leading
/// floor(transient_fraction * size) nodes. Throws std::invalid_argument if
/// the fraction is outside [0, 1) or nothing is retained.
ChaosReport trajectory_stats(const Trajectory& traj,
                             double transient_fraction = kDefaultTransientFraction);

struct LyapunovOptions {
    double initial_separation = 1e-8;
    double renormalization_interval = 1.0;
    double transient_fraction = kDefaultTransientFraction;
};

/// Largest Lyapunov exponent of the integer-order system by the two-trajectory
/// rescaling method, integrating both trajectories with RK4.
///
/// The companion starts at separation d0 along (1, ..., 1)/sqrt(dim); every
/// renormalization interval tau the separation d is measured, log(d/d0) is
/// accumulated and the companion is pulled back to distance d0 along the
/// current separation. The first transient_fraction of the horizon is skipped.
/// Returns -infinity if the separation collapses to exactly zero. Throws
/// std::runtime_error if the base trajectory diverges.
double largest_lyapunov(const SystemDefinition& system, const StateVector& x0, double horizon,
                        double h, const LyapunovOptions& options = {});

}  // namespace vofrac
