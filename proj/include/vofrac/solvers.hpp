#pragma once

// Fixed-step integrators for variable-order fractional systems.
//
// All solvers share the same contract: states[0] is x0 exactly, psi(t) is
// sampled at the target node t_{n+1} when step n is built, and a state whose
// max-norm exceeds kDivergenceThreshold (or is non-finite) stops the run with
// Trajectory::diverged_at set to that step index. Diverged states are not
// stored.

#include "vofrac/core_model.hpp"

namespace vofrac {

inline constexpr double kDivergenceThreshold = 1e8;

/// Liouville-Caputo stepper.
///
/// Reference mode:
///   X_{n+1} = X_0 + 1/Gamma(psi) sum_{m=0..n} [E1_{n-m}/h F_m - E2_{n-m}/h F_{m-1}]
/// Paper-literal mode:
///   X_{n+1} = X_0 + 1/Gamma(psi) sum_{m=0..n} E1_{n-m}/h (F_m - F_{m-1})
/// Cost is O(N^2); for constant psi the weights are built once per run.
Trajectory solve_lc(const SystemDefinition& system, const OrderFunction& order,
                    const TimeGrid& grid, const StateVector& x0, const SchemeConfig& cfg);

/// Caputo-Fabrizio stepper (memoryless):
///   X_{n+1} = X_base + c1 (F_n - F_{n-1}) + c2 h (3 F_n - F_{n-1}) / 2
/// with c1 = (2-psi)(1-psi)/2, c2 = psi(2-psi)/2 under the 2/(2-psi)
/// normalization, or c1 = 1-psi, c2 = psi under unit normalization.
/// X_base is X_n in reference mode and X_0 in paper-literal mode.
Trajectory solve_cfc(const SystemDefinition& system, const OrderFunction& order,
                     const TimeGrid& grid, const StateVector& x0, const SchemeConfig& cfg);

/// Atangana-Baleanu-Caputo stepper.
///
/// Reference mode:
///   X_{n+1} = X_0 + (1-psi)/B F_n + psi/(B Gamma(psi)) sum [E1/h F_m - E2/h F_{m-1}]
/// Paper-literal mode uses the single-weight update of paper-literal LC.
Trajectory solve_abc(const SystemDefinition& system, const OrderFunction& order,
                     const TimeGrid& grid, const StateVector& x0, const SchemeConfig& cfg);

/// One classical RK4 step with reusable stage buffers.
class Rk4Stepper {
public:
    explicit Rk4Stepper(std::size_t dimension);

    /// Advance x from t to t + h in place.
    void step(const SystemDefinition& system, double t, double h, std::span<double> x);

private:
    StateVector k1_, k2_, k3_, k4_, tmp_;
};

/// Classical fourth-order Runge-Kutta on the integer-order system.
Trajectory solve_rk4(const SystemDefinition& system, const TimeGrid& grid, const StateVector& x0);

/// Dispatch on cfg.scheme. RK4 ignores the order function.
Trajectory solve(const SystemDefinition& system, const OrderFunction& order, const TimeGrid& grid,
                 const StateVector& x0, const SchemeConfig& cfg);

}  // namespace vofrac
