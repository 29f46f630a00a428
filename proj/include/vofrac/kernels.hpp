#pragma once

// Convolution weights of the power-law history sums and the normalization
// functions of the Mittag-Leffler and exponential kernels.

#include <cstddef>
#include <vector>

namespace vofrac {

/// Weights of one lag of the two-point product-integration history sum.
struct KernelWeight {
    double e1 = 0.0;  ///< multiplies F_m
    double e2 = 0.0;  ///< multiplies F_{m-1}
    double psi = 1.0;
    std::size_t lag = 0;  ///< n - m
};

/// h^{psi+1} [(N+1)^psi (N+2+psi) - N^psi (N+2+2psi)] / (psi (psi+1)), N = lag, 0^psi := 0.
double weight_e1(double psi, std::size_t lag, double h);

/// h^{psi+1} [(N+1)^{psi+1} - N^psi (N+1+psi)] / (psi (psi+1)), N = lag, 0^psi := 0.
double weight_e2(double psi, std::size_t lag, double h);

KernelWeight kernel_weight(double psi, std::size_t lag, double h);

/// B[psi] = 1 - psi + psi / Gamma(psi).
double norm_ab(double psi);

/// F[psi] = 2 / (2 - psi), defined on [0, 1].
double norm_cf(double psi);

/// Weight tables for lags 0..max_lag at a fixed order and step.
///
/// Powers j^psi are evaluated as exp(psi * ln j) from a log table that is
/// shared across refills, so refilling for a new psi costs one exp per lag.
class WeightTable {
public:
    explicit WeightTable(double h);

    /// Recompute e1/e2 for lags 0..max_lag at order psi.
    void fill(double psi, std::size_t max_lag);

    [[nodiscard]] double psi() const noexcept { return psi_; }
    [[nodiscard]] const std::vector<double>& e1() const noexcept { return e1_; }
    [[nodiscard]] const std::vector<double>& e2() const noexcept { return e2_; }

private:
    double h_;
    double psi_ = 0.0;
    std::vector<double> log_index_;
    std::vector<double> e1_;
    std::vector<double> e2_;
};

}  // namespace vofrac
