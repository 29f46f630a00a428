#pragma once

#include <cstddef>

namespace vofrac {

/// Gamma function for 0 < x < 171.6 (Lanczos approximation, g = 7).
/// Throws std::domain_error for x <= 0 and std::overflow_error beyond the
/// double range.
double gamma(double x);

struct MlSeriesReport {
    double value = 0.0;
    std::size_t terms_used = 0;
    /// Estimated magnitude of the discarded tail.
    double truncation_bound = 0.0;
};

/// One-parameter Mittag-Leffler function E_alpha(z) = sum_k z^k / Gamma(alpha k + 1)
/// by direct summation.
///
/// Summation stops once the tail bound drops below tolerance * max(1, |sum|).
/// For z < 0 the bound is the first omitted term (alternating series with
/// decreasing magnitudes); for z > 0 it is the geometric bound t/(1 - r) from
/// the term ratio r. Throws std::runtime_error when max_terms is exhausted or a
/// term overflows, std::domain_error outside alpha in (0, 1], |z| <= 50.
MlSeriesReport mittag_leffler(double alpha, double z, double tolerance = 1e-15,
                              std::size_t max_terms = 10'000);

}  // namespace vofrac
