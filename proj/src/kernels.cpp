#include "vofrac/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "vofrac/special_functions.hpp"

namespace vofrac {

namespace {

void check_order(double psi, const char* what) {
    if (!(psi > 0.0) || psi > 1.0) {
        throw std::domain_error(std::string(what) + ": order must lie in (0, 1], got " +
                                std::to_string(psi));
    }
}

void check_step(double h, const char* what) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw std::domain_error(std::string(what) + ": step must be positive");
    }
}

// Below this lag the brackets are evaluated directly; the cancellation there
// costs at most a factor of kSeriesLag in relative accuracy.
constexpr std::size_t kSeriesLag = 8;

struct Brackets {
    double b1;  // (N+1)^psi (N+2+psi) - N^psi (N+2+2psi)
    double b2;  // (N+1)^{psi+1} - N^psi (N+1+psi)
};

// With u = 1/N, g = (1+u)^psi - 1 and r = g - psi*u:
//   b1 = N^psi * (r/u + (2+psi) g),  b2 = N^psi * (r/u + g).
// r is summed from its binomial series, which avoids subtracting two
// O(N^{psi+1}) quantities to get an O(N^psi) result.
Brackets brackets(double psi, std::size_t lag, double lag_pow_psi) {
    if (lag == 0) {
        return {2.0 + psi, 1.0};
    }
    const double n = static_cast<double>(lag);
    if (lag < kSeriesLag) {
        const long double a = std::pow(static_cast<long double>(n + 1.0), psi);
        const long double b = lag_pow_psi;
        return {static_cast<double>(a * (n + 2.0 + psi) - b * (n + 2.0 + 2.0 * psi)),
                static_cast<double>(a * (n + 1.0) - b * (n + 1.0 + psi))};
    }
    const double u = 1.0 / n;
    double coeff = psi;  // binomial coefficient C(psi, k), starting at k = 1
    double u_pow = u;
    double r_over_u = 0.0;
    for (int k = 2; k < 64; ++k) {
        coeff *= (psi - static_cast<double>(k - 1)) / static_cast<double>(k);
        u_pow *= u;
        const double term = coeff * u_pow;
        r_over_u += term * n;
        if (std::abs(term) <= 1e-18 * std::abs(r_over_u * u) || term == 0.0) break;
    }
    const double g = psi * u + r_over_u * u;
    return {lag_pow_psi * (r_over_u + (2.0 + psi) * g), lag_pow_psi * (r_over_u + g)};
}

double prefactor(double psi, double h) {
    return std::pow(h, psi + 1.0) / (psi * (psi + 1.0));
}

double lag_power(double psi, std::size_t lag) {
    return lag == 0 ? 0.0 : std::pow(static_cast<double>(lag), psi);
}

}  // namespace

double weight_e1(double psi, std::size_t lag, double h) {
    check_order(psi, "weight_e1");
    check_step(h, "weight_e1");
    return prefactor(psi, h) * brackets(psi, lag, lag_power(psi, lag)).b1;
}

double weight_e2(double psi, std::size_t lag, double h) {
    check_order(psi, "weight_e2");
    check_step(h, "weight_e2");
    return prefactor(psi, h) * brackets(psi, lag, lag_power(psi, lag)).b2;
}

KernelWeight kernel_weight(double psi, std::size_t lag, double h) {
    check_order(psi, "kernel_weight");
    check_step(h, "kernel_weight");
    const double pre = prefactor(psi, h);
    const Brackets br = brackets(psi, lag, lag_power(psi, lag));
    return {pre * br.b1, pre * br.b2, psi, lag};
}

double norm_ab(double psi) {
    check_order(psi, "norm_ab");
    return 1.0 - psi + psi / gamma(psi);
}

double norm_cf(double psi) {
    if (!(psi >= 0.0) || psi > 1.0) {
        throw std::domain_error("norm_cf: order must lie in [0, 1], got " + std::to_string(psi));
    }
    return 2.0 / (2.0 - psi);
}

WeightTable::WeightTable(double h) : h_(h) {
    check_step(h, "WeightTable");
}

void WeightTable::fill(double psi, std::size_t max_lag) {
    check_order(psi, "WeightTable::fill");
    const std::size_t count = max_lag + 1;
    for (std::size_t j = log_index_.size(); j < count; ++j) {
        log_index_.push_back(j == 0 ? 0.0 : std::log(static_cast<double>(j)));
    }
    e1_.resize(count);
    e2_.resize(count);
    psi_ = psi;
    const double pre = prefactor(psi, h_);
    const bool integer_order = psi == 1.0;
    for (std::size_t j = 0; j < count; ++j) {
        double p = 0.0;
        if (j > 0) {
            p = integer_order ? static_cast<double>(j) : std::exp(psi * log_index_[j]);
        }
        const Brackets br = brackets(psi, j, p);
        e1_[j] = pre * br.b1;
        e2_[j] = pre * br.b2;
    }
}

}  // namespace vofrac
