// SPDX-License-Identifier: Apache-2.0

#include "wishart_sum/special_functions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "wishart_sum/errors.hpp"
#include "wishart_sum/quadrature.hpp"

#include "detail/kernel_impl.hpp"

namespace wishart_sum {

namespace {

// series about 0, safe for x < 1 where cancellation stays below two bits
double e1_series(double x) {
    double sum = -std::numbers::egamma - std::log(x);
    double r = 1.0; // (-1)^(k-1) x^k / k!
    for (int k = 1; k <= 60; ++k) {
        r *= x / k;
        const double term = (k % 2 == 1 ? r : -r) / k;
        sum += term;
        if (std::abs(r) < 1e-20 * std::abs(sum) * k) break;
    }
    return sum;
}

// modified Lentz on G = x+1 - 1^2/(x+3 - 2^2/(x+5 - ...)); e^x E1(x) = 1/G
double exp_e1_lentz(double x) {
    double f = x + 1.0;
    double c = f;
    double d = 0.0;
    for (int j = 1; j < 20000; ++j) {
        const double aj = -static_cast<double>(j) * j;
        const double bj = x + 2.0 * j + 1.0;
        d = bj + aj * d;
        if (d == 0.0) d = 1e-300;
        d = 1.0 / d;
        c = bj + aj / c;
        if (c == 0.0) c = 1e-300;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-17) return 1.0 / f;
    }
    throw numerical_error("exp_e1: continued fraction failed to settle at x=" +
                          std::to_string(x));
}

} // namespace

namespace detail {

double exp_e1_double(double x) {
    if (x < 1.0) return std::exp(x) * e1_series(x);
    return exp_e1_lentz(x);
}

} // namespace detail

double log_gamma(double x) {
    if (!(x > 0.0)) throw validation_error("log_gamma: argument must be positive");
    return std::lgamma(x);
}

double recip_gamma_int(int k) {
    if (k <= 0) return 0.0;
    if (k <= 170) return 1.0 / std::tgamma(static_cast<double>(k));
    return std::exp(-std::lgamma(static_cast<double>(k)));
}

double assoc_laguerre(int n, double alpha, double x) {
    if (n < 0) throw validation_error("assoc_laguerre: order must be nonnegative");
    if (n == 0) return 1.0;
    double lm1 = 1.0;
    double l = 1.0 + alpha - x;
    for (int k = 1; k < n; ++k) {
        const double lp1 = ((2.0 * k + 1.0 + alpha - x) * l - (k + alpha) * lm1) / (k + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

double e1(double x) {
    if (!(x > 0.0)) throw validation_error("e1: argument must be positive");
    if (x < 1.0) return e1_series(x);
    return std::exp(-x) * exp_e1_lentz(x); // underflows to 0 past x ~ 745, as E1 does
}

double exp_e1(double x) {
    if (!(x > 0.0)) throw validation_error("exp_e1: argument must be positive");
    return detail::exp_e1_double(x);
}

namespace {

// accurate log-kernel column regardless of how hostile (n, beta) is to double
std::vector<double> kernel_log_column(int n_max, double beta) {
    if (n_max < 0) throw validation_error("capacity kernel: n must be nonnegative");
    if (!(beta > 0.0)) throw validation_error("capacity kernel: beta must be positive");
    detail::KernelColumn<detail::Scaled<double>> col =
        detail::kernel_column_double(n_max, beta);
    std::vector<double> logs(static_cast<std::size_t>(n_max) + 1);
    if (col.loss_bits <= 20.0) {
        for (int n = 0; n <= n_max; ++n) {
            logs[n] = col.values[n].log2_magnitude() * std::numbers::ln2;
        }
        return logs;
    }
#ifdef WISHART_SUM_HAVE_MPFR
    detail::KernelColumn<detail::BigFloat> mcol =
        detail::kernel_column_mpfr(n_max, beta, 64);
    for (int n = 0; n <= n_max; ++n) {
        logs[n] = mcol.values[n].log2_magnitude() * std::numbers::ln2;
    }
    return logs;
#else
    if (col.loss_bits > 40.0) {
        throw numerical_error("capacity kernel: cancellation exceeds double precision "
                              "and no higher rung is built in");
    }
    for (int n = 0; n <= n_max; ++n) {
        logs[n] = col.values[n].log2_magnitude() * std::numbers::ln2;
    }
    return logs;
#endif
}

} // namespace

double capacity_kernel_log(int n, double beta) { return kernel_log_column(n, beta)[n]; }

double capacity_kernel(int n, double beta) {
    return std::exp(capacity_kernel_log(n, beta));
}

double kernel_quadrature_log(int n, double beta) {
    if (n < 0) throw validation_error("kernel_quadrature_log: n must be nonnegative");
    if (!(beta > 0.0)) throw validation_error("kernel_quadrature_log: beta must be positive");
    // shift by the log-height of x^n e^(-beta x) at its peak so the shifted
    // integrand tops out near 1 whatever (n, beta) is
    const double shift = n > 0 ? n * (std::log(n / beta) - 1.0) : 0.0;
    const double peak = std::max(1.0, n / beta);
    const auto g = [&](double x) {
        if (x <= 0.0) return 0.0;
        return std::exp(n * std::log(x) - beta * x - shift) * std::log1p(x);
    };
    const QuadratureResult r = integrate_semi_infinite(g, 0.0, peak, 1e-11);
    if (!(r.value > 0.0)) {
        throw numerical_error("kernel_quadrature_log: integral evaluated nonpositive");
    }
    return shift + std::log(r.value);
}

KernelIntegralTable::KernelIntegralTable(int n_max, double beta) : beta_(beta) {
    log_values_ = kernel_log_column(n_max, beta);
    const double quad = kernel_quadrature_log(n_max, beta);
    if (std::abs(quad - log_values_.back()) > 1e-8) {
        throw numerical_error("KernelIntegralTable: closed form and quadrature disagree "
                              "beyond 1e-8 at n=" + std::to_string(n_max));
    }
}

double KernelIntegralTable::value(int n) const { return std::exp(log_value(n)); }

double KernelIntegralTable::log_value(int n) const {
    if (n < 0 || n >= static_cast<int>(log_values_.size())) {
        throw validation_error("KernelIntegralTable: index out of range");
    }
    return log_values_[static_cast<std::size_t>(n)];
}

} // namespace wishart_sum
