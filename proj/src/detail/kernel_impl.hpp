// SPDX-License-Identifier: Apache-2.0
//
// Rung-generic evaluation of the capacity kernel column
//
//   I(n, beta) = integral_0^inf x^n e^(-beta x) ln(1 + x) dx
//              = sum_k (-1)^(n-k) C(n,k) k! beta^(-k-1) Tp_k
//   Tp_k       = e^beta E1(beta) + sum_{r=1..k} (1/r) sum_{s<r} beta^s / s!
//
// The Tp_k are sums of positive terms; every cancellation lives in the outer
// alternating sum and is measured as max |term| / |result| so a rung can be
// chosen that leaves enough digits standing.
#pragma once

#include <cmath>
#include <vector>

#include "wishart_sum/errors.hpp"

#include "engine.hpp"

namespace wishart_sum::detail {

double exp_e1_double(double x); // special_functions.cpp

template <class E> struct KernelColumn {
    std::vector<E> values; // I(n, beta), n = 0..n_max
    double loss_bits = 0.0;
    int terms = 0;
};

template <class E>
KernelColumn<E> kernel_column_generic(int n_max, double beta, const E &exp_e1_beta) {
    using EG = Engine<E>;
    KernelColumn<E> out;
    const E b = EG::from_double(beta);
    const E one = EG::from_double(1.0);

    // Tp_k, built from strictly positive pieces
    std::vector<E> tp(static_cast<std::size_t>(n_max) + 1);
    tp[0] = exp_e1_beta;
    E ps = one; // sum_{s<k} beta^s/s!, currently k = 1
    E pw = one; // beta^(k-1)/(k-1)!
    for (int k = 1; k <= n_max; ++k) {
        tp[k] = tp[k - 1] + ps / EG::from_double(k);
        pw = pw * b / EG::from_double(k);
        ps = ps + pw;
    }

    // D_k = k! beta^(-k-1)
    std::vector<E> d(static_cast<std::size_t>(n_max) + 1);
    d[0] = one / b;
    for (int k = 1; k <= n_max; ++k) d[k] = d[k - 1] * EG::from_double(k) / b;

    out.values.resize(static_cast<std::size_t>(n_max) + 1);
    std::vector<E> binom{one}; // Pascal row C(n, .)
    for (int n = 0; n <= n_max; ++n) {
        if (n > 0) {
            binom.push_back(one);
            for (int k = n - 1; k >= 1; --k) binom[k] = binom[k] + binom[k - 1];
        }
        E acc = EG::from_double(0.0);
        double max_l2 = -1.0 / 0.0;
        for (int k = 0; k <= n; ++k) {
            E term = binom[k] * d[k] * tp[k];
            if ((n - k) % 2 != 0) term = -term;
            max_l2 = std::max(max_l2, EG::log2_mag(term));
            acc = acc + term;
        }
        if (EG::is_zero(acc) || EG::to_double(acc) < 0.0) {
            // the integral is strictly positive: total cancellation at this rung
            out.loss_bits = 4000.0;
            out.values[n] = EG::from_double(0.0);
            continue;
        }
        out.values[n] = acc;
        out.loss_bits = std::max(out.loss_bits, max_l2 - EG::log2_mag(acc));
        out.terms = std::max(out.terms, n + 1);
    }
    return out;
}

inline KernelColumn<Scaled<double>> kernel_column_double(int n_max, double beta) {
    return kernel_column_generic<Scaled<double>>(
        n_max, beta, Scaled<double>::from_double(exp_e1_double(beta)));
}

#ifdef WISHART_SUM_HAVE_MPFR

// e^x E1(x) by the power series at padded precision; the series loses about
// 1.443 x bits to cancellation, which the pad absorbs.
inline BigFloat exp_e1_mpfr(double x, mpfr_prec_t out_prec) {
    const auto pad = static_cast<mpfr_prec_t>(1.45 * x + 48.0);
    PrecisionGuard guard(out_prec + pad);
    const mpfr_prec_t work = BigFloat::default_prec();
    const BigFloat bx(x);
    BigFloat sum = -BigFloat::euler_gamma(work) - BigFloat::ln(bx);
    BigFloat pw(1.0); // x^k / k!
    // E1(x) itself sits near 2^(-1.443 x), so terms must fall that far below
    // the requested output precision before truncation is safe
    const double stop_l2 = -static_cast<double>(out_prec) - 16.0 - 1.443 * x;
    for (int k = 1; k < 100000; ++k) {
        pw = pw * bx / BigFloat(static_cast<double>(k));
        BigFloat term = pw / BigFloat(static_cast<double>(k));
        if (k % 2 == 0) term = -term;
        sum = sum + term;
        if (pw.log2_magnitude() < stop_l2) break;
    }
    BigFloat res = BigFloat::exp(bx) * sum;
    BigFloat rounded;
    mpfr_set_prec(rounded.raw(), out_prec);
    mpfr_set(rounded.raw(), res.raw(), MPFR_RNDN);
    return rounded;
}

inline KernelColumn<BigFloat> kernel_column_mpfr(int n_max, double beta,
                                                mpfr_prec_t out_prec) {
    mpfr_prec_t pad = 96;
    for (int attempt = 0; attempt < 4; ++attempt) {
        PrecisionGuard guard(out_prec + pad);
        KernelColumn<BigFloat> col =
            kernel_column_generic<BigFloat>(n_max, beta, exp_e1_mpfr(beta, out_prec + pad));
        if (col.loss_bits + 16.0 <= static_cast<double>(pad)) {
            for (BigFloat &v : col.values) {
                BigFloat r;
                mpfr_set_prec(r.raw(), out_prec);
                mpfr_set(r.raw(), v.raw(), MPFR_RNDN);
                v = std::move(r);
            }
            col.loss_bits = 0.0; // absorbed by the pad
            return col;
        }
        pad = static_cast<mpfr_prec_t>(col.loss_bits) + 96;
    }
    throw numerical_error("capacity kernel: cancellation kept outrunning the precision pad");
}

inline Scaled<DoubleDouble> bigfloat_to_scaled_dd(const BigFloat &v) {
    if (v.is_zero()) return {};
    long e = 0;
    (void)mpfr_get_d_2exp(&e, v.raw(), MPFR_RNDN);
    BigFloat t = v;
    mpfr_div_2si(t.raw(), t.raw(), e, MPFR_RNDN);
    const double hi = mpfr_get_d(t.raw(), MPFR_RNDN);
    mpfr_sub_d(t.raw(), t.raw(), hi, MPFR_RNDN);
    const double lo = mpfr_get_d(t.raw(), MPFR_RNDN);
    return Scaled<DoubleDouble>::from_mantissa(DoubleDouble{hi, lo}, e);
}

#endif // WISHART_SUM_HAVE_MPFR

// Kernel column in the requested rung scalar. amp_out reports the relative
// error of the returned values in units of that rung's eps, for seeding the
// elimination monitor.
template <class E> std::vector<E> kernel_column_as(int n_max, double beta, double &amp_out);

template <>
inline std::vector<Scaled<double>> kernel_column_as(int n_max, double beta, double &amp_out) {
    KernelColumn<Scaled<double>> col = kernel_column_double(n_max, beta);
    amp_out = std::exp2(std::min(col.loss_bits, 900.0)) * (col.terms + 8);
    return std::move(col.values);
}

template <>
inline std::vector<Scaled<DoubleDouble>> kernel_column_as(int n_max, double beta,
                                                          double &amp_out) {
#ifdef WISHART_SUM_HAVE_MPFR
    KernelColumn<BigFloat> col = kernel_column_mpfr(n_max, beta, 128);
    std::vector<Scaled<DoubleDouble>> out;
    out.reserve(col.values.size());
    for (const BigFloat &v : col.values) out.push_back(bigfloat_to_scaled_dd(v));
    amp_out = 8.0;
    return out;
#else
    // best effort without the arbitrary-precision rung: double values carried
    // into double-double slots, honestly reported at about 2^52 amplification
    KernelColumn<Scaled<double>> col = kernel_column_double(n_max, beta);
    std::vector<Scaled<DoubleDouble>> out;
    out.reserve(col.values.size());
    for (const Scaled<double> &v : col.values) {
        out.push_back(Scaled<DoubleDouble>::from_mantissa(DoubleDouble(v.m), v.e));
    }
    amp_out = std::exp2(std::min(col.loss_bits + 52.0, 900.0)) * (col.terms + 8);
    return out;
#endif
}

#ifdef WISHART_SUM_HAVE_MPFR
template <>
inline std::vector<BigFloat> kernel_column_as(int n_max, double beta, double &amp_out) {
    KernelColumn<BigFloat> col = kernel_column_mpfr(n_max, beta, BigFloat::default_prec());
    amp_out = 8.0;
    return std::move(col.values);
}
#endif

} // namespace wishart_sum::detail
