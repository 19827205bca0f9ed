// SPDX-License-Identifier: Apache-2.0
//
// Uniform static interface over the precision-ladder scalars so formation and
// factorization code is written once and instantiated per rung.
#pragma once

#include <cmath>
#include <string>

#include "bigfloat.hpp"
#include "scalars.hpp"

namespace wishart_sum::detail {

template <class E> struct Engine;

template <class T> struct Engine<Scaled<T>> {
    using S = Scaled<T>;
    static S from_double(double x) { return S::from_double(x); }
    static bool is_zero(const S &x) { return x.is_zero(); }
    static int sign(const S &x) {
        const double h = ScaledTraits<T>::hi(x.m);
        return (h > 0.0) - (h < 0.0);
    }
    static double log2_mag(const S &x) { return x.log2_magnitude(); }
    static double to_double(const S &x) { return x.to_double(); }
    static double eps() { return ScaledTraits<T>::eps; }
    static S exp(const S &x) { return scaled_exp(x); }
    static S ln2_val() { return S::from_mantissa(ScaledTraits<T>::ln2(), 0); }
    static std::string name() {
        return ScaledTraits<T>::prec_bits > 53 ? "double-double" : "double";
    }
};

#ifdef WISHART_SUM_HAVE_MPFR
template <> struct Engine<BigFloat> {
    using S = BigFloat;
    static S from_double(double x) { return BigFloat(x); }
    static bool is_zero(const S &x) { return x.is_zero(); }
    static int sign(const S &x) { return x.sign(); }
    static double log2_mag(const S &x) { return x.log2_magnitude(); }
    static double to_double(const S &x) { return x.to_double(); }
    static double eps() {
        return std::ldexp(1.0, static_cast<int>(1 - BigFloat::default_prec()));
    }
    static S exp(const S &x) { return BigFloat::exp(x); }
    static S ln2_val() { return BigFloat::ln2(BigFloat::default_prec()); }
    static std::string name() {
        return "mpfr-" + std::to_string(static_cast<long>(BigFloat::default_prec()));
    }
};
#endif

} // namespace wishart_sum::detail
