// SPDX-License-Identifier: Apache-2.0
//
// The precision ladder: double, double-double, then arbitrary precision in
// doubling widths. Callers hand a generic lambda that runs one attempt at a
// given rung scalar and reports whether enough digits survived.
#pragma once

#include <numbers>
#include <string>

#include "wishart_sum/errors.hpp"
#include "wishart_sum/numeric_core.hpp"

#include "engine.hpp"

namespace wishart_sum::detail {

// sign / log-magnitude view of a ladder value, for forming ratios across rungs
template <class E> SignedLogValue slv_of(const E &x) {
    SignedLogValue s;
    s.sign = Engine<E>::sign(x);
    s.log_magnitude =
        s.sign == 0 ? -std::numeric_limits<double>::infinity()
                    : Engine<E>::log2_mag(x) * std::numbers::ln2;
    return s;
}

template <class E> struct TypeTag {};

inline constexpr int kRungDouble = 0;
inline constexpr int kRungDoubleDouble = 1;
inline constexpr int kFirstMpfrRung = 2;

#ifdef WISHART_SUM_HAVE_MPFR
inline constexpr int kRungCount = 6; // mpfr 256 / 512 / 1024 / 2048
inline long mpfr_bits_for_rung(int idx) { return 256L << (idx - kFirstMpfrRung); }
#else
inline constexpr int kRungCount = 2;
#endif

inline std::string rung_name(int idx) {
    if (idx == kRungDouble) return "double";
    if (idx == kRungDoubleDouble) return "double-double";
#ifdef WISHART_SUM_HAVE_MPFR
    return "mpfr-" + std::to_string(mpfr_bits_for_rung(idx));
#else
    return "unavailable";
#endif
}

// Invoke f with the rung's scalar type; for arbitrary-precision rungs the
// thread default precision is pinned for the duration of the call.
template <class F> decltype(auto) with_rung(int idx, F &&f) {
    switch (idx) {
        case kRungDouble:
            return f(TypeTag<Scaled<double>>{});
        case kRungDoubleDouble:
            return f(TypeTag<Scaled<DoubleDouble>>{});
        default:
#ifdef WISHART_SUM_HAVE_MPFR
            if (idx >= kFirstMpfrRung && idx < kRungCount) {
                PrecisionGuard guard(mpfr_bits_for_rung(idx));
                return f(TypeTag<BigFloat>{});
            }
#endif
            throw numerical_error("precision ladder: rung " + std::to_string(idx) +
                                  " is not built in");
    }
}

} // namespace wishart_sum::detail
