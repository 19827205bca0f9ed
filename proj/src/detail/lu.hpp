// SPDX-License-Identifier: Apache-2.0
//
// Determinant by LU with partial pivoting, templated over the ladder scalar,
// carrying a per-entry running error bound so a rung can report how many
// digits survived the elimination. Bounds follow the standard running error
// recurrence: on c = a - b the accumulated amplification is
//   A_c = A_a * |a|/|c| + A_b * |b|/|c| + 1
// and the determinant estimate is eps * sum of pivot amplifications.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "engine.hpp"

namespace wishart_sum::detail {

template <class E> struct DetResult {
    E det;             // signed value in the rung scalar
    bool singular = false;
    double est_rel_err = 0.0; // first-order bound on |det error| / |det|

    double digits() const {
        if (est_rel_err <= 0.0) return 300.0;
        return -std::log10(est_rel_err);
    }
};

// a: row-major n x n, destroyed. amp: matching per-entry formation
// amplification factors (units of rung eps); empty means exact entries.
template <class E>
DetResult<E> lu_det(std::size_t n, std::vector<E> &a, std::vector<double> amp) {
    using EG = Engine<E>;
    if (amp.empty()) amp.assign(n * n, 1.0);

    DetResult<E> res;
    res.det = EG::from_double(1.0);
    double amp_sum = 0.0;
    bool negate = false;

    const auto ratio = [](double l2_num, double l2_den) {
        const double d = l2_num - l2_den;
        if (d > 996.0) return 1e300;
        if (d < -996.0) return 0.0;
        return std::exp2(d);
    };

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = EG::log2_mag(a[k * n + k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double l2 = EG::log2_mag(a[i * n + k]);
            if (l2 > best) {
                best = l2;
                piv = i;
            }
        }
        if (EG::is_zero(a[piv * n + k])) {
            res.det = EG::from_double(0.0);
            res.singular = true;
            res.est_rel_err = 0.0;
            return res;
        }
        if (piv != k) {
            for (std::size_t j = k; j < n; ++j) {
                std::swap(a[k * n + j], a[piv * n + j]);
                std::swap(amp[k * n + j], amp[piv * n + j]);
            }
            negate = !negate;
        }

        const E &pivot = a[k * n + k];
        const double l2_piv = EG::log2_mag(pivot);
        const double amp_piv = amp[k * n + k];
        res.det = res.det * pivot;
        amp_sum += amp_piv + 1.0;

        for (std::size_t i = k + 1; i < n; ++i) {
            if (EG::is_zero(a[i * n + k])) continue;
            const E l = a[i * n + k] / pivot;
            const double amp_l = amp[i * n + k] + amp_piv + 1.0;
            const double l2_l = EG::log2_mag(l);
            for (std::size_t j = k + 1; j < n; ++j) {
                if (EG::is_zero(a[k * n + j])) continue;
                const E t = l * a[k * n + j];
                const double amp_t = amp_l + amp[k * n + j] + 1.0;
                const double l2_t = EG::log2_mag(t);
                const E old = a[i * n + j];
                const double l2_old = EG::log2_mag(old);
                const E nw = old - t;
                a[i * n + j] = nw;
                if (EG::is_zero(nw)) {
                    amp[i * n + j] = std::max(amp[i * n + j], amp_t);
                } else {
                    const double l2_new = EG::log2_mag(nw);
                    amp[i * n + j] = amp[i * n + j] * ratio(l2_old, l2_new) +
                                     amp_t * ratio(l2_t, l2_new) + 1.0;
                }
            }
        }
    }

    if (negate) res.det = -res.det;
    res.est_rel_err = EG::eps() * amp_sum * 4.0;
    return res;
}

} // namespace wishart_sum::detail
