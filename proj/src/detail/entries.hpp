// SPDX-License-Identifier: Apache-2.0
//
// Formation of the determinantal matrices at one precision rung.
//
// Per-degree weights v_k enter as u_k = 1/v_k. Column (k, j) of the body is
// the (j-1)-th derivative in u of u^(i-1) at u_k, the matching border-row
// entry is the same derivative of u^m e^(-u lambda), and the capacity row is
// its integral against lambda powers and log2(1 + lambda), which lands on the
// kernel I(n, u_k).
//
// With balancing on, column (k, j) is divided by Gamma(j) v_k^j; the factor
// is common to numerator and normalization and cancels in every ratio.
//
// Every entry carries an amplification estimate (units of rung eps) from
// measured cancellation in its alternating sum plus the exponential-argument
// sensitivity |u lambda|; these seed the elimination monitor.
#pragma once

#include <cmath>
#include <vector>

#include "engine.hpp"
#include "kernel_impl.hpp"

namespace wishart_sum::detail {

template <class E> struct FormationContext {
    using EG = Engine<E>;

    int m = 0;
    int p = 0;
    bool balanced = true;
    std::vector<double> u;   // inverse block weights
    std::vector<int> pk;     // block degree counts
    std::vector<int> offset; // first body column of each block

    std::vector<std::vector<E>> pascal; // pascal[n][s] = C(n, s)
    std::vector<E> ff;                  // m!/(m-s)!
    std::vector<E> gamma_int;           // Gamma(t), index t >= 1
    std::vector<E> recip_gamma;         // 1/Gamma(t)
    std::vector<std::vector<E>> upow;   // u_k^t, t = 0..m+p
    E zero, one, recip_ln2;

    std::vector<E> hbody; // p x p body, row-major
    std::vector<double> hamp;

    std::vector<std::vector<E>> kernel; // I(n, u_k), built on demand
    std::vector<double> kernel_amp;

    int col(int k, int j) const { return offset[static_cast<std::size_t>(k)] + j - 1; }
};

template <class E>
void form_h_entry(const FormationContext<E> &c, int i, int k, int j, E &out, double &amp) {
    if (j > i) {
        out = c.zero;
        amp = 1.0;
        return;
    }
    if (c.balanced) {
        out = c.pascal[i - 1][j - 1] * c.upow[k][i];
    } else {
        out = c.gamma_int[i] * c.recip_gamma[i - j + 1] * c.upow[k][i - j];
    }
    amp = 6.0;
}

// lampow must hold lambda^t for t = 0..p-1; exp_k is e^(-u_k lambda).
template <class E>
void form_f_entry(const FormationContext<E> &c, int k, int j, const std::vector<E> &lampow,
                  const E &exp_k, double ulam, E &out, double &amp) {
    using EG = Engine<E>;
    const int s_hi = std::min(j - 1, c.m);
    E acc = c.zero;
    double max_l2 = -1.0 / 0.0;
    for (int s = 0; s <= s_hi; ++s) {
        E term = c.pascal[j - 1][s] * c.ff[s] *
                 c.upow[k][c.balanced ? c.m + j - s : c.m - s] * lampow[j - 1 - s];
        if ((j - 1 - s) % 2 != 0) term = -term;
        max_l2 = std::max(max_l2, EG::log2_mag(term));
        acc = acc + term;
    }
    double loss = 0.0;
    if (!EG::is_zero(acc)) loss = std::max(0.0, max_l2 - EG::log2_mag(acc));
    acc = acc * exp_k;
    if (c.balanced) acc = acc * c.recip_gamma[j];
    out = acc;
    amp = std::exp2(std::min(loss, 900.0)) * (s_hi + 3) + 1.5 * std::abs(ulam) + 6.0;
}

template <class E>
void form_g_entry(const FormationContext<E> &c, int i, const std::vector<E> &lampow, E &out,
                  double &amp) {
    if (i > c.m) {
        out = c.zero;
        amp = 1.0;
        return;
    }
    out = lampow[c.m - i] * c.recip_gamma[c.m - i + 1];
    amp = 3.0;
}

template <class E>
void form_gcal_entry(const FormationContext<E> &c, int mu, int k, int j, E &out, double &amp) {
    using EG = Engine<E>;
    const int s_hi = std::min(j - 1, c.m);
    E acc = c.zero;
    double max_l2 = -1.0 / 0.0;
    for (int s = 0; s <= s_hi; ++s) {
        E term = c.pascal[j - 1][s] * c.ff[s] *
                 c.upow[k][c.balanced ? c.m + j - s : c.m - s] *
                 c.kernel[k][c.m - mu + j - 1 - s];
        if ((j - 1 - s) % 2 != 0) term = -term;
        max_l2 = std::max(max_l2, EG::log2_mag(term));
        acc = acc + term;
    }
    double loss = 0.0;
    if (!EG::is_zero(acc)) loss = std::max(0.0, max_l2 - EG::log2_mag(acc));
    acc = acc * c.recip_ln2 * c.recip_gamma[c.m - mu + 1];
    if (c.balanced) acc = acc * c.recip_gamma[j];
    out = acc;
    amp = std::exp2(std::min(loss, 900.0)) * (s_hi + 3) + c.kernel_amp[k] + 8.0;
}

template <class E>
FormationContext<E> build_formation(int m, const std::vector<double> &u,
                                    const std::vector<int> &pk, bool balanced) {
    using EG = Engine<E>;
    FormationContext<E> c;
    c.m = m;
    c.balanced = balanced;
    c.u = u;
    c.pk = pk;
    c.zero = EG::from_double(0.0);
    c.one = EG::from_double(1.0);
    c.recip_ln2 = c.one / EG::ln2_val();

    c.p = 0;
    for (std::size_t k = 0; k < pk.size(); ++k) {
        c.offset.push_back(c.p);
        c.p += pk[k];
    }

    c.pascal.resize(static_cast<std::size_t>(c.p));
    for (int n = 0; n < c.p; ++n) {
        auto &row = c.pascal[static_cast<std::size_t>(n)];
        row.assign(static_cast<std::size_t>(n) + 1, c.one);
        for (int s = 1; s < n; ++s) {
            row[s] = c.pascal[n - 1][s - 1] + c.pascal[n - 1][s];
        }
    }

    const int s_max = std::min(m, c.p - 1);
    c.ff.assign(static_cast<std::size_t>(s_max) + 1, c.one);
    for (int s = 1; s <= s_max; ++s) {
        c.ff[s] = c.ff[s - 1] * EG::from_double(m - s + 1);
    }

    const int g_max = std::max(c.p, m) + 1;
    c.gamma_int.assign(static_cast<std::size_t>(g_max) + 1, c.one);
    c.recip_gamma.assign(static_cast<std::size_t>(g_max) + 1, c.one);
    for (int t = 2; t <= g_max; ++t) {
        c.gamma_int[t] = c.gamma_int[t - 1] * EG::from_double(t - 1);
        c.recip_gamma[t] = c.one / c.gamma_int[t];
    }

    c.upow.resize(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) {
        auto &pw = c.upow[k];
        pw.assign(static_cast<std::size_t>(m + c.p) + 1, c.one);
        const E uk = EG::from_double(u[k]);
        for (int t = 1; t <= m + c.p; ++t) pw[t] = pw[t - 1] * uk;
    }

    c.hbody.assign(static_cast<std::size_t>(c.p) * c.p, c.zero);
    c.hamp.assign(static_cast<std::size_t>(c.p) * c.p, 1.0);
    for (int i = 1; i <= c.p; ++i) {
        for (std::size_t k = 0; k < pk.size(); ++k) {
            for (int j = 1; j <= pk[k]; ++j) {
                const std::size_t at =
                    static_cast<std::size_t>(i - 1) * c.p + c.col(static_cast<int>(k), j);
                form_h_entry(c, i, static_cast<int>(k), j, c.hbody[at], c.hamp[at]);
            }
        }
    }
    return c;
}

template <class E> void ensure_kernels(FormationContext<E> &c) {
    if (!c.kernel.empty()) return;
    c.kernel.resize(c.u.size());
    c.kernel_amp.assign(c.u.size(), 1.0);
    for (std::size_t k = 0; k < c.u.size(); ++k) {
        const int n_max = c.m + c.pk[k] - 2;
        c.kernel[k] = kernel_column_as<E>(n_max, c.u[k], c.kernel_amp[k]);
    }
}

// Bordered (p+1)x(p+1) matrix of the density numerator at one lambda.
template <class E>
void assemble_bordered(const FormationContext<E> &c, double lambda, std::vector<E> &a,
                       std::vector<double> &amp) {
    using EG = Engine<E>;
    const int n = c.p + 1;
    a.assign(static_cast<std::size_t>(n) * n, c.zero);
    amp.assign(static_cast<std::size_t>(n) * n, 1.0);

    std::vector<E> lampow(static_cast<std::size_t>(std::max(c.p, c.m)), c.one);
    const E lam = EG::from_double(lambda);
    for (std::size_t t = 1; t < lampow.size(); ++t) lampow[t] = lampow[t - 1] * lam;

    for (std::size_t k = 0; k < c.u.size(); ++k) {
        const E ex = EG::exp(EG::from_double(-c.u[k]) * lam);
        const double ulam = c.u[k] * lambda;
        for (int j = 1; j <= c.pk[k]; ++j) {
            const std::size_t at = static_cast<std::size_t>(1 + c.col(static_cast<int>(k), j));
            form_f_entry(c, static_cast<int>(k), j, lampow, ex, ulam, a[at], amp[at]);
        }
    }
    for (int i = 1; i <= c.p; ++i) {
        const std::size_t at = static_cast<std::size_t>(i) * n;
        form_g_entry(c, i, lampow, a[at], amp[at]);
        for (int cc = 0; cc < c.p; ++cc) {
            a[at + 1 + cc] = c.hbody[static_cast<std::size_t>(i - 1) * c.p + cc];
            amp[at + 1 + cc] = c.hamp[static_cast<std::size_t>(i - 1) * c.p + cc];
        }
    }
}

// Body with row mu (1-based) replaced by the capacity row.
template <class E>
void assemble_capacity_row_swap(const FormationContext<E> &c, int mu, std::vector<E> &a,
                                std::vector<double> &amp) {
    a = c.hbody;
    amp = c.hamp;
    for (std::size_t k = 0; k < c.u.size(); ++k) {
        for (int j = 1; j <= c.pk[k]; ++j) {
            const std::size_t at =
                static_cast<std::size_t>(mu - 1) * c.p + c.col(static_cast<int>(k), j);
            form_gcal_entry(c, mu, static_cast<int>(k), j, a[at], amp[at]);
        }
    }
}

} // namespace wishart_sum::detail
