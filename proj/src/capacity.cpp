// SPDX-License-Identifier: Apache-2.0

#include "wishart_sum/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wishart_sum/errors.hpp"
#include "wishart_sum/quadrature.hpp"
#include "wishart_sum/special_functions.hpp"

#include "detail/state.hpp"

namespace wishart_sum {

namespace {

// sum over row swaps of det(psi_mu) / det(H) at the first rung that holds
// enough digits through every determinant
CapacityResult capacity_by_determinants(detail::DensityState &st) {
    const int last = st.last_rung();
    double short_digits = 0.0;
    for (int r = 0; r <= last; ++r) {
        auto h = detail::rung_ctx(st, r);
        if (!h) continue;
        bool enough = true;
        double err = 0.0;
        const double bits = detail::with_rung(r, [&]<class E>(detail::TypeTag<E>) -> double {
            auto rc = std::static_pointer_cast<detail::DensityRungCtx<E>>(h);
            ensure_kernels(rc->ctx);
            const SignedLogValue den = detail::slv_of(rc->det_h.det);
            const double den_err = rc->det_h.est_rel_err;
            double total = 0.0;
            for (int mu = 1; mu <= st.m; ++mu) {
                std::vector<E> a;
                std::vector<double> amp;
                assemble_capacity_row_swap(rc->ctx, mu, a, amp);
                detail::DetResult<E> dp =
                    lu_det(static_cast<std::size_t>(rc->ctx.p), a, amp);
                if (dp.singular) continue;
                if (dp.digits() < detail::kMinDigitsEval) {
                    enough = false;
                    short_digits = dp.digits();
                    return 0.0;
                }
                const SignedLogValue term = detail::slv_of(dp.det) / den;
                const double val = term.value();
                total += val;
                err += std::abs(val) * (dp.est_rel_err + den_err);
            }
            return total;
        });
        if (!enough) continue;
        {
            std::lock_guard<std::mutex> lk(st.guard);
            st.widest_used = std::max(st.widest_used, r);
        }
        if (!std::isfinite(bits) || bits <= 0.0) {
            throw numerical_error("capacity: determinant route evaluated nonpositive");
        }
        return {bits, "determinant:" + detail::rung_name(r), err};
    }
    if (st.mode == PrecisionMode::standard) {
        throw numerical_error(
            "capacity: double precision keeps only " + std::to_string(short_digits) +
            " digits here; rerun in extended precision mode");
    }
    throw precision_error("capacity: precision ladder exhausted");
}

} // namespace

CapacityResult capacity_determinantal(const SumSpec &spec, const EvaluatorOptions &opts) {
    auto st = detail::make_density_state(spec, opts);
    return capacity_by_determinants(*st);
}

CapacityResult capacity_quadrature(const SumSpec &spec, const EvaluatorOptions &opts) {
    const DensityEvaluator ev = build_evaluator(spec, opts);
    const double scale = moment_summary(spec).mean;
    const QuadratureResult q = integrate_semi_infinite(
        [&](double lam) { return ev.density(lam) * std::log2(1.0 + lam); }, 0.0, scale,
        1e-10);
    const double bits = spec.m * q.value;
    if (!std::isfinite(bits) || bits <= 0.0) {
        throw numerical_error("capacity: quadrature route evaluated nonpositive");
    }
    return {bits, "quadrature:" + ev.rung(), spec.m * q.error_estimate + 1e-6 * bits};
}

CapacityResult capacity_approx(const SumSpec &spec, const EvaluatorOptions &opts) {
    CapacityResult r = capacity_determinantal(matched_single_term(spec), opts);
    r.method = "matched-" + r.method;
    return r;
}

double approximation_error(const SumSpec &spec, const EvaluatorOptions &opts) {
    const double exact = capacity_determinantal(spec, opts).bits;
    const double approx = capacity_approx(spec, opts).bits;
    return std::abs(approx - exact) / exact;
}

double capacity_distinct(int m, const std::vector<double> &v) {
    using S = detail::Scaled<double>;
    using EG = detail::Engine<S>;
    const int p = static_cast<int>(v.size());
    if (m < 1 || p < m) throw validation_error("capacity_distinct: need size >= m >= 1");
    std::vector<double> u;
    for (double vi : v) {
        if (!(vi > 0.0)) {
            throw validation_error("capacity_distinct: weights must be positive");
        }
        u.push_back(1.0 / vi);
    }
    const double umax = *std::max_element(u.begin(), u.end());
    for (int i = 0; i < p; ++i) {
        for (int j = i + 1; j < p; ++j) {
            if (std::abs(u[i] - u[j]) <= 1e-6 * umax) {
                throw validation_error("capacity_distinct: weights too close; use the "
                                       "confluent route instead");
            }
        }
    }

    // body determinant from the pairwise product
    SignedLogValue delta = SignedLogValue::from_value(1.0);
    for (int i = 0; i < p; ++i) {
        for (int j = i + 1; j < p; ++j) {
            delta = delta * SignedLogValue::from_value(u[j] - u[i]);
        }
    }

    // kernel values I(n, u_j) for n = 0..m-1, per column
    std::vector<std::vector<S>> kern(static_cast<std::size_t>(p));
    for (int j = 0; j < p; ++j) {
        double amp = 0.0;
        kern[static_cast<std::size_t>(j)] = detail::kernel_column_as<S>(m - 1, u[j], amp);
        if (amp > 1e6) {
            throw numerical_error("capacity_distinct: kernel too ill-conditioned here");
        }
    }

    double total = 0.0;
    for (int mu = 1; mu <= m; ++mu) {
        std::vector<S> a(static_cast<std::size_t>(p) * p);
        for (int i = 1; i <= p; ++i) {
            for (int j = 1; j <= p; ++j) {
                S &slot = a[static_cast<std::size_t>(i - 1) * p + (j - 1)];
                if (i == mu) {
                    S up = EG::from_double(1.0);
                    const S uj = EG::from_double(u[j - 1]);
                    for (int t = 0; t < m; ++t) up = up * uj;
                    slot = up * kern[static_cast<std::size_t>(j - 1)][m - mu] *
                           EG::from_double(recip_gamma_int(m - mu + 1) / std::numbers::ln2);
                } else {
                    S up = EG::from_double(1.0);
                    const S uj = EG::from_double(u[j - 1]);
                    for (int t = 0; t < i - 1; ++t) up = up * uj;
                    slot = up;
                }
            }
        }
        detail::DetResult<S> dp = lu_det(static_cast<std::size_t>(p), a, {});
        if (dp.digits() < 5.0) {
            throw numerical_error("capacity_distinct: too ill-conditioned; weights "
                                  "nearly confluent");
        }
        total += (detail::slv_of(dp.det) / delta).value();
    }
    if (!std::isfinite(total) || total <= 0.0) {
        throw numerical_error("capacity_distinct: evaluated nonpositive");
    }
    return total;
}

RelayResult relay_upper_bound(const SumSpec &first_hop, const SumSpec &second_hop,
                              const EvaluatorOptions &opts) {
    const CapacityResult a = capacity_determinantal(first_hop, opts);
    const CapacityResult b = capacity_determinantal(second_hop, opts);
    RelayResult r;
    r.first_hop_bits = a.bits;
    r.second_hop_bits = b.bits;
    r.bits = std::min(a.bits, b.bits);
    r.method = a.method == b.method ? a.method : a.method + "|" + b.method;
    return r;
}

} // namespace wishart_sum
