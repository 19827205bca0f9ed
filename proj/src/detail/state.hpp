// SPDX-License-Identifier: Apache-2.0
//
// Shared evaluation state: merged weight blocks plus lazily built per-rung
// formation contexts with their normalization determinants. Used by both the
// density and the capacity routes.
#pragma once

#include <cmath>
#include <memory>
#include <mutex>
#include <vector>

#include "wishart_sum/eigen_density.hpp"
#include "wishart_sum/errors.hpp"
#include "wishart_sum/numeric_core.hpp"
#include "wishart_sum/special_functions.hpp"
#include "wishart_sum/wishart_model.hpp"

#include "entries.hpp"
#include "ladder.hpp"
#include "lu.hpp"

namespace wishart_sum::detail {

// digits the elimination monitor must leave standing
constexpr double kMinDigitsNorm = 7.0;
constexpr double kMinDigitsEval = 6.5;

template <class E> struct DensityRungCtx {
    FormationContext<E> ctx;
    DetResult<E> det_h;
};

struct DensityState {
    int m = 0;
    std::vector<double> v; // merged per-degree weights
    std::vector<double> u; // their inverses
    std::vector<int> pk;   // merged block degree counts
    bool balanced = true;
    PrecisionMode mode = PrecisionMode::extended;
    double scale = 1.0;     // sigma2 sum a: the density's natural magnitude
    double log_sigma = 0.0; // ln of the product of balancing factors

    std::mutex guard;
    int base_rung = -1;
    int widest_used = 0;
    SignedLogValue norm_c;
    std::vector<std::shared_ptr<void>> rungs{std::vector<std::shared_ptr<void>>(kRungCount)};
    std::vector<char> rung_failed{std::vector<char>(kRungCount, 0)};

    int last_rung() const {
        return mode == PrecisionMode::standard ? kRungDouble : kRungCount - 1;
    }
};

// build (or fetch) one rung's formation context; null means the
// normalization determinant cannot keep enough digits at this rung
inline std::shared_ptr<void> rung_ctx(DensityState &st, int idx) {
    std::lock_guard<std::mutex> lk(st.guard);
    if (st.rung_failed[static_cast<std::size_t>(idx)]) return nullptr;
    if (st.rungs[static_cast<std::size_t>(idx)]) return st.rungs[static_cast<std::size_t>(idx)];
    auto built = with_rung(idx, [&]<class E>(TypeTag<E>) -> std::shared_ptr<void> {
        auto rc = std::make_shared<DensityRungCtx<E>>();
        rc->ctx = build_formation<E>(st.m, st.u, st.pk, st.balanced);
        std::vector<E> a = rc->ctx.hbody;
        std::vector<double> amp = rc->ctx.hamp;
        rc->det_h = lu_det(static_cast<std::size_t>(rc->ctx.p), a, amp);
        if (rc->det_h.singular) {
            throw numerical_error("normalization determinant vanished; block weights "
                                  "are too close without being merged");
        }
        if (rc->det_h.digits() < kMinDigitsNorm) return nullptr;
        return rc;
    });
    if (built) {
        st.rungs[static_cast<std::size_t>(idx)] = built;
    } else {
        st.rung_failed[static_cast<std::size_t>(idx)] = 1;
    }
    return built;
}

inline std::shared_ptr<DensityState> make_density_state(const SumSpec &spec,
                                                        const EvaluatorOptions &opts) {
    spec.validate();
    if (!(opts.merge_rel_tol >= 0.0) || !(opts.merge_rel_tol < 1e-3)) {
        throw validation_error("evaluator: merge tolerance out of range");
    }
    auto st = std::make_shared<DensityState>();
    st->m = spec.m;
    st->balanced = opts.column_balancing;
    st->mode = opts.mode;
    st->scale = moment_summary(spec).mean;

    // merge terms whose per-degree weights coincide to tolerance: repeated
    // weights must share one derivative block or the normalization vanishes
    const std::vector<double> vraw = weight_per_dof(spec);
    for (std::size_t t = 0; t < vraw.size(); ++t) {
        bool joined = false;
        for (std::size_t b = 0; b < st->v.size(); ++b) {
            if (std::abs(vraw[t] - st->v[b]) <=
                opts.merge_rel_tol * std::max(vraw[t], st->v[b])) {
                st->pk[b] += spec.terms[t].p;
                joined = true;
                break;
            }
        }
        if (!joined) {
            st->v.push_back(vraw[t]);
            st->pk.push_back(spec.terms[t].p);
        }
    }
    for (double v : st->v) st->u.push_back(1.0 / v);
    if (opts.column_balancing) {
        for (std::size_t k = 0; k < st->v.size(); ++k) {
            for (int j = 1; j <= st->pk[k]; ++j) {
                st->log_sigma += log_gamma(j) + j * std::log(st->v[k]);
            }
        }
    }
    return st;
}

} // namespace wishart_sum::detail
