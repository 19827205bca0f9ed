// SPDX-License-Identifier: Apache-2.0

#include "wishart_sum/eigen_density.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "wishart_sum/errors.hpp"
#include "wishart_sum/quadrature.hpp"
#include "wishart_sum/special_functions.hpp"

#include "detail/state.hpp"

namespace wishart_sum {

namespace detail {
namespace {

double density_eval(DensityState &st, double lambda) {
    const int last = st.last_rung();
    double short_digits = 0.0;
    for (int r = std::max(0, st.base_rung); r <= last; ++r) {
        auto h = rung_ctx(st, r);
        if (!h) continue;
        bool enough = true;
        const double val = with_rung(r, [&]<class E>(TypeTag<E>) -> double {
            auto rc = std::static_pointer_cast<DensityRungCtx<E>>(h);
            std::vector<E> a;
            std::vector<double> amp;
            assemble_bordered(rc->ctx, lambda, a, amp);
            DetResult<E> db = lu_det(static_cast<std::size_t>(rc->ctx.p) + 1, a, amp);
            if (db.singular) return 0.0;
            if (db.digits() < kMinDigitsEval) {
                enough = false;
                short_digits = db.digits();
                return 0.0;
            }
            SignedLogValue ratio = slv_of(db.det) / slv_of(rc->det_h.det);
            ratio.sign = -ratio.sign;
            ratio.log_magnitude -= std::log(static_cast<double>(st.m));
            if (ratio.is_zero()) return 0.0;
            if (ratio.log_magnitude > 300.0) {
                throw numerical_error("density: evaluated absurdly large; formation bug");
            }
            return ratio.value();
        });
        if (!enough) continue;
        {
            std::lock_guard<std::mutex> lk(st.guard);
            st.widest_used = std::max(st.widest_used, r);
        }
        if (val < 0.0) {
            const double tol = 1e-8 * st.m / st.scale;
            if (val >= -tol) return 0.0;
            throw numerical_error("density: negative value " + std::to_string(val) +
                                  " beyond round-off tolerance at lambda=" +
                                  std::to_string(lambda));
        }
        return val;
    }
    if (st.mode == PrecisionMode::standard) {
        throw numerical_error(
            "density: double precision keeps only " + std::to_string(short_digits) +
            " digits here; rerun in extended precision mode");
    }
    throw precision_error("density: precision ladder exhausted at lambda=" +
                          std::to_string(lambda));
}

} // namespace
} // namespace detail

double entry_f(int j, int m, double v, double lambda) {
    if (j < 1 || m < 1) throw validation_error("entry_f: indices start at 1");
    if (!(v > 0.0) || !(lambda >= 0.0)) throw validation_error("entry_f: bad argument");
    const double x = lambda / v;
    return std::tgamma(static_cast<double>(j)) * std::pow(v, j - m - 1) * std::exp(-x) *
           assoc_laguerre(j - 1, m - j + 1, x);
}

double entry_g(int i, int m, double lambda) {
    if (i < 1 || m < 1) throw validation_error("entry_g: indices start at 1");
    if (!(lambda >= 0.0)) throw validation_error("entry_g: bad argument");
    if (i > m) return 0.0;
    return std::pow(lambda, m - i) * recip_gamma_int(m - i + 1);
}

double entry_h(int i, int j, double v) {
    if (i < 1 || j < 1) throw validation_error("entry_h: indices start at 1");
    if (!(v > 0.0)) throw validation_error("entry_h: bad argument");
    if (j > i) return 0.0;
    return std::exp(log_gamma(i) - log_gamma(i - j + 1)) * std::pow(v, j - i);
}

DensityEvaluator build_evaluator(const SumSpec &spec, const EvaluatorOptions &opts) {
    DensityEvaluator ev;
    ev.spec_ = spec;
    ev.opts_ = opts;

    auto st = detail::make_density_state(spec, opts);
    ev.v_ = st->v;
    ev.p_ = st->pk;

    // find the first rung whose normalization holds enough digits
    const int last = st->last_rung();
    for (int r = 0; r <= last; ++r) {
        if (detail::rung_ctx(*st, r)) {
            st->base_rung = r;
            st->widest_used = r;
            break;
        }
    }
    if (st->base_rung < 0) {
        if (st->mode == PrecisionMode::standard) {
            throw numerical_error("evaluator: normalization needs more than double "
                                  "precision; rerun in extended precision mode");
        }
        throw precision_error("evaluator: normalization exceeded the precision ladder");
    }

    // normalization constant in the unscaled convention, sign from det H
    detail::with_rung(st->base_rung, [&]<class E>(detail::TypeTag<E>) {
        auto rc = std::static_pointer_cast<detail::DensityRungCtx<E>>(
            st->rungs[static_cast<std::size_t>(st->base_rung)]);
        SignedLogValue dh = detail::slv_of(rc->det_h.det);
        st->norm_c.sign = -dh.sign;
        st->norm_c.log_magnitude =
            -(std::log(static_cast<double>(st->m)) + dh.log_magnitude + st->log_sigma);
    });

    ev.state_ = std::move(st);
    return ev;
}

double DensityEvaluator::density(double lambda) const {
    if (!(lambda > 0.0)) {
        throw validation_error("density: defined for lambda > 0");
    }
    return detail::density_eval(*state_, lambda);
}

std::vector<double> DensityEvaluator::density_grid(const std::vector<double> &lambdas) const {
    std::vector<double> out;
    out.reserve(lambdas.size());
    for (double l : lambdas) out.push_back(density(l));
    return out;
}

double DensityEvaluator::cdf(double lambda) const {
    if (!(lambda >= 0.0)) throw validation_error("cdf: lambda must be nonnegative");
    if (lambda == 0.0) return 0.0;
    return integrate([this](double x) { return density(x); }, 0.0, lambda, 1e-10, 1e-13).value;
}

double DensityEvaluator::mean() const {
    return integrate_semi_infinite([this](double x) { return x * density(x); }, 0.0,
                                   state_->scale, 1e-10)
        .value;
}

std::string DensityEvaluator::rung() const {
    std::lock_guard<std::mutex> lk(state_->guard);
    return detail::rung_name(state_->widest_used);
}

SignedLogValue DensityEvaluator::log_norm() const { return state_->norm_c; }

std::vector<double> make_lambda_grid(const SumSpec &spec, int n) {
    spec.validate();
    if (n < 2) throw validation_error("make_lambda_grid: need at least two points");
    const double s = moment_summary(spec).mean;
    const double lo = 1e-6 * s;
    const double hi = 4.0 * s;
    std::vector<double> grid(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    }
    return grid;
}

double density_distinct(int m, const std::vector<double> &v, double lambda) {
    using S = detail::Scaled<double>;
    using EG = detail::Engine<S>;
    const int p = static_cast<int>(v.size());
    if (m < 1 || p < m) throw validation_error("density_distinct: need size >= m >= 1");
    if (!(lambda > 0.0)) throw validation_error("density_distinct: lambda must be positive");
    std::vector<double> u;
    for (double vi : v) {
        if (!(vi > 0.0)) throw validation_error("density_distinct: weights must be positive");
        u.push_back(1.0 / vi);
    }
    const double umax = *std::max_element(u.begin(), u.end());
    for (int i = 0; i < p; ++i) {
        for (int j = i + 1; j < p; ++j) {
            if (std::abs(u[i] - u[j]) <= 1e-6 * umax) {
                throw validation_error("density_distinct: weights too close; use the "
                                       "confluent evaluator instead");
            }
        }
    }

    const int n = p + 1;
    std::vector<S> a(static_cast<std::size_t>(n) * n, S{});
    for (int j = 1; j <= p; ++j) {
        S up = EG::from_double(1.0);
        const S uj = EG::from_double(u[j - 1]);
        for (int t = 0; t < m; ++t) up = up * uj;
        a[static_cast<std::size_t>(j)] =
            up * detail::scaled_exp(EG::from_double(-u[j - 1]) * EG::from_double(lambda));
    }
    for (int i = 1; i <= p; ++i) {
        if (i <= m) {
            a[static_cast<std::size_t>(i) * n] =
                EG::from_double(std::pow(lambda, m - i) * recip_gamma_int(m - i + 1));
        }
        for (int j = 1; j <= p; ++j) {
            S up = EG::from_double(1.0);
            const S uj = EG::from_double(u[j - 1]);
            for (int t = 0; t < i - 1; ++t) up = up * uj;
            a[static_cast<std::size_t>(i) * n + j] = up;
        }
    }
    detail::DetResult<S> dd = lu_det(static_cast<std::size_t>(n), a, {});
    if (dd.digits() < 5.0) {
        throw numerical_error("density_distinct: too ill-conditioned; weights nearly "
                              "confluent");
    }

    SignedLogValue delta = SignedLogValue::from_value(1.0);
    for (int i = 0; i < p; ++i) {
        for (int j = i + 1; j < p; ++j) {
            delta = delta * SignedLogValue::from_value(u[j] - u[i]);
        }
    }
    SignedLogValue ratio = detail::slv_of(dd.det) / delta;
    ratio.sign = -ratio.sign;
    ratio.log_magnitude -= std::log(static_cast<double>(m));
    if (ratio.is_zero()) return 0.0;
    const double val = ratio.value();
    return val < 0.0 && val > -1e-12 ? 0.0 : val;
}

} // namespace wishart_sum
