// SPDX-License-Identifier: Apache-2.0
//
// RAII wrapper over MPFR for the top rung of the precision ladder.
// Compiled out entirely when MPFR is not available.
#pragma once

#ifdef WISHART_SUM_HAVE_MPFR

#include <cstdint>
#include <utility>

#include <mpfr.h>

namespace wishart_sum::detail {

class BigFloat {
  public:
    // Working precision for newly constructed values, per thread so parallel
    // evaluations at different rungs never race.
    static mpfr_prec_t &default_prec() {
        static thread_local mpfr_prec_t prec = 256;
        return prec;
    }

    BigFloat() {
        mpfr_init2(v_, default_prec());
        mpfr_set_zero(v_, 1);
    }
    explicit BigFloat(double d) {
        mpfr_init2(v_, default_prec());
        mpfr_set_d(v_, d, MPFR_RNDN);
    }
    BigFloat(const BigFloat &o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat &&o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    BigFloat &operator=(const BigFloat &o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat &operator=(BigFloat &&o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    double log2_magnitude() const {
        if (is_zero()) return -1.0 / 0.0;
        long ex;
        const double m = mpfr_get_d_2exp(&ex, v_, MPFR_RNDN);
        return static_cast<double>(ex) + std::log2(std::abs(m));
    }

    BigFloat operator+(const BigFloat &o) const { return bin(o, mpfr_add); }
    BigFloat operator-(const BigFloat &o) const { return bin(o, mpfr_sub); }
    BigFloat operator*(const BigFloat &o) const { return bin(o, mpfr_mul); }
    BigFloat operator/(const BigFloat &o) const { return bin(o, mpfr_div); }
    BigFloat operator-() const {
        BigFloat r = at_prec(mpfr_get_prec(v_));
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    bool operator<(const BigFloat &o) const { return mpfr_cmp(v_, o.v_) < 0; }

    static BigFloat exp(const BigFloat &x) {
        BigFloat r = at_prec(mpfr_get_prec(x.v_));
        mpfr_exp(r.v_, x.v_, MPFR_RNDN);
        return r;
    }
    static BigFloat ln(const BigFloat &x) {
        BigFloat r = at_prec(mpfr_get_prec(x.v_));
        mpfr_log(r.v_, x.v_, MPFR_RNDN);
        return r;
    }
    static BigFloat euler_gamma(mpfr_prec_t prec) {
        BigFloat r = at_prec(prec);
        mpfr_const_euler(r.v_, MPFR_RNDN);
        return r;
    }
    static BigFloat ln2(mpfr_prec_t prec) {
        BigFloat r = at_prec(prec);
        mpfr_const_log2(r.v_, MPFR_RNDN);
        return r;
    }

  private:
    static BigFloat at_prec(mpfr_prec_t p) {
        BigFloat r;
        mpfr_set_prec(r.v_, p);
        mpfr_set_zero(r.v_, 1);
        return r;
    }

    template <class F> BigFloat bin(const BigFloat &o, F op) const {
        BigFloat r = at_prec(std::max(mpfr_get_prec(v_), mpfr_get_prec(o.v_)));
        op(r.v_, v_, o.v_, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

// Scoped override of the thread default precision.
class PrecisionGuard {
  public:
    explicit PrecisionGuard(mpfr_prec_t bits) : saved_(BigFloat::default_prec()) {
        BigFloat::default_prec() = bits;
    }
    ~PrecisionGuard() { BigFloat::default_prec() = saved_; }
    PrecisionGuard(const PrecisionGuard &) = delete;
    PrecisionGuard &operator=(const PrecisionGuard &) = delete;

  private:
    mpfr_prec_t saved_;
};

} // namespace wishart_sum::detail

#endif // WISHART_SUM_HAVE_MPFR
