// SPDX-License-Identifier: Apache-2.0
//
// Scalar types for the determinant precision ladder.
//
//   Scaled<double>        working precision, unbounded exponent
//   Scaled<DoubleDouble>  ~31 significant digits, unbounded exponent
//   BigFloat              arbitrary precision (separate header)
//
// Scaled<T> keeps a T mantissa in [0.5, 2) alongside a power-of-two exponent,
// so quantities like Gamma(80) * v^80 never leave representable range and no
// row or column equilibration is ever needed.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace wishart_sum::detail {

// ---------------------------------------------------------------- DoubleDouble

// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2: the classic compensated
// representation. Only the operations the determinant ladder needs.
struct DoubleDouble {
    double hi = 0.0;
    double lo = 0.0;

    DoubleDouble() = default;
    explicit DoubleDouble(double x) : hi(x), lo(0.0) {}
    DoubleDouble(double h, double l) : hi(h), lo(l) {}
};

inline void two_sum(double a, double b, double &s, double &e) {
    s = a + b;
    const double bb = s - a;
    e = (a - (s - bb)) + (b - bb);
}

inline void quick_two_sum(double a, double b, double &s, double &e) {
    s = a + b;
    e = b - (s - a);
}

inline void two_prod(double a, double b, double &p, double &e) {
    p = a * b;
    e = std::fma(a, b, -p);
}

inline DoubleDouble dd_add(const DoubleDouble &a, const DoubleDouble &b) {
    double s1, s2, t1, t2;
    two_sum(a.hi, b.hi, s1, s2);
    two_sum(a.lo, b.lo, t1, t2);
    s2 += t1;
    quick_two_sum(s1, s2, s1, s2);
    s2 += t2;
    quick_two_sum(s1, s2, s1, s2);
    return {s1, s2};
}

inline DoubleDouble dd_neg(const DoubleDouble &a) { return {-a.hi, -a.lo}; }

inline DoubleDouble dd_sub(const DoubleDouble &a, const DoubleDouble &b) {
    return dd_add(a, dd_neg(b));
}

inline DoubleDouble dd_mul(const DoubleDouble &a, const DoubleDouble &b) {
    double p1, p2;
    two_prod(a.hi, b.hi, p1, p2);
    p2 += a.hi * b.lo + a.lo * b.hi;
    quick_two_sum(p1, p2, p1, p2);
    return {p1, p2};
}

inline DoubleDouble dd_mul_d(const DoubleDouble &a, double d) {
    double p1, p2;
    two_prod(a.hi, d, p1, p2);
    p2 += a.lo * d;
    quick_two_sum(p1, p2, p1, p2);
    return {p1, p2};
}

inline DoubleDouble dd_div(const DoubleDouble &a, const DoubleDouble &b) {
    const double q1 = a.hi / b.hi;
    DoubleDouble r = dd_sub(a, dd_mul_d(b, q1));
    const double q2 = r.hi / b.hi;
    r = dd_sub(r, dd_mul_d(b, q2));
    const double q3 = r.hi / b.hi;
    double s1, s2;
    quick_two_sum(q1, q2, s1, s2);
    return dd_add({s1, s2}, DoubleDouble(q3));
}

inline DoubleDouble dd_ldexp(const DoubleDouble &a, int n) {
    return {std::ldexp(a.hi, n), std::ldexp(a.lo, n)};
}

// exp(x) for |x| <= 0.4 by plain Taylor summation; error below 2^-107
inline DoubleDouble dd_exp_small(const DoubleDouble &x) {
    DoubleDouble sum(1.0);
    DoubleDouble term(1.0);
    for (int k = 1; k <= 30; ++k) {
        term = dd_mul(term, x);
        // divide by the exact integer k; a premultiplied 1.0/k would cap the
        // series accuracy near 1e-19
        term = dd_div(term, DoubleDouble(static_cast<double>(k)));
        sum = dd_add(sum, term);
        if (std::abs(term.hi) < 1e-35 * std::abs(sum.hi)) break;
    }
    return sum;
}

inline const DoubleDouble dd_ln2{6.931471805599452862e-01, 2.3190468138462995584e-17};

// ------------------------------------------------------------------- Scaled<T>

template <class T> struct ScaledTraits;

template <> struct ScaledTraits<double> {
    static double hi(double x) { return x; }
    static double ldexp(double x, int n) { return std::ldexp(x, n); }
    static double from_double(double x) { return x; }
    static double add(double a, double b) { return a + b; }
    static double sub(double a, double b) { return a - b; }
    static double mul(double a, double b) { return a * b; }
    static double div(double a, double b) { return a / b; }
    static double neg(double a) { return -a; }
    static double exp_small(double x) { return std::exp(x); }
    static double ln2() { return std::numbers::ln2; }
    static double to_double(double x) { return x; }
    static constexpr double eps = 0x1p-52;
    static constexpr int prec_bits = 53;
};

template <> struct ScaledTraits<DoubleDouble> {
    static double hi(const DoubleDouble &x) { return x.hi; }
    static DoubleDouble ldexp(const DoubleDouble &x, int n) { return dd_ldexp(x, n); }
    static DoubleDouble from_double(double x) { return DoubleDouble(x); }
    static DoubleDouble add(const DoubleDouble &a, const DoubleDouble &b) { return dd_add(a, b); }
    static DoubleDouble sub(const DoubleDouble &a, const DoubleDouble &b) { return dd_sub(a, b); }
    static DoubleDouble mul(const DoubleDouble &a, const DoubleDouble &b) { return dd_mul(a, b); }
    static DoubleDouble div(const DoubleDouble &a, const DoubleDouble &b) { return dd_div(a, b); }
    static DoubleDouble neg(const DoubleDouble &a) { return dd_neg(a); }
    static DoubleDouble exp_small(const DoubleDouble &x) { return dd_exp_small(x); }
    static DoubleDouble ln2() { return dd_ln2; }
    static double to_double(const DoubleDouble &x) { return x.hi + x.lo; }
    static constexpr double eps = 0x1p-104;
    static constexpr int prec_bits = 106;
};

template <class T> struct Scaled {
    using TR = ScaledTraits<T>;

    T m{};
    std::int64_t e = 0;

    Scaled() : m(TR::from_double(0.0)) {}

    static Scaled from_double(double x) {
        Scaled s;
        s.m = TR::from_double(x);
        s.normalize();
        return s;
    }
    static Scaled from_mantissa(const T &mant, std::int64_t ex) {
        Scaled s;
        s.m = mant;
        s.e = ex;
        s.normalize();
        return s;
    }

    bool is_zero() const { return TR::hi(m) == 0.0; }

    void normalize() {
        const double h = TR::hi(m);
        if (h == 0.0) {
            m = TR::from_double(0.0);
            e = 0;
            return;
        }
        int ex;
        std::frexp(h, &ex); // |h| = f * 2^ex, f in [0.5, 1)
        if (ex != 0) {
            m = TR::ldexp(m, -ex);
            e += ex;
        }
    }

    double log2_magnitude() const {
        const double h = TR::hi(m);
        if (h == 0.0) return -std::numeric_limits<double>::infinity();
        return static_cast<double>(e) + std::log2(std::abs(h));
    }

    double to_double() const {
        if (is_zero()) return 0.0;
        if (e > 1075) return TR::hi(m) > 0 ? std::numeric_limits<double>::infinity()
                                           : -std::numeric_limits<double>::infinity();
        if (e < -1075) return 0.0;
        return std::ldexp(TR::to_double(m), static_cast<int>(e));
    }

    Scaled operator*(const Scaled &o) const {
        if (is_zero() || o.is_zero()) return Scaled();
        Scaled r;
        r.m = TR::mul(m, o.m);
        r.e = e + o.e;
        r.normalize();
        return r;
    }

    Scaled operator/(const Scaled &o) const {
        Scaled r;
        if (is_zero()) return r;
        r.m = TR::div(m, o.m);
        r.e = e - o.e;
        r.normalize();
        return r;
    }

    Scaled operator+(const Scaled &o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        const Scaled *big = this;
        const Scaled *sml = &o;
        if (o.e > e) std::swap(big, sml);
        const std::int64_t d = big->e - sml->e;
        if (d > TR::prec_bits + 8) return *big;
        Scaled r;
        r.m = TR::add(big->m, TR::ldexp(sml->m, static_cast<int>(-d)));
        r.e = big->e;
        r.normalize();
        return r;
    }

    Scaled operator-(const Scaled &o) const { return *this + (-o); }

    Scaled operator-() const {
        Scaled r = *this;
        r.m = TR::neg(r.m);
        return r;
    }
};

// e^x for a Scaled argument of moderate size (|x| must fit a double, which all
// exponents in this library do). Split x = n*ln2 + r with |r| <= ln2/2.
template <class T> Scaled<T> scaled_exp(const Scaled<T> &x) {
    using TR = ScaledTraits<T>;
    if (x.is_zero()) return Scaled<T>::from_double(1.0);
    const double xd = x.to_double();
    const auto n = static_cast<std::int64_t>(std::llround(xd / std::numbers::ln2));
    // reconstruct x in T exactly (|x| is far below 2^53 in every use)
    T xt = TR::ldexp(x.m, static_cast<int>(x.e));
    T r = TR::sub(xt, TR::mul(TR::from_double(static_cast<double>(n)), TR::ln2()));
    return Scaled<T>::from_mantissa(TR::exp_small(r), 0) *
           Scaled<T>::from_mantissa(TR::from_double(1.0), n);
}

} // namespace wishart_sum::detail
