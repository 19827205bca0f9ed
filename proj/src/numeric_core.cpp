// SPDX-License-Identifier: Apache-2.0

#include "wishart_sum/numeric_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wishart_sum/errors.hpp"
#include "wishart_sum/rng.hpp"

namespace wishart_sum {

SignedLogValue SignedLogValue::from_value(double x) {
    SignedLogValue r;
    if (x == 0.0) return r;
    if (!std::isfinite(x)) throw validation_error("SignedLogValue: non-finite input");
    r.sign = x > 0 ? 1 : -1;
    r.log_magnitude = std::log(std::abs(x));
    return r;
}

double SignedLogValue::value() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_magnitude);
}

SignedLogValue SignedLogValue::operator*(const SignedLogValue &o) const {
    SignedLogValue r;
    if (sign == 0 || o.sign == 0) return r;
    r.sign = sign * o.sign;
    r.log_magnitude = log_magnitude + o.log_magnitude;
    return r;
}

SignedLogValue SignedLogValue::operator/(const SignedLogValue &o) const {
    if (o.sign == 0) throw numerical_error("SignedLogValue: division by zero");
    SignedLogValue r;
    if (sign == 0) return r;
    r.sign = sign * o.sign;
    r.log_magnitude = log_magnitude - o.log_magnitude;
    return r;
}

ComplexMatrix::ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw validation_error("ComplexMatrix: negative dimension");
    a_.assign(static_cast<size_t>(rows) * cols, cplx(0.0, 0.0));
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double> &d) {
    ComplexMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

double ComplexMatrix::hermitian_asymmetry() const {
    double worst = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst;
}

double ComplexMatrix::max_abs() const {
    double worst = 0.0;
    for (const auto &z : a_) worst = std::max(worst, std::abs(z));
    return worst;
}

bool ComplexMatrix::all_finite() const {
    for (const auto &z : a_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

ComplexMatrix ComplexMatrix::conjugate_transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix &o) const {
    if (cols_ != o.rows_) throw validation_error("ComplexMatrix: dimension mismatch in product");
    ComplexMatrix m(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const cplx aik = (*this)(i, k);
            if (aik == cplx(0.0, 0.0)) continue;
            for (int j = 0; j < o.cols_; ++j) m(i, j) += aik * o(k, j);
        }
    return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix &o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw validation_error("ComplexMatrix: dimension mismatch in sum");
    ComplexMatrix m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j) + o(i, j);
    return m;
}

SignedLogValue lu_logdet(const ComplexMatrix &m) {
    if (!m.is_square()) throw validation_error("lu_logdet: matrix must be square");
    if (!m.all_finite()) throw validation_error("lu_logdet: non-finite entries");
    const int n = m.rows();
    if (n == 0) return SignedLogValue::from_value(1.0);

    ComplexMatrix a = m;
    int swaps = 0;
    double log_mag = 0.0;
    double phase = 0.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(a(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double cand = std::abs(a(i, k));
            if (cand > best) {
                best = cand;
                piv = i;
            }
        }
        if (best == 0.0) return SignedLogValue{}; // exactly singular
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            ++swaps;
        }
        const cplx pivot = a(k, k);
        log_mag += std::log(std::abs(pivot));
        phase += std::arg(pivot);
        for (int i = k + 1; i < n; ++i) {
            const cplx l = a(i, k) / pivot;
            a(i, k) = l;
            for (int j = k + 1; j < n; ++j) a(i, j) -= l * a(k, j);
        }
    }
    if (swaps % 2 == 1) phase += std::numbers::pi;

    // dets in this library are real; reject anything with a genuine phase
    const double s = std::sin(phase);
    const double c = std::cos(phase);
    if (std::abs(s) > 1e-9)
        throw numerical_error("lu_logdet: determinant has non-real phase");
    SignedLogValue r;
    r.sign = c >= 0.0 ? 1 : -1;
    r.log_magnitude = log_mag + std::log(std::abs(c));
    return r;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix &a_in, ComplexMatrix *eigenvectors) {
    if (!a_in.is_square()) throw validation_error("hermitian_eigenvalues: matrix must be square");
    if (!a_in.all_finite()) throw validation_error("hermitian_eigenvalues: non-finite entries");
    const int n = a_in.rows();
    const double scale = std::max(1.0, a_in.max_abs());
    if (a_in.hermitian_asymmetry() > 1e-10 * scale)
        throw validation_error("hermitian_eigenvalues: matrix is not Hermitian");

    ComplexMatrix a = a_in;
    ComplexMatrix v = ComplexMatrix::identity(n);
    // enforce exact Hermitian symmetry so rotations stay consistent
    for (int i = 0; i < n; ++i) {
        a(i, i) = cplx(a(i, i).real(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            const cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = avg;
            a(j, i) = std::conj(avg);
        }
    }

    const auto off_diag = [&]() {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off = std::max(off, std::abs(a(i, j)));
        return off;
    };

    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diag() <= 1e-14 * scale) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= 1e-300) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                // phase that makes the off-diagonal real, then a real rotation
                const cplx w = apq / mag; // e^{i phi}
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // columns p,q of A and V multiply the plane rotation
                //   U = [ c        s      ]
                //       [ -s*w^-1  c*w^-1 ]   with w = e^{i phi}
                const cplx winv = std::conj(w);
                for (int r = 0; r < n; ++r) {
                    const cplx arp = a(r, p), arq = a(r, q);
                    a(r, p) = c * arp - s * winv * arq;
                    a(r, q) = s * arp + c * winv * arq;
                }
                for (int r = 0; r < n; ++r) {
                    const cplx apr = a(p, r), aqr = a(q, r);
                    a(p, r) = c * apr - s * w * aqr;
                    a(q, r) = s * apr + c * w * aqr;
                }
                for (int r = 0; r < n; ++r) {
                    const cplx vrp = v(r, p), vrq = v(r, q);
                    v(r, p) = c * vrp - s * winv * vrq;
                    v(r, q) = s * vrp + c * winv * vrq;
                }
                a(p, q) = cplx(0.0, 0.0);
                a(q, p) = cplx(0.0, 0.0);
                a(p, p) = cplx(a(p, p).real(), 0.0);
                a(q, q) = cplx(a(q, q).real(), 0.0);
            }
        }
    }
    if (off_diag() > 1e-12 * scale)
        throw numerical_error("hermitian_eigenvalues: Jacobi sweeps did not converge");

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    std::vector<double> lam(n);
    for (int i = 0; i < n; ++i) lam[i] = a(order[i], order[i]).real();
    if (eigenvectors) {
        ComplexMatrix sorted(n, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) sorted(i, j) = v(i, order[j]);
        *eigenvectors = sorted;
    }
    return lam;
}

double CounterRng::next_normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(ang);
    have_spare_ = true;
    return r * std::cos(ang);
}

ComplexMatrix sample_complex_gaussian(std::uint64_t seed, std::uint64_t stream, int rows, int cols,
                                      double sigma2) {
    if (rows <= 0 || cols <= 0) throw validation_error("sample_complex_gaussian: bad dimensions");
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
        throw validation_error("sample_complex_gaussian: sigma2 must be positive");
    CounterRng rng(seed, stream);
    const double s = std::sqrt(sigma2 / 2.0);
    ComplexMatrix h(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) h(i, j) = cplx(s * rng.next_normal(), s * rng.next_normal());
    return h;
}

} // namespace wishart_sum
