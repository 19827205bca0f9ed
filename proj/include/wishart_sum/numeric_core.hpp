// SPDX-License-Identifier: Apache-2.0
//
// Dense complex matrices, log-domain determinants and a cyclic Jacobi
// eigensolver sized for the small Hermitian matrices this library works with.
#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

namespace wishart_sum {

using cplx = std::complex<double>;

// A real number stored as sign and log-magnitude so that determinants whose
// magnitude is far outside double range stay representable. sign == 0 encodes
// an exact zero and the log magnitude is then -inf by convention.
struct SignedLogValue {
    int sign = 0;
    double log_magnitude = -std::numeric_limits<double>::infinity();

    static SignedLogValue from_value(double x);
    // sign * exp(log_magnitude); may overflow/underflow like any double.
    double value() const;
    bool is_zero() const { return sign == 0; }

    SignedLogValue operator*(const SignedLogValue &o) const;
    SignedLogValue operator/(const SignedLogValue &o) const;
};

class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols);

    static ComplexMatrix identity(int n);
    static ComplexMatrix diagonal(const std::vector<double> &d);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cplx &operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const cplx &operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    // max |a_ij - conj(a_ji)| over all pairs; 0 for an exactly Hermitian matrix
    double hermitian_asymmetry() const;
    double max_abs() const;
    bool all_finite() const;

    ComplexMatrix conjugate_transpose() const;
    ComplexMatrix operator*(const ComplexMatrix &o) const;
    ComplexMatrix operator+(const ComplexMatrix &o) const;

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> a_;
};

// Determinant through LU with partial pivoting, accumulated in the log domain.
// The matrix may hold complex entries but the determinant must come out real
// (all uses in this library do); a residual imaginary part above 1e-9 relative
// raises numerical_error.
SignedLogValue lu_logdet(const ComplexMatrix &m);

// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, ascending.
// Asymmetry beyond 1e-10 * max(1, max|a_ij|) raises validation_error.
// When eigenvectors is non-null it receives a unitary V with A = V D V^H.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix &a,
                                          ComplexMatrix *eigenvectors = nullptr);

// rows x cols matrix of i.i.d. circular complex Gaussians with E|h|^2 = sigma2.
// Fully determined by (seed, stream): a counter-based generator makes draws
// independent of evaluation order, so parallel callers assign disjoint streams.
ComplexMatrix sample_complex_gaussian(std::uint64_t seed, std::uint64_t stream,
                                      int rows, int cols, double sigma2);

} // namespace wishart_sum
