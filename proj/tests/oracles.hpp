// SPDX-License-Identifier: Apache-2.0
//
// Test-local reference implementations, deliberately independent of the
// library numerics: Laplace-expansion determinants, characteristic
// polynomials via Faddeev-LeVerrier and roots via Durand-Kerner.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "wishart_sum/numeric_core.hpp"

namespace oracle {

using wishart_sum::ComplexMatrix;
using cplx = std::complex<double>;

inline cplx cofactor_det(const ComplexMatrix &m) {
  const int n = m.rows();
  if (n == 1)
    return m(0, 0);
  cplx det = 0.0;
  double sgn = 1.0;
  for (int k = 0; k < n; ++k) {
    ComplexMatrix minor(n - 1, n - 1);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == k)
          continue;
        minor(r - 1, cc++) = m(r, c);
      }
    }
    det += sgn * m(0, k) * cofactor_det(minor);
    sgn = -sgn;
  }
  return det;
}

// Monic characteristic polynomial, ascending coefficients c[0..n], c[n] = 1.
inline std::vector<cplx> char_poly(const ComplexMatrix &a) {
  const int n = a.rows();
  ComplexMatrix mk = ComplexMatrix::identity(n);
  std::vector<cplx> c(static_cast<size_t>(n) + 1, cplx(0.0));
  c[static_cast<size_t>(n)] = 1.0;
  for (int k = 1; k <= n; ++k) {
    mk = a * mk;
    cplx tr = 0.0;
    for (int i = 0; i < n; ++i)
      tr += mk(i, i);
    const cplx ck = -tr / static_cast<double>(k);
    c[static_cast<size_t>(n - k)] = ck;
    for (int i = 0; i < n; ++i)
      mk(i, i) += ck;
  }
  return c;
}

// All roots of a monic polynomial given by ascending coefficients.
inline std::vector<cplx> poly_roots(const std::vector<cplx> &coeff) {
  const int n = static_cast<int>(coeff.size()) - 1;
  double scale = 1.0;
  for (int i = 0; i < n; ++i)
    scale = std::max(scale, std::abs(coeff[static_cast<size_t>(i)]));
  auto eval = [&](cplx x) {
    cplx v = coeff[static_cast<size_t>(n)];
    for (int i = n - 1; i >= 0; --i)
      v = v * x + coeff[static_cast<size_t>(i)];
    return v;
  };
  std::vector<cplx> z(static_cast<size_t>(n));
  cplx acc = 1.0;
  const cplx seed(0.4, 0.9);
  for (int i = 0; i < n; ++i) {
    acc *= seed;
    z[static_cast<size_t>(i)] = acc * (1.0 + 0.01 * i);
  }
  for (int iter = 0; iter < 5000; ++iter) {
    double moved = 0.0;
    for (int i = 0; i < n; ++i) {
      cplx denom = 1.0;
      for (int j = 0; j < n; ++j)
        if (j != i)
          denom *= z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)];
      const cplx step = eval(z[static_cast<size_t>(i)]) / denom;
      z[static_cast<size_t>(i)] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-14 * (1.0 + scale))
      break;
  }
  return z;
}

inline std::vector<double> real_sorted(std::vector<cplx> roots) {
  std::vector<double> out;
  out.reserve(roots.size());
  for (const auto &r : roots)
    out.push_back(r.real());
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace oracle
