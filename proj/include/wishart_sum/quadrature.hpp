// SPDX-License-Identifier: Apache-2.0
//
// Adaptive Gauss-Kronrod 15(7) integration on finite and semi-infinite
// intervals. Used for density normalization and moments, the quadrature
// capacity route, and the independent cross-check of the closed-form
// capacity kernel.
#pragma once

#include <functional>

namespace wishart_sum {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
};

// Integrate f over [a, b]. Subdivides until the accumulated error estimate
// drops below max(abs_tol, rel_tol * |integral|); throws numerical_error if
// the subdivision budget is exhausted or the integrand returns a non-finite
// value.
QuadratureResult integrate(const std::function<double(double)> &f, double a, double b,
                           double rel_tol = 1e-12, double abs_tol = 1e-300);

// Integrate f over [a, infinity). The region [a, a + 8*scale] is handled
// directly and the tail is folded through x = t/(1-t); scale should be the
// rough location where the integrand stops mattering.
QuadratureResult integrate_semi_infinite(const std::function<double(double)> &f, double a,
                                         double scale = 1.0, double rel_tol = 1e-12,
                                         double abs_tol = 1e-300);

} // namespace wishart_sum
