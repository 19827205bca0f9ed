// SPDX-License-Identifier: Apache-2.0
//
// Special functions underpinning the density and capacity formulas: gamma
// helpers, generalized Laguerre polynomials, the exponential integral E1, and
// the capacity kernel
//
//   I(n, beta) = integral_0^inf x^n e^(-beta x) ln(1 + x) dx
//
// evaluated by a closed form with measured cancellation, cross-checked
// against an independent quadrature route.
#pragma once

#include <vector>

namespace wishart_sum {

// ln Gamma(x) for x > 0.
double log_gamma(double x);

// 1 / Gamma(k) at integer argument; zero for k <= 0 where Gamma has poles.
double recip_gamma_int(int k);

// Generalized Laguerre polynomial L_n^(alpha)(x) by the three-term recurrence.
double assoc_laguerre(int n, double alpha, double x);

// Exponential integral E1(x) for x > 0.
double e1(double x);

// e^x E1(x), stable for every x > 0 including where e^x alone overflows.
double exp_e1(double x);

// Capacity kernel I(n, beta) and its natural log, n >= 0, beta > 0.
double capacity_kernel(int n, double beta);
double capacity_kernel_log(int n, double beta);

// Independent evaluation of ln I(n, beta) by peak-shifted adaptive
// quadrature; shares no code with the closed form past the integrand itself.
double kernel_quadrature_log(int n, double beta);

// Cached column I(0..n_max, beta) of kernel values at one decay rate. The
// constructor cross-checks the closed form against the quadrature route on
// the top entry and refuses to hand out values if the two disagree.
class KernelIntegralTable {
  public:
    KernelIntegralTable(int n_max, double beta);

    int n_max() const { return static_cast<int>(log_values_.size()) - 1; }
    double beta() const { return beta_; }
    double value(int n) const;     // I(n, beta); may overflow to inf for large n
    double log_value(int n) const; // ln I(n, beta)

  private:
    double beta_;
    std::vector<double> log_values_;
};

} // namespace wishart_sum
