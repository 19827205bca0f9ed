// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wishart_sum/errors.hpp"
#include "wishart_sum/special_functions.hpp"

using namespace wishart_sum;

TEST_CASE("gamma helpers") {
  CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
  CHECK(log_gamma(0.5) == doctest::Approx(0.5723649429247001).epsilon(1e-14));
  CHECK(recip_gamma_int(1) == doctest::Approx(1.0));
  CHECK(recip_gamma_int(5) == doctest::Approx(1.0 / 24.0).epsilon(1e-15));
  CHECK(recip_gamma_int(0) == 0.0);
  CHECK(recip_gamma_int(-3) == 0.0);
  // 1/Gamma(171) ~ 2e-307 still representable; 1/Gamma(200) ~ 1e-373 underflows
  CHECK(recip_gamma_int(171) > 0.0);
  CHECK(std::isfinite(recip_gamma_int(171)));
  CHECK(recip_gamma_int(200) == 0.0);
}

TEST_CASE("laguerre recurrence against closed forms") {
  CHECK(assoc_laguerre(0, 2.0, 1.7) == doctest::Approx(1.0));
  CHECK(assoc_laguerre(1, 3.0, 0.4) == doctest::Approx(1.0 + 3.0 - 0.4).epsilon(1e-15));
  // L_2^(1)(x) = (x^2 - 6x + 6)/2
  CHECK(assoc_laguerre(2, 1.0, 0.7) == doctest::Approx(1.145).epsilon(1e-14));
  // L_3^(2)(x) = (-x^3 + 15x^2 - 60x + 60)/6
  CHECK(assoc_laguerre(3, 2.0, 2.5) == doctest::Approx(-1.9791666666666667).epsilon(1e-14));
}

TEST_CASE("exponential integral across regimes") {
  CHECK(e1(1.0) == doctest::Approx(0.21938393439552027).epsilon(1e-14));
  CHECK(e1(0.1) == doctest::Approx(1.8229239584193907).epsilon(1e-14));
  CHECK(e1(10.0) == doctest::Approx(4.156968929685324e-6).epsilon(1e-13));
  CHECK(exp_e1(1.0) == doctest::Approx(0.5963473623231941).epsilon(1e-14));

  // large-x asymptotic envelope: 1/x (1 - 1/x) < e^x E1(x) < 1/x
  for (double x : {50.0, 300.0, 1e4, 1e8}) {
    const double v = exp_e1(x);
    CHECK(v < 1.0 / x);
    CHECK(v > (1.0 - 1.0 / x) / x);
  }

  CHECK_THROWS_AS(e1(0.0), validation_error);
  CHECK_THROWS_AS(e1(-2.0), validation_error);
  CHECK_THROWS_AS(exp_e1(-1.0), validation_error);
}

TEST_CASE("capacity kernel closed form against quadrature") {
  CHECK(capacity_kernel(0, 1.0) == doctest::Approx(0.5963473623231941).epsilon(1e-12));
  CHECK(capacity_kernel(1, 1.0) == doctest::Approx(1.0).epsilon(1e-12));

  for (int n : {0, 1, 3, 7, 12})
    for (double beta : {0.03, 0.5, 1.0, 7.0, 40.0}) {
      const double closed = capacity_kernel_log(n, beta);
      const double quad = kernel_quadrature_log(n, beta);
      CHECK(std::abs(closed - quad) <= 1e-8);
    }

  CHECK_THROWS_AS(capacity_kernel(-1, 1.0), validation_error);
  CHECK_THROWS_AS(capacity_kernel(0, 0.0), validation_error);
}

TEST_CASE("kernel table caches a consistent column") {
  KernelIntegralTable t(12, 1.0);
  CHECK(t.n_max() == 12);
  CHECK(t.beta() == 1.0);
  CHECK(t.value(0) == doctest::Approx(0.5963473623231941).epsilon(1e-12));
  for (int n = 0; n <= 12; ++n)
    CHECK(t.log_value(n) == doctest::Approx(capacity_kernel_log(n, 1.0)).epsilon(1e-12));
  // at beta = 1 the column grows with n (the n! factor wins)
  for (int n = 1; n <= 12; ++n)
    CHECK(t.log_value(n) > t.log_value(n - 1));
  CHECK_THROWS_AS(t.value(13), validation_error);
  CHECK_THROWS_AS(t.value(-1), validation_error);
}
