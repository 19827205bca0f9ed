// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "wishart_sum/eigen_density.hpp"
#include "wishart_sum/errors.hpp"
#include "wishart_sum/special_functions.hpp"
#include "wishart_sum/wishart_model.hpp"

using namespace wishart_sum;

namespace {

SumSpec make_spec(int m, double sigma2, std::vector<WishartTerm> terms) {
  SumSpec s;
  s.m = m;
  s.sigma2 = sigma2;
  s.terms = std::move(terms);
  return s;
}

double gamma_pdf(double lambda, int p, double v) {
  return std::exp((p - 1) * std::log(lambda) - lambda / v - log_gamma(p) - p * std::log(v));
}

} // namespace

TEST_CASE("raw entry values") {
  // body: h_(i,j) = Gamma(i)/Gamma(i-j+1) u^(i-j), zero above the diagonal
  CHECK(entry_h(3, 1, 2.0) == doctest::Approx(0.25).epsilon(1e-15)); // 2/2 * (1/2)^2
  CHECK(entry_h(3, 3, 2.0) == doctest::Approx(2.0).epsilon(1e-15));  // Gamma(3) u^0
  CHECK(entry_h(2, 3, 2.0) == 0.0);
  // border column: g_i = lambda^(m-i)/Gamma(m-i+1), zero past row m
  CHECK(entry_g(2, 4, 3.0) == doctest::Approx(4.5).epsilon(1e-15)); // 9/2
  CHECK(entry_g(4, 4, 3.0) == doctest::Approx(1.0));
  CHECK(entry_g(5, 4, 3.0) == 0.0);
  // border row at j=1 collapses to u^m e^(-u lambda)
  CHECK(entry_f(1, 2, 0.5, 1.2) ==
        doctest::Approx(4.0 * std::exp(-2.4)).epsilon(1e-13));
}

TEST_CASE("single-branch m=1 reduces to the gamma density") {
  for (int p : {1, 2, 5}) {
    auto eval = build_evaluator(make_spec(1, 1.0, {{p, 2.4}}));
    const double v = 2.4 / p;
    auto grid = make_lambda_grid(eval.spec(), 50);
    for (double lam : grid) {
      const double want = gamma_pdf(lam, p, v);
      if (want < 1e-280)
        continue;
      CHECK(eval.density(lam) == doctest::Approx(want).epsilon(1e-9));
    }
  }
}

TEST_CASE("single-branch m=2 matches the laguerre closed form") {
  // m=2, p=2, v=1/2: P = (1/2)(1 + (1-x)^2) e^-x / v, x = lambda/v
  auto e22 = build_evaluator(make_spec(2, 1.0, {{2, 1.0}}));
  CHECK(e22.density(0.8) == doctest::Approx(0.27457926447273136).epsilon(1e-11));
  CHECK(e22.density(2.0) == doctest::Approx(0.18315638888734180).epsilon(1e-11));

  // m=2, p=3, v=0.7: P = (1/2)(1 + (2-x)^2/2) x e^-x / v
  auto e23 = build_evaluator(make_spec(2, 1.0, {{3, 2.1}}));
  CHECK(e23.density(1.4) == doctest::Approx(0.19333611890944670).epsilon(1e-11));
  CHECK(e23.density(0.3) == doctest::Approx(0.44564292044762966).epsilon(1e-11));
}

TEST_CASE("two scalar branches give the hypoexponential") {
  auto eval = build_evaluator(make_spec(1, 1.0, {{1, 2.0}, {1, 0.5}}));
  auto hypo = [](double lam) {
    return (std::exp(-lam / 2.0) - std::exp(-2.0 * lam)) / 1.5;
  };
  for (double lam : {0.1, 1.0, 5.0})
    CHECK(eval.density(lam) == doctest::Approx(hypo(lam)).epsilon(1e-12));
  CHECK(eval.density(1.0) == doctest::Approx(0.31413025098401382).epsilon(1e-12));
}

TEST_CASE("density normalizes and reproduces the mean") {
  const SumSpec specs[] = {
      make_spec(2, 1.0, {{3, 4.0}, {2, 0.9}}),
      make_spec(3, 1.0, {{3, 2.0}, {4, 7.5}, {1, 0.3}}),
      make_spec(1, 2.0, {{2, 1.1}, {2, 5.0}}),
  };
  for (const auto &s : specs) {
    auto eval = build_evaluator(s);
    double total_a = 0.0;
    for (const auto &t : s.terms)
      total_a += t.a;
    const double scale = s.sigma2 * total_a;
    CHECK(eval.cdf(30.0 * scale) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(eval.mean() == doctest::Approx(scale).epsilon(1e-7));
  }
}

TEST_CASE("confluent formation agrees with the distinct-weight form") {
  // one p=3 block split into three nearly equal weights
  const int m = 2;
  const double v = 1.3;
  auto eval = build_evaluator(make_spec(m, 1.0, {{3, 3.0 * v}}));
  for (double lam : {0.9, 2.6, 5.2}) {
    const double exact = eval.density(lam);
    double prev_diff = 0.0;
    for (double eps : {1e-3, 1e-4}) {
      const double split = density_distinct(
          m, {v * (1.0 - eps), v, v * (1.0 + eps)}, lam);
      const double diff = std::abs(split - exact) / exact;
      CHECK(diff <= 2e-3);
      if (eps == 1e-4) {
        CHECK(diff <= 1e-3);
        // one decade of epsilon shrinks the gap about one decade
        if (prev_diff > 1e-12)
          CHECK(diff <= 0.35 * prev_diff);
      }
      prev_diff = diff;
    }
  }
}

TEST_CASE("distinct evaluator validates its arguments") {
  CHECK_THROWS_AS(density_distinct(2, {1.0, 1.0 + 1e-9, 2.0}, 1.0), validation_error);
  CHECK_THROWS_AS(density_distinct(3, {1.0, 2.0}, 1.0), validation_error);
  CHECK_THROWS_AS(density_distinct(1, {1.0}, -1.0), validation_error);
}

TEST_CASE("column balancing changes nothing observable") {
  auto spec = make_spec(2, 1.0, {{3, 2.0}, {2, 0.7}});
  EvaluatorOptions on, off;
  on.column_balancing = true;
  off.column_balancing = false;
  auto a = build_evaluator(spec, on);
  auto b = build_evaluator(spec, off);
  for (double lam : {0.2, 1.0, 2.7, 6.0})
    CHECK(a.density(lam) == doctest::Approx(b.density(lam)).epsilon(1e-12));
}

TEST_CASE("equal weights merge into one block") {
  auto split = build_evaluator(make_spec(2, 1.0, {{2, 1.7}, {2, 1.7}}));
  CHECK(split.block_dofs().size() == 1);
  CHECK(split.block_dofs()[0] == 4);
  auto joined = build_evaluator(make_spec(2, 1.0, {{4, 3.4}}));
  for (double lam : {0.4, 1.7, 4.0})
    CHECK(split.density(lam) == doctest::Approx(joined.density(lam)).epsilon(1e-13));
}

TEST_CASE("support edge stays finite and nonnegative") {
  // steep lambda^(p-m) decay toward zero exercises the widest rungs
  auto spec = from_antennas({{4, 4, 19.8}, {4, 4, 29.5}, {4, 4, 29.8},
                             {4, 4, 26.1}, {4, 4, 21.7}},
                            1.0);
  auto eval = build_evaluator(spec);
  auto grid = make_lambda_grid(spec, 5);
  const double edge = eval.density(grid.front());
  CHECK(std::isfinite(edge));
  CHECK(edge >= 0.0);
  CHECK(edge < 1e-50); // the exponent really is p - m = 16
}

TEST_CASE("evaluator input validation") {
  auto eval = build_evaluator(make_spec(1, 1.0, {{1, 1.0}}));
  CHECK_THROWS_AS(eval.density(0.0), validation_error);
  CHECK_THROWS_AS(eval.density(-1.0), validation_error);
  EvaluatorOptions o;
  o.merge_rel_tol = 1e-2;
  CHECK_THROWS_AS(build_evaluator(make_spec(1, 1.0, {{1, 1.0}}), o), validation_error);
  CHECK_THROWS_AS(make_lambda_grid(make_spec(1, 1.0, {{1, 1.0}}), 1), validation_error);
}

TEST_CASE("grid covers the support") {
  auto spec = make_spec(1, 1.0, {{1, 1.0}});
  auto grid = make_lambda_grid(spec, 40);
  REQUIRE(grid.size() == 40);
  CHECK(grid.front() == doctest::Approx(1e-6).epsilon(1e-12));
  CHECK(grid.back() == doctest::Approx(4.0).epsilon(1e-12));
  for (std::size_t i = 1; i < grid.size(); ++i)
    CHECK(grid[i] > grid[i - 1]);
}
