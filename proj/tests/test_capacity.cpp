// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "wishart_sum/capacity.hpp"
#include "wishart_sum/cli_config.hpp"
#include "wishart_sum/errors.hpp"

using namespace wishart_sum;

namespace {

SumSpec make_spec(int m, double sigma2, std::vector<WishartTerm> terms) {
  SumSpec s;
  s.m = m;
  s.sigma2 = sigma2;
  s.terms = std::move(terms);
  return s;
}

SumSpec case1() {
  return from_antennas({{4, 4, 19.8}, {4, 4, 29.5}, {4, 4, 29.8},
                        {4, 4, 26.1}, {4, 4, 21.7}},
                       1.0);
}

SumSpec case2() {
  return from_antennas({{8, 8, 28.3}, {8, 8, 17.7}, {8, 8, 26.5}, {8, 8, 27.3},
                        {8, 8, 29.3}, {8, 8, 21.5}, {8, 8, 19.5}, {8, 8, 27.9},
                        {8, 8, 9.3}, {8, 8, 24.3}},
                       1.0);
}

} // namespace

TEST_CASE("scalar rayleigh channel closed form") {
  // m = p = 1, unit weight: C = e E1(1) / ln 2
  auto spec = make_spec(1, 1.0, {{1, 1.0}});
  CHECK(capacity_determinantal(spec).bits ==
        doctest::Approx(0.8603473822708860).epsilon(1e-10));
  CHECK(capacity_quadrature(spec).bits ==
        doctest::Approx(0.8603473822708860).epsilon(1e-9));
}

TEST_CASE("two-eigenvalue single branch against laguerre quadrature") {
  // m=2, p=2, v=1/2, frozen independent quadrature of the closed-form density
  auto spec = make_spec(2, 1.0, {{2, 1.0}});
  CHECK(capacity_determinantal(spec).bits ==
        doctest::Approx(1.6850269814064778).epsilon(1e-10));
}

TEST_CASE("determinant and quadrature routes agree") {
  const SumSpec specs[] = {
      make_spec(1, 1.0, {{1, 1.0}}),
      make_spec(2, 1.0, {{3, 4.0}, {2, 0.9}}),
      make_spec(3, 1.0, {{3, 2.0}, {4, 7.5}, {1, 0.3}}),
      make_spec(2, 2.0, {{2, 20.0}, {2, 1.3}}),
  };
  for (const auto &s : specs) {
    const double det = capacity_determinantal(s).bits;
    const double quad = capacity_quadrature(s).bits;
    CHECK(std::abs(det - quad) <= 1e-6 * det);
  }
}

TEST_CASE("confluent capacity agrees with the distinct-weight form") {
  // singleton blocks make the confluent formation literally the distinct case
  auto spec = make_spec(2, 1.0, {{1, 0.3}, {1, 0.9}, {1, 2.1}});
  const double conf = capacity_determinantal(spec).bits;
  const double dist = capacity_distinct(2, {0.3, 0.9, 2.1});
  CHECK(conf == doctest::Approx(dist).epsilon(1e-9));

  // and epsilon-splitting one block converges first order onto the confluent value
  auto block = make_spec(2, 1.0, {{3, 3.9}});
  const double exact = capacity_determinantal(block).bits;
  const double v = 1.3;
  double prev = 0.0;
  for (double eps : {1e-3, 1e-4}) {
    const double split = capacity_distinct(2, {v * (1 - eps), v, v * (1 + eps)});
    const double diff = std::abs(split - exact) / exact;
    CHECK(diff <= 2e-3);
    if (eps == 1e-4 && prev > 1e-12)
      CHECK(diff <= 0.35 * prev);
    prev = diff;
  }

  CHECK_THROWS_AS(capacity_distinct(2, {1.0, 1.0 + 1e-9, 2.0}), validation_error);
}

TEST_CASE("published case 1 anchors") {
  auto spec = case1();
  auto exact = capacity_determinantal(spec);
  CHECK(exact.bits == doctest::Approx(44.2007466773).epsilon(1e-6)); // regression pin
  CHECK(std::abs(exact.bits - 44.20) <= 0.02);                       // published value
  auto approx = capacity_approx(spec);
  CHECK(std::abs(approx.bits - 44.15) <= 0.02);
  CHECK(matched_dof(spec) == 13);
  CHECK(approximation_error(spec) < 2e-3);
}

TEST_CASE("published relay case anchors") {
  SumSpec bc = from_antennas({{2, 2, 9.7}, {2, 2, 17.6}}, 1.0);
  SumSpec mac = from_antennas({{2, 2, 17.6}, {2, 2, 16.7}}, 1.0);
  auto r = relay_upper_bound(bc, mac);
  CHECK(r.first_hop_bits == doctest::Approx(10.9483635748).epsilon(1e-6));
  CHECK(r.second_hop_bits == doctest::Approx(12.6002797763).epsilon(1e-6));
  CHECK(r.bits == doctest::Approx(r.first_hop_bits));
  CHECK(std::abs(r.bits - 10.94) <= 0.02);

  auto ra = relay_upper_bound(matched_single_term(bc), matched_single_term(mac));
  CHECK(std::abs(ra.bits - 11.01) <= 0.02);
}

TEST_CASE("standard precision mode fails loudly where doubles cannot cope") {
  EvaluatorOptions standard;
  standard.mode = PrecisionMode::standard;
  // small problems stay fine in plain doubles
  CHECK(capacity_determinantal(make_spec(1, 1.0, {{1, 1.0}}), standard).bits ==
        doctest::Approx(0.8603473822708860).epsilon(1e-9));
  // the 80-degree case is far beyond double determinants
  CHECK_THROWS_AS(capacity_determinantal(case2(), standard), numerical_error);
}

#ifdef WISHART_SUM_HAVE_MPFR
TEST_CASE("published case 2 anchors in extended precision") {
  auto spec = case2();
  CHECK(matched_dof(spec) == 51);
  auto exact = capacity_determinantal(spec);
  CHECK(std::abs(exact.bits - 93.86) <= 0.05);
  CHECK(exact.bits == doctest::Approx(93.8662696502).epsilon(1e-6)); // regression pin
  auto approx = capacity_approx(spec);
  CHECK(std::abs(approx.bits - 93.85) <= 0.05);
}
#endif

TEST_CASE("method strings name the route and the widest scalar") {
  auto r = capacity_determinantal(make_spec(1, 1.0, {{1, 1.0}}));
  CHECK(r.method.find("determinant:") == 0);
  auto q = capacity_quadrature(make_spec(1, 1.0, {{1, 1.0}}));
  CHECK(q.method.find("quadrature:") == 0);
  auto a = capacity_approx(make_spec(2, 1.0, {{2, 3.0}, {2, 1.0}}));
  CHECK(a.method.find("matched-") == 0);
}
