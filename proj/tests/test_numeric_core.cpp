// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "oracles.hpp"
#include "wishart_sum/errors.hpp"
#include "wishart_sum/numeric_core.hpp"

using namespace wishart_sum;

namespace {

ComplexMatrix random_product_matrix(std::uint64_t seed, std::uint64_t stream, int n) {
  ComplexMatrix a = sample_complex_gaussian(seed, stream, n, n, 1.0);
  return a * a.conjugate_transpose();
}

} // namespace

TEST_CASE("signed log values round-trip and multiply") {
  CHECK(SignedLogValue::from_value(0.0).is_zero());
  auto x = SignedLogValue::from_value(-3.0);
  CHECK(x.sign == -1);
  CHECK(x.value() == doctest::Approx(-3.0).epsilon(1e-15));
  auto y = SignedLogValue::from_value(0.5);
  CHECK((x * y).value() == doctest::Approx(-1.5).epsilon(1e-15));
  CHECK((x / y).value() == doctest::Approx(-6.0).epsilon(1e-15));
  CHECK((x * SignedLogValue::from_value(0.0)).is_zero());
}

TEST_CASE("log determinant of fixed matrices") {
  auto id = lu_logdet(ComplexMatrix::identity(3));
  CHECK(id.sign == 1);
  CHECK(id.log_magnitude == doctest::Approx(0.0).epsilon(1e-14));

  auto d = lu_logdet(ComplexMatrix::diagonal({2.0, 3.0}));
  CHECK(d.sign == 1);
  CHECK(d.log_magnitude == doctest::Approx(std::log(6.0)).epsilon(1e-14));

  // [[1+2i, 3], [i, 2-i]] has determinant exactly 4
  ComplexMatrix m(2, 2);
  m(0, 0) = {1.0, 2.0};
  m(0, 1) = {3.0, 0.0};
  m(1, 0) = {0.0, 1.0};
  m(1, 1) = {2.0, -1.0};
  auto d2 = lu_logdet(m);
  CHECK(d2.sign == 1);
  CHECK(d2.log_magnitude == doctest::Approx(std::log(4.0)).epsilon(1e-13));
}

TEST_CASE("log determinant matches the cofactor oracle on a random 5x5") {
  ComplexMatrix m = random_product_matrix(7, 1, 5);
  const oracle::cplx ref = oracle::cofactor_det(m);
  CHECK(std::abs(ref.imag()) <= 1e-9 * std::abs(ref));
  auto got = lu_logdet(m);
  CHECK(got.sign == 1);
  CHECK(got.log_magnitude == doctest::Approx(std::log(ref.real())).epsilon(1e-10));
}

TEST_CASE("log determinant is multiplicative on 8x8 products") {
  ComplexMatrix a = random_product_matrix(11, 2, 8);
  ComplexMatrix b = random_product_matrix(11, 3, 8);
  auto da = lu_logdet(a);
  auto db = lu_logdet(b);
  auto dab = lu_logdet(a * b);
  CHECK(dab.sign == da.sign * db.sign);
  CHECK(dab.log_magnitude ==
        doctest::Approx(da.log_magnitude + db.log_magnitude).epsilon(1e-11));
}

TEST_CASE("jacobi eigenvalues of fixed matrices") {
  auto d = hermitian_eigenvalues(ComplexMatrix::diagonal({1.0, 4.0, 2.0}));
  REQUIRE(d.size() == 3);
  CHECK(d[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(d[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(d[2] == doctest::Approx(4.0).epsilon(1e-14));

  // [[2, i], [-i, 2]] has eigenvalues 1 and 3
  ComplexMatrix m(2, 2);
  m(0, 0) = {2.0, 0.0};
  m(0, 1) = {0.0, 1.0};
  m(1, 0) = {0.0, -1.0};
  m(1, 1) = {2.0, 0.0};
  auto e = hermitian_eigenvalues(m);
  REQUIRE(e.size() == 2);
  CHECK(e[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(e[1] == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("jacobi eigenvalues match characteristic polynomial roots on 6x6") {
  ComplexMatrix m = random_product_matrix(23, 5, 6);
  auto eig = hermitian_eigenvalues(m);
  auto roots = oracle::poly_roots(oracle::char_poly(m));
  auto ref = oracle::real_sorted(roots);
  REQUIRE(eig.size() == ref.size());
  for (const auto &r : roots)
    CHECK(std::abs(r.imag()) <= 1e-8 * (1.0 + std::abs(r)));
  for (std::size_t i = 0; i < eig.size(); ++i)
    CHECK(eig[i] == doctest::Approx(ref[i]).epsilon(1e-8));
}

TEST_CASE("jacobi eigenvectors reconstruct the matrix") {
  ComplexMatrix m = random_product_matrix(31, 9, 6);
  ComplexMatrix v;
  auto eig = hermitian_eigenvalues(m, &v);
  const double norm = m.max_abs();

  // residual of A v_k = lambda_k v_k, columns of v
  for (int k = 0; k < 6; ++k) {
    for (int r = 0; r < 6; ++r) {
      cplx av = 0.0;
      for (int c = 0; c < 6; ++c)
        av += m(r, c) * v(c, k);
      CHECK(std::abs(av - eig[static_cast<size_t>(k)] * v(r, k)) <= 1e-10 * norm);
    }
  }

  // unitarity
  ComplexMatrix vhv = v.conjugate_transpose() * v;
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) {
      const double want = r == c ? 1.0 : 0.0;
      CHECK(std::abs(vhv(r, c) - want) <= 1e-12);
    }
}

TEST_CASE("jacobi rejects a visibly non-hermitian matrix") {
  ComplexMatrix m(2, 2);
  m(0, 0) = {1.0, 0.0};
  m(0, 1) = {5.0, 0.0};
  m(1, 0) = {0.0, 0.0};
  m(1, 1) = {1.0, 0.0};
  CHECK_THROWS_AS(hermitian_eigenvalues(m), validation_error);
}

TEST_CASE("gaussian sampler moments and determinism") {
  const double sigma2 = 2.0;
  ComplexMatrix h = sample_complex_gaussian(42, 0, 100, 100, sigma2);
  const int n = 100 * 100;
  double sum_re = 0.0, sum_im = 0.0, sum_p = 0.0;
  for (int r = 0; r < 100; ++r)
    for (int c = 0; c < 100; ++c) {
      sum_re += h(r, c).real();
      sum_im += h(r, c).imag();
      sum_p += std::norm(h(r, c));
    }
  // mean of each part has sd sqrt(sigma2/2/n); |h|^2 has variance sigma2^2
  const double se_mean = std::sqrt(sigma2 / 2 / n);
  CHECK(std::abs(sum_re / n) <= 4 * se_mean);
  CHECK(std::abs(sum_im / n) <= 4 * se_mean);
  CHECK(std::abs(sum_p / n - sigma2) <= 4 * sigma2 / std::sqrt(n));

  ComplexMatrix again = sample_complex_gaussian(42, 0, 100, 100, sigma2);
  ComplexMatrix other = sample_complex_gaussian(42, 1, 100, 100, sigma2);
  bool identical = true, differs = false;
  for (int r = 0; r < 100; ++r)
    for (int c = 0; c < 100; ++c) {
      identical = identical && h(r, c) == again(r, c);
      differs = differs || h(r, c) != other(r, c);
    }
  CHECK(identical);
  CHECK(differs);
}
