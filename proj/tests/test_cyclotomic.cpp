#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qes/cyclotomic.hpp"

using qes::BigInt;
using qes::CycInt;

namespace {

CycInt make(int m, std::vector<long long> v) {
  std::vector<BigInt> c(v.begin(), v.end());
  return CycInt(m, std::move(c));
}

}  // namespace

TEST_CASE("cyclotomic: product of w + w^2 with its conjugate") {
  const CycInt a = make(3, {0, 1, 1});
  const CycInt p = qes::cyc_arith(a, qes::cyc_arith(a, a, qes::CycOp::conj), qes::CycOp::mul);
  CHECK(p == make(3, {2, 1, 1}));
  CHECK(qes::same_value(p, make(3, {1, 0, 0})));
}

TEST_CASE("cyclotomic: subtraction and exponent wraparound") {
  const CycInt a = make(5, {3, -1, 4, 1, -5});
  CHECK((a - a).coeffs() == std::vector<BigInt>(5, 0));
  for (int m : {3, 5, 7, 9, 15}) {
    CHECK(CycInt::monomial(m, 1) * CycInt::monomial(m, m - 1) == CycInt::monomial(m, 0));
  }
}

TEST_CASE("cyclotomic: zero test examples") {
  CHECK(qes::cyc_is_zero(make(3, {1, 1, 1})));
  CHECK_FALSE(qes::cyc_is_zero(make(3, {1, 0, 0})));
  CHECK(qes::cyc_is_zero(make(5, {2, 2, 2, 2, 2})));
  CHECK(std::abs(make(5, {2, 2, 2, 2, 2}).value()) < 1e-12);
  // Composite modulus: 1 + w^3 + w^6 vanishes for m = 9.
  CHECK(qes::cyc_is_zero(make(9, {1, 0, 0, 1, 0, 0, 1, 0, 0})));
  CHECK_FALSE(qes::cyc_is_zero(make(9, {1, 0, 0, 1, 0, 0, 0, 0, 0})));
}

TEST_CASE("cyclotomic: absolute values") {
  CHECK(qes::cyc_abs(make(3, {0, 1, -1})) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(qes::cyc_abs(CycInt(7)) == 0.0);
  CHECK(qes::cyc_abs(make(5, {0, 1, 0, 0, -1})) == doctest::Approx(2.0 * std::sin(2.0 * std::numbers::pi / 5)));
  CHECK(qes::cyc_abs(make(5, {0, 1, 0, 0, -1})) == doctest::Approx(1.9021130).epsilon(1e-7));
}

TEST_CASE("cyclotomic: modulus errors") {
  CHECK_THROWS_AS(CycInt(4), std::invalid_argument);
  CHECK_THROWS_AS(CycInt(1), std::invalid_argument);
  CHECK_THROWS_AS(make(3, {1, 0, 0}) + make(5, {1, 0, 0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(qes::root_params(10), std::invalid_argument);
}

TEST_CASE("cyclotomic: cyclotomic polynomials") {
  CHECK(qes::cyclotomic_polynomial(3) == std::vector<BigInt>{1, 1, 1});
  CHECK(qes::cyclotomic_polynomial(9) == std::vector<BigInt>{1, 0, 0, 1, 0, 0, 1});
  CHECK(qes::cyclotomic_polynomial(15) == std::vector<BigInt>{1, -1, 0, 1, -1, 1, 0, -1, 1});
}

TEST_CASE("cyclotomic: root parameters") {
  const auto p3 = qes::root_params(3);
  CHECK(p3.c == 1);
  CHECK(p3.q == doctest::Approx(1.7320508).epsilon(1e-7));
  const auto p7 = qes::root_params(7);
  CHECK(p7.c == 2);
  CHECK(p7.q == doctest::Approx(2.0 * std::cos(std::numbers::pi / 14)).epsilon(1e-12));
  CHECK(qes::root_params(5).r == doctest::Approx(1.1755705).epsilon(1e-7));
}

TEST_CASE("cyclotomic: q is the maximum of |w^y - w^-y|, attained exactly at +-c") {
  for (int m = 3; m <= 99; m += 2) {
    const auto p = qes::root_params(m);
    CHECK(p.q >= std::sqrt(3.0) - 1e-12);
    CHECK(p.q < 2.0);
    for (int y = 0; y < m; ++y) {
      const double v = std::abs(oracle::omega_pow(m, y) - oracle::omega_pow(m, -y));
      CHECK(v <= p.q + 1e-12);
      const bool at_c = y == p.c || y == m - p.c;
      CHECK((std::abs(v - p.q) < 1e-12) == at_c);
    }
  }
}

TEST_CASE("cyclotomic: Chebyshev examples and coefficients") {
  CHECK(qes::chebyshev_q(2, 2.0) == doctest::Approx(2.0));
  const double q5 = 2.0 * std::cos(std::numbers::pi / 10);
  CHECK(qes::chebyshev_q(3, q5) == doctest::Approx(1.1755705).epsilon(1e-7));
  CHECK(qes::chebyshev_seq(5).coeffs == std::vector<std::int64_t>{0, 5, 0, -5, 0, 1});
  CHECK(qes::chebyshev_seq(0).coeffs == std::vector<std::int64_t>{2});
  for (int k = 1; k <= 20; ++k) {
    const auto seq = qes::chebyshev_seq(k);
    CHECK(seq.degree == k);
    CHECK(seq.coeffs.back() == 1);
    const double x = 1.37;
    CHECK(seq(x) == doctest::Approx(qes::chebyshev_q(k, x)).epsilon(1e-10));
  }
}

TEST_CASE("cyclotomic: Chebyshev identity on random angles") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  for (int t = 0; t < 1000; ++t) {
    const double theta = angle(rng);
    for (int k = 0; k <= 32; ++k) {
      CHECK(std::abs(qes::chebyshev_q(k, 2.0 * std::cos(theta)) - 2.0 * std::cos(k * theta)) <= 1e-12);
    }
  }
}

TEST_CASE("cyclotomic: |a conj(a)| = |a|^2 and zero test agrees with the complex value") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> small(-2, 2);
  for (int t = 0; t < 10000; ++t) {
    const int m = oracle::random_odd(rng, 3, 15);
    std::vector<BigInt> c(static_cast<std::size_t>(m));
    for (auto& x : c) x = small(rng);
    const CycInt a(m, c);
    const double abs_a = qes::cyc_abs(a);
    const double abs_prod = qes::cyc_abs(a * a.conj());
    CHECK(std::abs(abs_prod - abs_a * abs_a) <= 1e-9 * std::max(1.0, abs_a * abs_a));
    CHECK(qes::cyc_is_zero(a) == (abs_a < 1e-9));
  }
}

TEST_CASE("cyclotomic: exact sums of roots of unity (character orthogonality)") {
  for (int m = 3; m <= 15; m += 2) {
    for (int r = 0; r < m; ++r) {
      CycInt sum(m);
      for (int a = 0; a < m; ++a) sum += CycInt::monomial(m, static_cast<std::int64_t>(a) * r);
      if (r == 0) {
        CHECK(sum.as_integer() == BigInt(m));
      } else {
        CHECK(qes::cyc_is_zero(sum));
      }
    }
  }
}
