#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qes/legendre3.hpp"
#include "qes/sum_engine.hpp"

using qes::QuadPoly;

TEST_CASE("legendre3: identity for y in {-1, 0, 1}") {
  CHECK(qes::legendre_identity_check());
  CHECK(qes::legendre3(1) == 1);
  CHECK(qes::legendre3(0) == 0);
  CHECK(qes::legendre3(-1) == -1);
  CHECK(qes::i_sqrt3().value().imag() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  const auto sq = qes::i_sqrt3() * qes::i_sqrt3();
  CHECK(sq.as_integer() == std::optional<qes::BigInt>(-3));
}

TEST_CASE("legendre3: zero polynomial, n = 2") {
  const auto d = qes::decompose_m3(QuadPoly(2, 3));
  REQUIRE(d.terms.size() == 2);
  CHECK(d.terms[0].sign == 1);
  CHECK(d.terms[0].poly.quadratic(0, 1) == 1);
  CHECK(d.terms[1].sign == -1);
  CHECK(d.terms[1].poly.quadratic(0, 1) == 2);
  CHECK(std::abs(d.recombine()) < 1e-12);
  CHECK(qes::recombination_exact(QuadPoly(2, 3), d));
}

TEST_CASE("legendre3: x1x2 recombines to eval_naive") {
  QuadPoly f(2, 3);
  f.set_quadratic(0, 1, 1);
  const auto d = qes::decompose_m3(f);
  CHECK(std::abs(d.recombine() - qes::eval_naive(f).normalized()) <= 1e-12);
  CHECK(std::abs(d.scale - 1.0 / std::complex<double>(0.0, std::sqrt(3.0))) < 1e-15);
}

TEST_CASE("legendre3: recombination for random f and sigma, even and odd n") {
  std::mt19937_64 rng(31);
  for (int n = 1; n <= 8; ++n) {
    const int trials = n <= 6 ? 100 : 20;
    for (int t = 0; t < trials; ++t) {
      const auto f = oracle::random_poly(n, 3, rng);
      std::vector<int> sigma(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) sigma[static_cast<std::size_t>(i)] = i;
      std::shuffle(sigma.begin(), sigma.end(), rng);
      const auto d = qes::decompose_m3(f, sigma);
      CHECK(d.terms.size() == (std::size_t{1} << ((n + 1) / 2)));
      CHECK(d.factors == (n + 1) / 2);
      CHECK(std::abs(d.recombine() - oracle::normalized_sum(f)) <= 1e-9);
      CHECK(qes::recombination_exact(f, d));
    }
  }
}

TEST_CASE("legendre3: even n gives exactly 2^(n/2) terms") {
  for (int n : {2, 4, 6, 8}) CHECK(qes::decompose_m3(QuadPoly(n, 3)).terms.size() == (std::size_t{1} << (n / 2)));
}

TEST_CASE("legendre3: recombination does not depend on the pairing") {
  std::mt19937_64 rng(32);
  for (int n : {4, 5, 6, 8}) {
    const auto f = oracle::random_poly(n, 3, rng);
    const auto expected = oracle::normalized_sum(f);
    for (const auto& sigma : qes::all_pairings(n)) {
      CHECK(std::abs(qes::decompose_m3(f, sigma).recombine() - expected) <= 1e-9);
    }
  }
}

TEST_CASE("legendre3: pairing counts") {
  CHECK(qes::all_pairings(2).size() == 1);
  CHECK(qes::all_pairings(4).size() == 3);
  CHECK(qes::all_pairings(6).size() == 15);
  CHECK(qes::all_pairings(8).size() == 105);
  CHECK(qes::all_pairings(3).size() == 3);
  CHECK(qes::all_pairings(5).size() == 15);
  CHECK_THROWS_AS(qes::all_pairings(11), std::invalid_argument);
}

TEST_CASE("legendre3: nonsingularity mod 3") {
  QuadPoly h(2, 3);
  h.set_quadratic(0, 1, 1);
  CHECK(qes::quadratic_form_det_mod3(h) == 2);
  CHECK(qes::is_nonsingular_mod3(h));
  CHECK_FALSE(qes::is_nonsingular_mod3(QuadPoly(2, 3)));

  QuadPoly path(3, 3);
  path.set_quadratic(0, 1, 1).set_quadratic(1, 2, 1);
  CHECK_FALSE(qes::is_nonsingular_mod3(path));

  // Linear terms do not matter.
  h.set_linear(0, 2);
  CHECK(qes::is_nonsingular_mod3(h));
}

TEST_CASE("legendre3: determinant against cofactor expansion") {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + t % 5;
    const auto f = oracle::random_poly(n, 3, rng);
    std::vector<std::vector<int>> a(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    for (const auto& [ij, c] : f.quadratic_terms()) {
      a[ij.first][ij.second] = 2 * c % 3;
      a[ij.second][ij.first] = 2 * c % 3;
    }
    // Leibniz formula over all permutations.
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    long long det = 0;
    do {
      int inversions = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) inversions += perm[i] > perm[j] ? 1 : 0;
      }
      long long term = inversions % 2 == 0 ? 1 : -1;
      for (int i = 0; i < n; ++i) term *= a[static_cast<std::size_t>(i)][static_cast<std::size_t>(perm[i])];
      det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(qes::quadratic_form_det_mod3(f) == ((det % 3) + 3) % 3);
  }
}

TEST_CASE("legendre3: nonsingular pairings obey the (sqrt3/2)^(n/2) bound") {
  QuadPoly f(2, 3);
  f.set_quadratic(0, 1, 1);
  CHECK_FALSE(qes::verify_theorem_a(f, {0, 1}).applicable);

  int applicable = 0;
  const auto spec = qes::FamilySpec::all_quadratic(2, 3);
  for (std::uint64_t i = 0; i < 27; ++i) {
    const auto g = qes::family_member(spec, i);
    const auto check = qes::verify_theorem_a(g, {0, 1});
    if (!check.applicable) continue;
    ++applicable;
    CHECK(check.holds);
  }
  CHECK(applicable > 0);

  std::mt19937_64 rng(34);
  int found = 0;
  for (int t = 0; t < 300; ++t) {
    const auto g = oracle::random_poly(4, 3, rng);
    for (const auto& sigma : qes::all_pairings(4)) {
      const auto check = qes::verify_theorem_a(g, sigma);
      if (!check.applicable) continue;
      ++found;
      CHECK(check.holds);
      CHECK(check.bound == doctest::Approx(0.75));
    }
  }
  CHECK(found > 0);

  CHECK_THROWS_AS(qes::verify_theorem_a(QuadPoly(3, 3), {0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(qes::verify_theorem_a_odd(QuadPoly(2, 3), {0, 1}), std::invalid_argument);
  const auto odd = qes::verify_theorem_a_odd(QuadPoly(3, 3), {0, 1, 2});
  CHECK(odd.bound == doctest::Approx(std::sqrt(3.0) / 2));
}

TEST_CASE("legendre3: errors and JSON") {
  CHECK_THROWS_AS(qes::decompose_m3(QuadPoly(2, 5)), std::invalid_argument);
  CHECK_THROWS_AS(qes::decompose_m3(QuadPoly(3, 3), {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(qes::decompose_m3(QuadPoly(3, 3), {0, 1, 1}), std::invalid_argument);

  QuadPoly f(3, 3);
  f.set_quadratic(0, 2, 1);
  const auto j = qes::to_json(qes::decompose_m3(f, {2, 0, 1}));
  CHECK(j["sigma"] == nlohmann::json::array({3, 1, 2}));
  CHECK(j["terms"].size() == 4);
  CHECK(j["terms"][0]["sign"] == 1);
  CHECK(j["terms"][0]["a"]["1,3"] == 2);
}
