#include <cmath>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "qes/extremal.hpp"

using qes::FamilySpec;
using qes::QuadPoly;

TEST_CASE("extremal: canonical extremal polynomials") {
  QuadPoly a(2, 3);
  a.set_quadratic(0, 1, 1);
  CHECK(qes::canonical_extremal(2, 3) == a);

  QuadPoly b(3, 7);
  b.set_quadratic(0, 1, 2).set_linear(2, 2);
  CHECK(qes::canonical_extremal(3, 7) == b);

  QuadPoly c(1, 5);
  c.set_linear(0, 1);
  CHECK(qes::canonical_extremal(1, 5) == c);
}

TEST_CASE("extremal: sharpness examples") {
  const auto ten = qes::verify_sharpness(10, 3);
  CHECK(ten.ok);
  CHECK(ten.norm == doctest::Approx(std::pow(std::sqrt(3.0) / 2, 5)).epsilon(1e-12));
  CHECK(ten.norm == doctest::Approx(0.4871393).epsilon(1e-6));

  const auto one = qes::verify_sharpness(1, 5);
  CHECK(one.ok);
  CHECK(one.norm == doctest::Approx(0.9510565).epsilon(1e-7));

  const auto four = qes::verify_sharpness(4, 9);
  CHECK(four.ok);
  CHECK(four.norm == doctest::Approx(std::pow(std::cos(std::numbers::pi / 18), 2)).epsilon(1e-12));
  CHECK(std::abs(std::abs(oracle::normalized_sum(qes::canonical_extremal(4, 9))) - four.expected) <= 1e-12);

  CHECK_THROWS_AS(qes::verify_sharpness(25, 3), std::invalid_argument);
}

TEST_CASE("extremal: conjecture forms") {
  CHECK(qes::conjecture_forms(4, 5).size() == 12);
  CHECK(qes::conjecture_forms(3, 5).size() == 12);
  CHECK(qes::conjecture_forms(6, 3).size() == 120);
  for (int n = 1; n <= 5; ++n) {
    for (int m : {3, 5, 7}) {
      const auto orbits = qes::conjecture_orbits(n, m);
      CHECK(orbits.size() == 1);
      CHECK(orbits.front() == qes::canonical_form(qes::canonical_extremal(n, m)));
      for (const auto& f : qes::conjecture_forms(n, m)) {
        CHECK(std::abs(std::abs(oracle::normalized_sum(f)) - qes::conjectured_bound(n, m)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("extremal: search examples") {
  const auto r25 = qes::search(FamilySpec::all_quadratic(2, 5), false);
  CHECK(r25.max_norm == doctest::Approx(oracle::half_q(5)).epsilon(1e-12));
  REQUIRE(r25.max_witnesses.size() == 1);
  QuadPoly top(2, 5);
  top.set_quadratic(0, 1, 1);
  CHECK(r25.max_witnesses.front() == qes::canonical_form(top));
  CHECK(r25.exhaustive);
  CHECK(r25.evaluated == 125);

  const auto r23 = qes::search(FamilySpec::all_quadratic(2, 3), false);
  REQUIRE(r23.second_norm.has_value());
  CHECK(*r23.second_norm == doctest::Approx(0.75).epsilon(1e-12));
  QuadPoly lin(2, 3);
  lin.set_linear(0, 1).set_linear(1, 1);
  REQUIRE(r23.second_witnesses.size() == 1);
  CHECK(r23.second_witnesses.front() == qes::canonical_form(lin));
  CHECK(qes::verify_gap(r23));

  const auto r33 = qes::search(FamilySpec::all_quadratic(3, 3), false);
  CHECK(r33.max_norm == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(qes::compare_with_conjecture(r33).equal);
  CHECK(qes::verify_gap(r33));
}

TEST_CASE("extremal: n = 1 gap uses the second largest sine") {
  const auto r = qes::search(FamilySpec::all_quadratic(1, 5), false);
  REQUIRE(r.second_norm.has_value());
  const auto p = qes::root_params(5);
  CHECK(*r.second_norm == doctest::Approx(p.r / 2).epsilon(1e-12));
  CHECK(p.r / 2 <= std::pow(p.q / 2, 2));
  CHECK(qes::verify_gap(r));
}

TEST_CASE("extremal: report invariants") {
  for (auto [n, m] : {std::pair{2, 3}, {2, 7}, {3, 5}, {4, 3}}) {
    const auto r = qes::search(FamilySpec::all_quadratic(n, m), true);
    CHECK(r.max_norm <= qes::conjectured_bound(n, m) + 1e-9);
    if (r.second_norm) CHECK(*r.second_norm < r.max_norm - 1e-9);
    for (const auto& f : r.max_witnesses) {
      CHECK(std::abs(std::abs(oracle::normalized_sum(f)) - r.max_norm) <= 1e-12);
      CHECK(qes::is_canonical(f));
    }
    CHECK(qes::compare_with_conjecture(r).equal);
  }
}

TEST_CASE("extremal: symmetry reduction is lossless") {
  for (auto [n, m] : {std::pair{2, 3}, {2, 5}, {2, 7}, {3, 3}, {3, 5}}) {
    const auto with = qes::search(FamilySpec::all_quadratic(n, m), true);
    const auto without = qes::search(FamilySpec::all_quadratic(n, m), false);
    CHECK(std::abs(with.max_norm - without.max_norm) <= 1e-12);
    CHECK(with.max_witnesses == without.max_witnesses);
    CHECK(with.second_norm.has_value() == without.second_norm.has_value());
    if (with.second_norm) CHECK(std::abs(*with.second_norm - *without.second_norm) <= 1e-12);
    CHECK(with.second_witnesses == without.second_witnesses);
    CHECK(with.evaluated < without.evaluated);
  }
}

TEST_CASE("extremal: merging is independent of partitioning") {
  qes::SweepOptions one;
  one.threads = 1;
  qes::SweepOptions many;
  many.threads = 8;
  const auto a = qes::search(FamilySpec::all_quadratic(3, 5), false, one);
  const auto b = qes::search(FamilySpec::all_quadratic(3, 5), false, many);
  CHECK(a.max_norm == b.max_norm);
  CHECK(a.max_witnesses == b.max_witnesses);
  CHECK(a.second_witnesses == b.second_witnesses);
  CHECK(qes::to_json(a) == qes::to_json(b));
}

TEST_CASE("extremal: sampled reports cannot verify gaps") {
  const auto r = qes::search(FamilySpec::random_sample(5, 5, 300, 7), false);
  CHECK_FALSE(r.exhaustive);
  CHECK(r.seed == std::optional<std::uint64_t>(7));
  CHECK(r.max_norm <= qes::conjectured_bound(5, 5) + 1e-9);
  CHECK_THROWS_AS(qes::verify_gap(r), std::invalid_argument);

  qes::SweepOptions tight;
  tight.budget = 1000;
  CHECK_THROWS_AS(qes::search(FamilySpec::all_quadratic(5, 5), false, tight), qes::BudgetExceeded);
}

TEST_CASE("extremal: n = 1 values other than +-c stay below (q/2)^9") {
  for (int m = 3; m <= 99; m += 2) {
    const auto p = qes::root_params(m);
    for (int a = 0; a < m; ++a) {
      if (a == p.c || a == m - p.c) continue;
      QuadPoly f(1, m);
      f.set_linear(0, a);
      CHECK(std::abs(oracle::normalized_sum(f)) <= std::pow(p.q / 2, 9) + 1e-9);
    }
  }
}

TEST_CASE("extremal: CSV and JSON output") {
  const auto r = qes::search(FamilySpec::all_quadratic(2, 3), true);
  CHECK(qes::search_csv_header() == "n,m,max,conjectured,second,gap_bound,exhaustive");
  const auto row = qes::search_csv_row(r);
  CHECK(row.rfind("2,3,", 0) == 0);
  CHECK(row.substr(row.size() - 4) == "true");
  const auto j = qes::to_json(r);
  CHECK(j["exhaustive"] == true);
  CHECK(j["max_witnesses"].size() == 1);
  CHECK(j["max_witnesses"][0]["a"]["1,2"] == 1);
}
