#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "entrocount/errors.hpp"
#include "entrocount/random.hpp"
#include "entrocount/set_family.hpp"

using namespace entrocount;

namespace {

const AlphaParameter kShannon{1.0};

SetFamily triangle() { return SetFamily::from_lists(3, {{0, 1}, {0, 2}, {1, 2}}); }

// Shannon binary entropy written out directly.
double h(double q) {
  if (q <= 0 || q >= 1) return 0.0;
  return -q * std::log(q) - (1 - q) * std::log(1 - q);
}

}  // namespace

TEST_CASE("family validation") {
  CHECK_THROWS_AS(SetFamily(2, {0b1, 0b1}), ArgumentError);
  CHECK_THROWS_AS(SetFamily(2, {0b100}), ArgumentError);
  CHECK_THROWS_AS(SetFamily::from_lists(2, {{2}}), ArgumentError);
  CHECK_THROWS_AS(SetFamily(65, {}), ArgumentError);
  CHECK(SetFamily::power_set(3).size() == 8);
  CHECK(triangle().uniform_size() == 2u);
  CHECK_FALSE(SetFamily::from_lists(3, {{0}, {0, 1}}).uniform_size().has_value());
}

TEST_CASE("fraction vector") {
  const auto ps = fraction_vector(SetFamily::power_set(5));
  for (std::size_t j = 0; j < 5; ++j) CHECK(ps[j] == 0.5);
  const auto t = fraction_vector(triangle());
  CHECK(t.counts == std::vector<std::size_t>{2, 2, 2});
  CHECK(t[1] == doctest::Approx(2.0 / 3.0));
  const auto single = fraction_vector(SetFamily::from_lists(2, {{0}}));
  CHECK(single[0] == 1.0);
  CHECK(single[1] == 0.0);
  CHECK_THROWS_AS(fraction_vector(SetFamily(3, {})), ArgumentError);
}

TEST_CASE("cardinality bound examples") {
  const auto eq = check_cardinality_bound(SetFamily::power_set(4), kShannon);
  CHECK(eq.lhs == doctest::Approx(4 * std::log(2.0)).epsilon(1e-14));
  CHECK(std::abs(eq.lhs - eq.rhs) <= 1e-10);
  CHECK(eq.holds);

  const auto t = check_cardinality_bound(triangle(), kShannon);
  CHECK(t.lhs == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  CHECK(t.rhs == doctest::Approx(3 * h(2.0 / 3.0)).epsilon(1e-14));
  CHECK(t.rhs == doctest::Approx(1.9095).epsilon(1e-4));
  CHECK(t.holds);

  const auto s = check_cardinality_bound(SetFamily::from_lists(4, {{1, 3}}), AlphaParameter(2.0));
  CHECK(s.lhs == 0.0);
  CHECK(s.holds);

  CHECK_THROWS_AS(check_cardinality_bound(triangle(), AlphaParameter(0.5)), UnsupportedRangeError);
}

TEST_CASE("distinct pairwise intersections") {
  CHECK(check_distinct_pairwise_intersections(triangle()));
  CHECK_FALSE(check_distinct_pairwise_intersections(
      SetFamily::from_lists(4, {{0, 1}, {0, 2}, {0, 3}})));
  CHECK(check_distinct_pairwise_intersections(SetFamily::from_lists(4, {{0, 1}, {2, 3}})));
  CHECK_THROWS_AS(check_distinct_pairwise_intersections(SetFamily::from_lists(2, {{0}})),
                  ArgumentError);
}

TEST_CASE("intersection family bound examples") {
  const auto r = check_intersection_family_bound(triangle(), 2, kShannon);
  CHECK(r.precondition_met);
  CHECK(r.lambda == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(r.lhs == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  const double expected = 2 * h(4.0 / 9.0) / (2.0 / 3.0);
  CHECK(r.rhs == doctest::Approx(expected).epsilon(1e-14));
  CHECK(r.rhs == doctest::Approx(2.061).epsilon(1e-3));
  CHECK(r.holds);

  const auto disjoint = check_intersection_family_bound(
      SetFamily::from_lists(6, {{0, 1, 2}, {3, 4, 5}}), 3, AlphaParameter(2.5));
  CHECK(disjoint.lhs == 0.0);
  CHECK(disjoint.holds);

  // Element 0 lies in both members: lambda_0 = 1 > 1/sqrt 2.
  const auto gated = check_intersection_family_bound(
      SetFamily::from_lists(3, {{0, 1}, {0, 2}}), 2, kShannon);
  CHECK_FALSE(gated.precondition_met);
  CHECK_THROWS_AS(check_intersection_family_bound(
                      SetFamily::from_lists(4, {{0, 1}, {0, 2}, {0, 3}}), 2, kShannon),
                  PreconditionError);

  CHECK_THROWS_AS(check_intersection_family_bound(
                      SetFamily::from_lists(3, {{0}, {0, 1}}), 2, kShannon),
                  ArgumentError);
  CHECK_THROWS_AS(check_intersection_family_bound(triangle(), 3, kShannon), ArgumentError);
  CHECK_THROWS_AS(check_intersection_family_bound(triangle(), 2, AlphaParameter(3.7)),
                  UnsupportedRangeError);
  CHECK_THROWS_AS(check_intersection_family_bound(triangle(), 2, AlphaParameter(0.9)),
                  UnsupportedRangeError);
}

TEST_CASE("lemma function and concavity") {
  CHECK(lemma_function(0.0, kShannon) == 0.0);
  CHECK(lemma_function(0.5, kShannon) == doctest::Approx(h(0.25) / 0.5).epsilon(1e-15));
  for (double a : {1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 3.67}) {
    const auto r = verify_lemma_concavity(AlphaParameter(a), 1e-3);
    CHECK(r.passed);
  }
  for (double a : {1.0, 1.5, 2.0}) CHECK(verify_lemma_concavity(AlphaParameter(a), 1e-3, true).passed);
  CHECK_THROWS_AS(verify_lemma_concavity(AlphaParameter(3.0), 1e-3, true), UnsupportedRangeError);
  CHECK_THROWS_AS(verify_lemma_concavity(AlphaParameter(4.0), 1e-3), UnsupportedRangeError);
  CHECK_THROWS_AS(verify_lemma_concavity(kShannon, 0.02), ArgumentError);
  CHECK_THROWS_AS(verify_lemma_concavity(kShannon, 0.0), ArgumentError);
}

TEST_CASE("random families satisfy the cardinality bound") {
  gen::Rng rng(41);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = rng.between(1, 12);
    const std::size_t cap = std::min<std::size_t>(200, std::size_t{1} << n);
    const auto f = gen::random_family(rng, n, rng.between(1, cap));
    for (double a : {1.0, 1.5, 2.0, 3.0}) CHECK(check_cardinality_bound(f, AlphaParameter(a)).holds);
  }
}

TEST_CASE("random uniform families satisfy the intersection bound") {
  gen::Rng rng(42);
  int accepted = 0;
  for (int attempt = 0; attempt < 5000 && accepted < 60; ++attempt) {
    const std::size_t n = rng.between(6, 14);
    const std::size_t k = rng.between(2, 4);
    const auto f = gen::random_uniform_family(rng, n, k, rng.between(3, 8));
    if (!check_distinct_pairwise_intersections(f)) continue;
    const auto first = check_intersection_family_bound(f, k, kShannon);
    if (!first.precondition_met) continue;
    ++accepted;
    for (double a = 1.0; a <= 3.67; a += 0.25)
      CHECK(check_intersection_family_bound(f, k, AlphaParameter(a)).holds);
  }
  CHECK(accepted == 60);
}

TEST_CASE("max family size") {
  // g at lambda = 2/3, k = 2: rhs = 2.061, ln C(m,2) <= rhs allows m = 4 (ln 6 = 1.79), not 5.
  const auto m = max_family_size(2, 2.0 / 3.0, kShannon);
  REQUIRE(m.has_value());
  CHECK(*m == 4);
  // ln_2 is bounded by 1, so a right side above 1 never binds.
  CHECK_FALSE(max_family_size(4, 0.5, AlphaParameter(2.0)).has_value());
}
