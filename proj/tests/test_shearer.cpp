#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "entrocount/errors.hpp"
#include "entrocount/random.hpp"
#include "entrocount/shearer.hpp"
#include "oracles.hpp"

using namespace entrocount;

namespace {

const AlphaParameter kShannon{1.0};
const AlphaParameter kTwo{2.0};

JointTable uniform_bits() { return JointTable({2, 2}, {0.25, 0.25, 0.25, 0.25}); }

// X (coordinate 0) given Y (coordinate 1): Y = 0 forces X = 0, Y = 1 makes X
// uniform on {1, 2}.
JointTable merge_example() {
  return JointTable({3, 2}, {0.5, 0.0, 0.0, 0.25, 0.0, 0.25});
}

}  // namespace

TEST_CASE("cover family") {
  const CoverFamily c(2, {{0}, {1}, {0, 1}});
  CHECK(c.k() == 2);
  CHECK(CoverFamily::singletons(4).k() == 1);
  CHECK(CoverFamily(3, {{0, 1}}).k() == 0);
  CHECK_THROWS_AS(CoverFamily(2, {{2}}), ArgumentError);
  CHECK_THROWS_AS(CoverFamily(2, {{0, 0}}), ArgumentError);
}

TEST_CASE("subadditivity examples") {
  const auto r = check_subadditivity(uniform_bits(), kTwo);
  CHECK(r.lhs == doctest::Approx(0.75));
  CHECK(r.rhs == doctest::Approx(1.0));
  CHECK(r.holds);

  const JointTable corr({2, 2}, {0.5, 0.0, 0.0, 0.5});
  const auto c = check_subadditivity(corr, kShannon);
  CHECK(c.lhs == doctest::Approx(std::log(2.0)));
  CHECK(c.rhs == doctest::Approx(2 * std::log(2.0)));

  const DiscreteDistribution parts[] = {DiscreteDistribution({0.2, 0.8}),
                                        DiscreteDistribution({0.1, 0.3, 0.6})};
  const auto ind = check_subadditivity(JointTable::product(parts), kShannon);
  CHECK(std::abs(ind.lhs - ind.rhs) <= 1e-12);

  CHECK_THROWS_AS(check_subadditivity(uniform_bits(), AlphaParameter(0.5)), UnsupportedRangeError);
}

TEST_CASE("shearer examples") {
  const CoverFamily cover(2, {{0}, {1}, {0, 1}});
  const double h2 = oracle::tsallis({0.5, 0.5}, 2.0);
  const double h4 = oracle::tsallis({0.25, 0.25, 0.25, 0.25}, 2.0);
  CHECK(2 * h4 == doctest::Approx(1.5));
  CHECK(2 * h2 + h4 == doctest::Approx(1.75));
  const auto r = check_shearer(uniform_bits(), cover, kTwo);
  CHECK(r.lhs == doctest::Approx(1.5));
  CHECK(r.rhs == doctest::Approx(1.75));
  CHECK(r.holds);

  const JointTable t({2, 3}, {0.1, 0.2, 0.1, 0.3, 0.2, 0.1});
  const auto full = check_shearer(t, CoverFamily(2, {{0, 1}}), AlphaParameter(1.5));
  CHECK(full.lhs == doctest::Approx(full.rhs).epsilon(1e-14));

  const JointTable point({2, 2}, {0.0, 1.0, 0.0, 0.0});
  const auto p = check_shearer(point, cover, kTwo);
  CHECK(p.lhs == 0.0);
  CHECK(p.rhs == 0.0);
  CHECK(p.holds);

  CHECK_THROWS_AS(check_shearer(t, CoverFamily::singletons(3), kTwo), ArgumentError);
  CHECK_THROWS_AS(check_shearer(t, cover, AlphaParameter(0.9)), UnsupportedRangeError);
}

TEST_CASE("trace corollary examples") {
  const auto ps = SetFamily::power_set(2);
  const auto singles = SetFamily::from_lists(2, {{0}, {1}});
  const auto r1 = check_trace_corollary(ps, singles, kShannon);
  CHECK(r1.lhs == doctest::Approx(std::log(4.0)));
  CHECK(std::abs(r1.lhs - r1.rhs) <= 1e-15);
  const auto r2 = check_trace_corollary(ps, singles, kTwo);
  CHECK(r2.lhs == doctest::Approx(0.75));
  CHECK(r2.rhs == doctest::Approx(1.0));
  CHECK(r2.holds);

  const auto f = SetFamily::from_lists(3, {{0}, {0, 2}, {1, 2}});
  const auto whole = check_trace_corollary(f, SetFamily::from_lists(3, {{0, 1, 2}}), kTwo);
  CHECK(whole.lhs == whole.rhs);

  CHECK_THROWS_AS(check_trace_corollary(f, SetFamily::from_lists(3, {{0, 1}}), kTwo), ArgumentError);
}

TEST_CASE("trace corollary by hand at alpha = 1") {
  // Groups {0,1}, {1,2}, {0,2} give k = 2. Traces:
  //   on {0,1}: {}, {0}, {0,1}, {1}         -> 4
  //   on {1,2}: {}, {}, {1}, {1,2}          -> 3
  //   on {0,2}: {}, {0}, {0}, {2}           -> 3
  // Classical Shearer: 2 ln 4 <= ln 4 + ln 3 + ln 3.
  const auto f = SetFamily::from_lists(3, {{}, {0}, {0, 1}, {1, 2}});
  const auto g = SetFamily::from_lists(3, {{0, 1}, {1, 2}, {0, 2}});
  const auto r = check_trace_corollary(f, g, kShannon);
  CHECK(r.lhs == doctest::Approx(2 * std::log(4.0)));
  CHECK(r.rhs == doctest::Approx(std::log(4.0) + 2 * std::log(3.0)));
  CHECK(r.holds);
}

TEST_CASE("conditioning monotonicity examples") {
  const std::size_t chain[] = {1};
  const auto flat = check_conditioning_monotonicity(uniform_bits(), 0, chain, kTwo,
                                                    ConditionalForm::kDaroczy);
  CHECK(flat.holds);
  CHECK(flat.values.size() == 2);

  const auto w = check_conditioning_monotonicity(uniform_bits(), 0, chain, kTwo,
                                                 ConditionalForm::kWeighted);
  CHECK(w.values[0] == doctest::Approx(w.values[1]));

  // X2 duplicates X0.
  const JointTable copy({2, 2, 2}, {0.2, 0.0, 0.3, 0.0, 0.0, 0.1, 0.0, 0.4});
  const std::size_t ending[] = {1, 2};
  const auto d = check_conditioning_monotonicity(copy, 0, ending, kTwo, ConditionalForm::kDaroczy);
  CHECK(d.holds);
  CHECK(d.values.back() == 0.0);

  CHECK_THROWS_AS(check_conditioning_monotonicity(uniform_bits(), 0, chain, AlphaParameter(0.5),
                                                  ConditionalForm::kDaroczy),
                  UnsupportedRangeError);
  CHECK_NOTHROW(check_conditioning_monotonicity(uniform_bits(), 0, chain, AlphaParameter(0.5),
                                                ConditionalForm::kWeighted));
}

TEST_CASE("merge bound examples") {
  const std::vector<std::vector<std::size_t>> blocks = {{0}, {1}};
  const auto r = check_merge_bound(merge_example(), 0, 1, blocks, kShannon, ConditionalForm::kWeighted);
  CHECK(r.lhs == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));
  CHECK(r.rhs == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));
  CHECK(r.holds);

  // X a function of Y.
  const JointTable det({2, 2}, {0.3, 0.0, 0.0, 0.7});
  const auto d = check_merge_bound(det, 0, 1, blocks, kTwo, ConditionalForm::kDaroczy);
  CHECK(d.lhs == 0.0);
  CHECK(d.holds);

  const JointTable unif({3, 2}, {1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6});
  const std::vector<std::vector<std::size_t>> one = {{0, 1}};
  for (auto form : {ConditionalForm::kDaroczy, ConditionalForm::kWeighted}) {
    const auto s = check_merge_bound(unif, 0, 1, one, kTwo, form);
    CHECK(s.rhs == doctest::Approx(alpha_log(3.0, kTwo)));
    CHECK(s.holds);
  }
  const auto sw = check_merge_bound(unif, 0, 1, one, kTwo, ConditionalForm::kWeighted);
  CHECK(sw.lhs == doctest::Approx(sw.rhs));

  const std::vector<std::vector<std::size_t>> overlap = {{0, 1}, {1}};
  const std::vector<std::vector<std::size_t>> partial = {{0}};
  CHECK_THROWS_AS(check_merge_bound(unif, 0, 1, overlap, kTwo, ConditionalForm::kWeighted),
                  PreconditionError);
  CHECK_THROWS_AS(check_merge_bound(unif, 0, 1, partial, kTwo, ConditionalForm::kWeighted),
                  PreconditionError);
  // Both values of Y reach all of X.
  CHECK_THROWS_AS(check_merge_bound(unif, 0, 1, blocks, kTwo, ConditionalForm::kWeighted),
                  PreconditionError);
  CHECK_THROWS_AS(check_merge_bound(unif, 0, 1, one, AlphaParameter(0.5), ConditionalForm::kDaroczy),
                  UnsupportedRangeError);
}

TEST_CASE("random tables and covers") {
  gen::Rng rng(51);
  for (int trial = 0; trial < 150; ++trial) {
    const auto t = gen::random_table(rng);
    const auto cover = gen::random_cover(rng, t.dimensions());
    for (double a : {1.0, 1.5, 2.0, 3.0}) {
      CHECK(check_shearer(t, cover, AlphaParameter(a)).holds);
      const auto sub = check_subadditivity(t, AlphaParameter(a));
      const auto single = check_shearer(t, CoverFamily::singletons(t.dimensions()), AlphaParameter(a));
      CHECK(std::abs(sub.lhs - single.lhs) <= 1e-12);
      CHECK(std::abs(sub.rhs - single.rhs) <= 1e-12);
    }
    const auto order = rng.permutation(t.dimensions());
    const std::span<const std::size_t> chain(order.data() + 1, order.size() - 1);
    for (double a : {0.5, 1.0, 2.0}) {
      CHECK(check_conditioning_monotonicity(t, order[0], chain, AlphaParameter(a),
                                            ConditionalForm::kWeighted).holds);
      if (a >= 1.0)
        CHECK(check_conditioning_monotonicity(t, order[0], chain, AlphaParameter(a),
                                              ConditionalForm::kDaroczy).holds);
    }
  }
}

TEST_CASE("random families and groups") {
  gen::Rng rng(52);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = rng.between(1, 8);
    const auto f = gen::random_family(rng, n, rng.between(1, std::size_t{1} << n));
    const auto cover = gen::random_cover(rng, n);
    std::vector<std::vector<std::size_t>> lists(cover.groups().begin(), cover.groups().end());
    std::vector<ElementMask> masks;
    for (const auto& g : lists) {
      ElementMask m = 0;
      for (auto j : g) m |= ElementMask{1} << j;
      if (std::find(masks.begin(), masks.end(), m) == masks.end()) masks.push_back(m);
    }
    const SetFamily groups(n, masks);
    for (double a : {1.0, 2.0, 3.0}) CHECK(check_trace_corollary(f, groups, AlphaParameter(a)).holds);
  }
}
