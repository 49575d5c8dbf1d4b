#include "entrocount/set_family.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "entrocount/errors.hpp"

namespace entrocount {

namespace {

constexpr double kFamilySlack = 1e-12;
constexpr double kConcavitySlack = 1e-9;

ElementMask ground_mask(std::size_t n) {
  return n == 64 ? ~ElementMask{0} : (ElementMask{1} << n) - 1;
}

void require_lemma_range(AlphaParameter alpha) {
  if (alpha.value() < 1.0 || alpha.value() > kLemmaAlphaMax)
    throw UnsupportedRangeError("result holds only for alpha in [1, 3.67]");
}

double binom2(double m) { return m * (m - 1.0) / 2.0; }

}  // namespace

SetFamily::SetFamily(std::size_t n, std::vector<ElementMask> sets)
    : n_(n), sets_(std::move(sets)) {
  if (n == 0 || n > kMaxGroundSet) throw ArgumentError("ground set size must be in 1..64");
  const ElementMask allowed = ground_mask(n);
  std::unordered_set<ElementMask> seen;
  for (ElementMask s : sets_) {
    if (s & ~allowed) throw ArgumentError("set contains an element outside the ground set");
    if (!seen.insert(s).second) throw ArgumentError("family contains a repeated set");
  }
}

SetFamily SetFamily::from_lists(std::size_t n,
                                const std::vector<std::vector<std::size_t>>& sets) {
  std::vector<ElementMask> masks;
  masks.reserve(sets.size());
  for (const auto& list : sets) {
    ElementMask mask = 0;
    for (std::size_t e : list) {
      if (e >= n || e >= kMaxGroundSet)
        throw ArgumentError("set element " + std::to_string(e) + " outside the ground set");
      mask |= ElementMask{1} << e;
    }
    masks.push_back(mask);
  }
  return SetFamily(n, std::move(masks));
}

SetFamily SetFamily::power_set(std::size_t n) {
  if (n == 0 || n > 20) throw ArgumentError("power set supported for 1 <= n <= 20");
  std::vector<ElementMask> all(std::size_t{1} << n);
  for (std::size_t s = 0; s < all.size(); ++s) all[s] = s;
  return SetFamily(n, std::move(all));
}

std::size_t SetFamily::frequency(std::size_t j) const {
  if (j >= n_) throw ArgumentError("element out of range");
  return std::size_t(std::count_if(sets_.begin(), sets_.end(),
                                   [j](ElementMask s) { return (s >> j) & 1u; }));
}

std::optional<std::size_t> SetFamily::uniform_size() const {
  if (sets_.empty()) return std::nullopt;
  const int k = std::popcount(sets_.front());
  for (ElementMask s : sets_)
    if (std::popcount(s) != k) return std::nullopt;
  return std::size_t(k);
}

FractionVector fraction_vector(const SetFamily& f) {
  if (f.size() == 0) throw ArgumentError("family is empty");
  FractionVector q;
  q.members = f.size();
  for (std::size_t j = 0; j < f.ground_size(); ++j) q.counts.push_back(f.frequency(j));
  return q;
}

CheckResult check_cardinality_bound(const SetFamily& f, AlphaParameter alpha) {
  if (alpha.value() < 1.0) throw UnsupportedRangeError("cardinality bound needs alpha >= 1");
  const FractionVector q = fraction_vector(f);
  CheckResult r;
  r.lhs = alpha_log(double(f.size()), alpha);
  for (std::size_t j = 0; j < q.size(); ++j) r.rhs += binary_thc_entropy(q[j], alpha);
  r.holds = r.lhs <= r.rhs + kFamilySlack;
  return r;
}

bool check_distinct_pairwise_intersections(const SetFamily& f) {
  if (f.size() < 2) throw ArgumentError("need at least two sets to intersect");
  const auto& s = f.sets();
  std::unordered_set<ElementMask> seen;
  seen.reserve(s.size() * s.size() / 2);
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!seen.insert(s[i] & s[j]).second) return false;
  return true;
}

double lemma_function(double lambda, AlphaParameter alpha) {
  if (lambda == 0.0) return 0.0;
  return binary_thc_entropy(lambda * lambda, alpha) / lambda;
}

IntersectionCheck check_intersection_family_bound(const SetFamily& f, std::size_t k,
                                                  AlphaParameter alpha) {
  require_lemma_range(alpha);
  const auto size = f.uniform_size();
  if (!size || *size != k)
    throw ArgumentError("every member set must have exactly k = " + std::to_string(k) +
                        " elements");
  if (!check_distinct_pairwise_intersections(f))
    throw PreconditionError("two pairs of member sets share an intersection");

  const FractionVector q = fraction_vector(f);
  const std::size_t m = q.members;
  IntersectionCheck r;
  // lambda_j <= 1/sqrt(2)  <=>  2 c_j^2 <= m^2, decided on exact counts.
  r.precondition_met = std::all_of(q.counts.begin(), q.counts.end(), [m](std::size_t c) {
    return 2 * c * c <= m * m;
  });

  if (k > 0) {
    double sum_sq = 0.0;
    for (std::size_t c : q.counts) sum_sq += double(c) * double(c);
    r.lambda = sum_sq / (double(m) * double(m) * double(k));
  }
  r.lhs = alpha_log(binom2(double(m)), alpha);
  r.rhs = double(k) * lemma_function(r.lambda, alpha);
  r.holds = r.lhs <= r.rhs + kFamilySlack;
  return r;
}

ConcavityReport verify_lemma_concavity(AlphaParameter alpha, double grid_step,
                                       bool full_interval) {
  require_lemma_range(alpha);
  if (!(grid_step > 0.0 && grid_step <= 0.01))
    throw ArgumentError("grid step must lie in (0, 0.01]");
  if (full_interval && alpha.value() > 2.0)
    throw UnsupportedRangeError("concavity on (0, 1] is claimed only for alpha in [1, 2]");

  const double upper = full_interval ? 1.0 : 1.0 / std::sqrt(2.0);
  std::vector<double> grid;
  for (std::size_t i = 1;; ++i) {
    const double x = double(i) * grid_step;
    if (x > upper + 1e-15) break;
    grid.push_back(std::min(x, upper));
  }

  // Midpoints of grid pairs are either grid points or half-step points.
  std::vector<double> values(grid.size());
  std::vector<double> half_values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = lemma_function(grid[i], alpha);
    if (i + 1 < grid.size())
      half_values[i] = lemma_function(grid[i] + grid_step / 2.0, alpha);
  }

  ConcavityReport report;
  report.worst_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      const std::size_t s = i + j;
      const double mid = s % 2 == 0 ? values[s / 2] : half_values[s / 2];
      const double gap = (values[i] + values[j]) / 2.0 - mid;
      report.worst_violation = std::max(report.worst_violation, gap);
    }
  }
  report.passed = report.worst_violation <= kConcavitySlack;
  return report;
}

std::optional<std::size_t> max_family_size(std::size_t k, double lambda,
                                           AlphaParameter alpha, std::size_t cap) {
  if (k == 0) throw ArgumentError("k must be positive");
  if (!(lambda > 0.0 && lambda <= 1.0)) throw ArgumentError("lambda must lie in (0, 1]");
  const double rhs = double(k) * lemma_function(lambda, alpha);
  auto fits = [&](std::size_t m) {
    return alpha_log(binom2(double(m)), alpha) <= rhs + kFamilySlack;
  };
  if (fits(cap)) return std::nullopt;
  std::size_t lo = 2, hi = cap;  // fits(lo), !fits(hi)
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    (fits(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace entrocount
