#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "entrocount/entropy.hpp"

namespace entrocount {

/// Bitmask over a ground set {0, ..., n-1}; element j is bit j.
using ElementMask = std::uint64_t;

inline constexpr std::size_t kMaxGroundSet = 64;

/// Family of distinct subsets of a ground set of n <= 64 elements.
/// The public API is 0-based; file formats use 1-based elements.
class SetFamily {
 public:
  SetFamily(std::size_t n, std::vector<ElementMask> sets);

  /// From 0-based element lists.
  static SetFamily from_lists(std::size_t n,
                              const std::vector<std::vector<std::size_t>>& sets);
  static SetFamily power_set(std::size_t n);

  std::size_t ground_size() const noexcept { return n_; }
  std::size_t size() const noexcept { return sets_.size(); }
  const std::vector<ElementMask>& sets() const noexcept { return sets_; }

  /// Number of members containing element j.
  std::size_t frequency(std::size_t j) const;
  /// Common cardinality of all members, if they share one.
  std::optional<std::size_t> uniform_size() const;

 private:
  std::size_t n_;
  std::vector<ElementMask> sets_;
};

/// q_j = counts[j] / members.
struct FractionVector {
  std::vector<std::size_t> counts;
  std::size_t members = 0;

  double operator[](std::size_t j) const { return double(counts[j]) / double(members); }
  std::size_t size() const noexcept { return counts.size(); }
};

/// Two sides of an inequality lhs <= rhs, and whether it held within the
/// check's pinned slack.
struct CheckResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;

  double slack() const noexcept { return rhs - lhs; }
};

struct IntersectionCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  /// Every lambda_j <= 1/sqrt(2); `holds` is only meaningful when set.
  bool precondition_met = false;
  double lambda = 0.0;
};

struct ConcavityReport {
  bool passed = false;
  /// Largest (g(a) + g(b))/2 - g((a+b)/2) seen; negative means strictly concave.
  double worst_violation = 0.0;
};

inline constexpr double kLemmaAlphaMax = 3.67;

FractionVector fraction_vector(const SetFamily& f);

/// ln_a |F| <= sum_j h_a(q_j), valid for a >= 1.
CheckResult check_cardinality_bound(const SetFamily& f, AlphaParameter alpha);

/// True iff all pairwise intersections G_i & G_j (i < j) are distinct.
bool check_distinct_pairwise_intersections(const SetFamily& f);

/// ln_a C(m,2) <= k h_a(lambda^2)/lambda with lambda = sum_j lambda_j^2 / k,
/// for k-uniform families with distinct pairwise intersections, a in [1, 3.67].
IntersectionCheck check_intersection_family_bound(const SetFamily& f, std::size_t k,
                                                  AlphaParameter alpha);

/// g(lambda) = h_a(lambda^2)/lambda, with g(0) = 0.
double lemma_function(double lambda, AlphaParameter alpha);

/// Midpoint-concavity of g over every grid pair in (0, 1/sqrt 2], or (0, 1]
/// when `full_interval` is set (only allowed for a <= 2).
ConcavityReport verify_lemma_concavity(AlphaParameter alpha, double grid_step,
                                       bool full_interval = false);

/// Largest m >= 2 with ln_a C(m,2) <= k h_a(lambda^2)/lambda, found by
/// bisection; empty when no finite m violates the inequality (below `cap`).
/// Exploratory: the inequality is implicit in m.
std::optional<std::size_t> max_family_size(std::size_t k, double lambda,
                                           AlphaParameter alpha,
                                           std::size_t cap = std::size_t{1} << 40);

}  // namespace entrocount
