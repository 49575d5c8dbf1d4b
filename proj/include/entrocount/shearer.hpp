#pragma once

// Executable forms of the alpha-entropy inequalities used in entropy-based
// counting: subadditivity, Shearer's lemma over covers, its set-family
// trace corollary, monotonicity under conditioning and the partition
// (merge) bound on conditional entropies.

#include <cstddef>
#include <span>
#include <vector>

#include "entrocount/entropy.hpp"
#include "entrocount/set_family.hpp"

namespace entrocount {

/// Groups of coordinates; k is the exact minimum coverage over coordinates.
class CoverFamily {
 public:
  CoverFamily(std::size_t n, std::vector<std::vector<std::size_t>> groups);

  static CoverFamily singletons(std::size_t n);

  std::size_t coordinates() const noexcept { return n_; }
  const std::vector<std::vector<std::size_t>>& groups() const noexcept { return groups_; }
  std::size_t k() const noexcept { return k_; }

 private:
  std::size_t n_;
  std::vector<std::vector<std::size_t>> groups_;
  std::size_t k_ = 0;
};

struct MonotonicityResult {
  /// H(target | first l chain coordinates), l = 0..chain.size().
  std::vector<double> values;
  bool holds = false;
};

inline constexpr double kEntropySlack = 1e-10;

/// H_a(X) <= sum_j H_a(X_j), a >= 1.
CheckResult check_subadditivity(const JointTable& t, AlphaParameter alpha);

/// k H_a(X) <= sum_G H_a(X(G)), a >= 1.
CheckResult check_shearer(const JointTable& t, const CoverFamily& cover,
                          AlphaParameter alpha);

/// k ln_a|F| <= sum_j ln_a|F_j| with F_j the distinct traces F & G_j, a >= 1.
CheckResult check_trace_corollary(const SetFamily& family, const SetFamily& groups,
                                  AlphaParameter alpha);

/// Conditional entropy of `target` is non-increasing along chain prefixes.
/// Daroczy form needs a >= 1.
MonotonicityResult check_conditioning_monotonicity(const JointTable& t, std::size_t target,
                                                   std::span<const std::size_t> chain,
                                                   AlphaParameter alpha,
                                                   ConditionalForm form);

/// Conditional entropy <= sum_j w_j ln_a|S_j| where the values of `given`
/// are split into blocks w_j = Pr[Y in block j] (raised to a for the
/// Daroczy form) and S_j is the set of target values reachable from
/// block j. Blocks must partition the alphabet of `given` and the S_j
/// must be pairwise distinct.
CheckResult check_merge_bound(const JointTable& t, std::size_t target, std::size_t given,
                              const std::vector<std::vector<std::size_t>>& partition,
                              AlphaParameter alpha, ConditionalForm form);

}  // namespace entrocount
