#include "entrocount/shearer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "entrocount/errors.hpp"

namespace entrocount {

namespace {

constexpr double kTraceSlack = 1e-12;

void require_alpha_at_least_one(AlphaParameter alpha, const char* what) {
  if (alpha.value() < 1.0)
    throw UnsupportedRangeError(std::string(what) + " is proved only for alpha >= 1");
}

}  // namespace

CoverFamily::CoverFamily(std::size_t n, std::vector<std::vector<std::size_t>> groups)
    : n_(n), groups_(std::move(groups)) {
  if (n == 0) throw ArgumentError("cover needs at least one coordinate");
  std::vector<std::size_t> coverage(n, 0);
  for (const auto& g : groups_) {
    std::set<std::size_t> seen;
    for (std::size_t c : g) {
      if (c >= n)
        throw ArgumentError("cover coordinate " + std::to_string(c) + " out of range");
      if (!seen.insert(c).second) throw ArgumentError("cover group repeats a coordinate");
      ++coverage[c];
    }
  }
  k_ = *std::min_element(coverage.begin(), coverage.end());
}

CoverFamily CoverFamily::singletons(std::size_t n) {
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t j = 0; j < n; ++j) groups.push_back({j});
  return CoverFamily(n, std::move(groups));
}

CheckResult check_subadditivity(const JointTable& t, AlphaParameter alpha) {
  require_alpha_at_least_one(alpha, "subadditivity");
  CheckResult r;
  r.lhs = thc_entropy(t.probs(), alpha);
  for (std::size_t j = 0; j < t.dimensions(); ++j) {
    const std::size_t coord[1] = {j};
    r.rhs += joint_entropy(t, coord, alpha);
  }
  r.holds = r.lhs <= r.rhs + kEntropySlack;
  return r;
}

CheckResult check_shearer(const JointTable& t, const CoverFamily& cover,
                          AlphaParameter alpha) {
  require_alpha_at_least_one(alpha, "Shearer's inequality");
  if (cover.coordinates() != t.dimensions())
    throw ArgumentError("cover coordinate count does not match the table");
  CheckResult r;
  r.lhs = double(cover.k()) * thc_entropy(t.probs(), alpha);
  for (const auto& g : cover.groups())
    r.rhs += thc_entropy(t.marginal(g).probs(), alpha);
  r.holds = r.lhs <= r.rhs + kEntropySlack;
  return r;
}

CheckResult check_trace_corollary(const SetFamily& family, const SetFamily& groups,
                                  AlphaParameter alpha) {
  require_alpha_at_least_one(alpha, "the trace corollary");
  if (family.ground_size() != groups.ground_size())
    throw ArgumentError("family and groups live on different ground sets");
  if (family.size() == 0) throw ArgumentError("family is empty");

  std::size_t k = std::numeric_limits<std::size_t>::max();
  for (std::size_t e = 0; e < groups.ground_size(); ++e) k = std::min(k, groups.frequency(e));
  if (k == 0) throw ArgumentError("some element of the ground set is in no group");

  CheckResult r;
  r.lhs = double(k) * alpha_log(double(family.size()), alpha);
  for (ElementMask g : groups.sets()) {
    std::set<ElementMask> traces;
    for (ElementMask f : family.sets()) traces.insert(f & g);
    r.rhs += alpha_log(double(traces.size()), alpha);
  }
  r.holds = r.lhs <= r.rhs + kTraceSlack;
  return r;
}

MonotonicityResult check_conditioning_monotonicity(const JointTable& t, std::size_t target,
                                                   std::span<const std::size_t> chain,
                                                   AlphaParameter alpha,
                                                   ConditionalForm form) {
  if (form == ConditionalForm::kDaroczy)
    require_alpha_at_least_one(alpha, "monotonicity of the Daroczy form");
  const std::size_t tgt[1] = {target};
  MonotonicityResult r;
  for (std::size_t len = 0; len <= chain.size(); ++len)
    r.values.push_back(conditional_entropy(t, tgt, chain.first(len), alpha, form));
  r.holds = true;
  for (std::size_t l = 1; l < r.values.size(); ++l)
    if (r.values[l] > r.values[l - 1] + kEntropySlack) r.holds = false;
  return r;
}

CheckResult check_merge_bound(const JointTable& t, std::size_t target, std::size_t given,
                              const std::vector<std::vector<std::size_t>>& partition,
                              AlphaParameter alpha, ConditionalForm form) {
  if (form == ConditionalForm::kDaroczy)
    require_alpha_at_least_one(alpha, "the Daroczy merge bound");
  if (target >= t.dimensions() || given >= t.dimensions() || target == given)
    throw ArgumentError("target and given must be distinct coordinates of the table");

  const std::size_t ny = t.shape()[given];
  const std::size_t nx = t.shape()[target];
  std::vector<int> owner(ny, -1);
  for (std::size_t b = 0; b < partition.size(); ++b) {
    if (partition[b].empty()) throw PreconditionError("partition has an empty block");
    for (std::size_t y : partition[b]) {
      if (y >= ny) throw PreconditionError("partition names a value outside the alphabet");
      if (owner[y] != -1) throw PreconditionError("partition blocks overlap");
      owner[y] = int(b);
    }
  }
  if (std::find(owner.begin(), owner.end(), -1) != owner.end())
    throw PreconditionError("partition does not cover every value");

  const std::size_t order[2] = {given, target};
  const JointTable yx = t.marginal(order);
  std::vector<double> block_mass(partition.size(), 0.0);
  std::vector<std::set<std::size_t>> reach(partition.size());
  for (std::size_t y = 0; y < ny; ++y)
    for (std::size_t x = 0; x < nx; ++x) {
      const double p = yx.probs()[y * nx + x];
      block_mass[std::size_t(owner[y])] += p;
      if (p > 0.0) reach[std::size_t(owner[y])].insert(x);
    }
  for (std::size_t a = 0; a < reach.size(); ++a)
    for (std::size_t b = a + 1; b < reach.size(); ++b)
      if (reach[a] == reach[b])
        throw PreconditionError("two blocks reach the same set of target values");

  const std::size_t tgt[1] = {target};
  const std::size_t giv[1] = {given};
  CheckResult r;
  r.lhs = conditional_entropy(t, tgt, giv, alpha, form);
  for (std::size_t b = 0; b < partition.size(); ++b) {
    if (block_mass[b] <= 0.0) continue;
    const double w = form == ConditionalForm::kDaroczy
                         ? std::pow(block_mass[b], alpha.value())
                         : block_mass[b];
    r.rhs += w * alpha_log(double(reach[b].size()), alpha);
  }
  r.holds = r.lhs <= r.rhs + kEntropySlack;
  return r;
}

}  // namespace entrocount
