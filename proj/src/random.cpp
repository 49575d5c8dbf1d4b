#include "entrocount/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "entrocount/errors.hpp"

namespace entrocount::gen {

std::size_t Rng::between(std::size_t lo, std::size_t hi) {
  if (hi < lo) throw ArgumentError("empty integer range");
  const std::uint64_t span = std::uint64_t(hi - lo) + 1;
  if (span == 0) return lo + std::size_t(bits());
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
  std::uint64_t x;
  do x = bits(); while (x >= limit);
  return lo + std::size_t(x % span);
}

std::vector<std::size_t> Rng::permutation(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[between(0, i - 1)]);
  return p;
}

JointTable random_table(Rng& rng, const TableSpec& spec) {
  const std::size_t dims = rng.between(spec.min_dims, spec.max_dims);
  std::vector<std::size_t> shape;
  std::size_t cells = 1;
  for (std::size_t d = 0; d < dims; ++d) {
    shape.push_back(rng.between(1, spec.max_alphabet));
    cells *= shape.back();
  }
  std::vector<double> w(cells);
  // Skewed weights exercise both near-uniform and peaked slices.
  const double power = 1.0 + 3.0 * rng.unit();
  double total = 0.0;
  for (double& x : w) {
    x = rng.coin(spec.zero_fraction) ? 0.0 : std::pow(rng.unit(), power);
    total += x;
  }
  if (total <= 0.0) w[rng.between(0, cells - 1)] = 1.0;
  return JointTable::renormalized(std::move(shape), std::move(w));
}

CoverFamily random_cover(Rng& rng, std::size_t n) {
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> coverage(n, 0);
  const std::size_t count = rng.between(1, 2 * n);
  auto add_random_group = [&] {
    std::vector<std::size_t> g;
    for (std::size_t j = 0; j < n; ++j)
      if (rng.coin(0.5)) g.push_back(j);
    if (g.empty()) g.push_back(rng.between(0, n - 1));
    for (std::size_t j : g) ++coverage[j];
    groups.push_back(std::move(g));
  };
  for (std::size_t i = 0; i < count; ++i) add_random_group();
  for (std::size_t j = 0; j < n; ++j)
    if (coverage[j] == 0) groups.push_back({j});
  return CoverFamily(n, std::move(groups));
}

BinaryMatrix random_matrix(Rng& rng, std::size_t n, double p) {
  BinaryMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, rng.coin(p));
  return m;
}

SetFamily random_family(Rng& rng, std::size_t n, std::size_t m) {
  if (n >= 63 || m > (std::size_t{1} << n))
    throw ArgumentError("cannot draw that many distinct subsets");
  std::set<ElementMask> chosen;
  const ElementMask mask = (ElementMask{1} << n) - 1;
  while (chosen.size() < m) chosen.insert(rng.bits() & mask);
  std::vector<ElementMask> sets(chosen.begin(), chosen.end());
  // Shuffle so the member order is not sorted.
  for (std::size_t i = sets.size(); i > 1; --i) std::swap(sets[i - 1], sets[rng.between(0, i - 1)]);
  return SetFamily(n, std::move(sets));
}

SetFamily random_uniform_family(Rng& rng, std::size_t n, std::size_t k, std::size_t m) {
  if (k > n) throw ArgumentError("k exceeds the ground set");
  std::set<ElementMask> chosen;
  std::vector<ElementMask> sets;
  std::size_t attempts = 0;
  while (sets.size() < m) {
    if (++attempts > 100 * m + 1000) throw ArgumentError("too few distinct k-subsets");
    const auto perm = rng.permutation(n);
    ElementMask s = 0;
    for (std::size_t i = 0; i < k; ++i) s |= ElementMask{1} << perm[i];
    if (chosen.insert(s).second) sets.push_back(s);
  }
  return SetFamily(n, std::move(sets));
}

std::vector<std::size_t> random_surjection(Rng& rng, std::size_t size, std::size_t image) {
  if (image == 0 || image > size) throw ArgumentError("surjection image out of range");
  std::vector<std::size_t> map(size);
  const auto perm = rng.permutation(size);
  for (std::size_t i = 0; i < size; ++i)
    map[perm[i]] = i < image ? i : rng.between(0, image - 1);
  return map;
}

}  // namespace entrocount::gen
