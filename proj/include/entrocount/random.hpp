#pragma once

// Seeded instance generators. Only the raw mt19937_64 stream is used (its
// output is fixed by the standard), so a seed reproduces the same instances
// with any conforming standard library.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "entrocount/entropy.hpp"
#include "entrocount/permanent.hpp"
#include "entrocount/set_family.hpp"
#include "entrocount/shearer.hpp"

namespace entrocount::gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  /// Uniform on [0, 1).
  double unit() { return double(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi);
  bool coin(double p) { return unit() < p; }
  std::vector<std::size_t> permutation(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

struct TableSpec {
  std::size_t min_dims = 2;
  std::size_t max_dims = 4;
  std::size_t max_alphabet = 6;
  /// Probability that a cell is forced to zero.
  double zero_fraction = 0.25;
};

JointTable random_table(Rng& rng, const TableSpec& spec = {});

/// Random groups over n coordinates, every coordinate covered at least once.
CoverFamily random_cover(Rng& rng, std::size_t n);

/// i.i.d. Bernoulli(p) entries, size n.
BinaryMatrix random_matrix(Rng& rng, std::size_t n, double p);

/// Distinct random subsets of {0..n-1}, m of them (m <= 2^n).
SetFamily random_family(Rng& rng, std::size_t n, std::size_t m);

/// m distinct random k-subsets of {0..n-1}.
SetFamily random_uniform_family(Rng& rng, std::size_t n, std::size_t k, std::size_t m);

/// Surjection of {0..size-1} onto {0..image-1}.
std::vector<std::size_t> random_surjection(Rng& rng, std::size_t size, std::size_t image);

}  // namespace entrocount::gen
