#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace entrocount {

/// Exact permanent value. 30! < 2^108, so 128 bits always suffice.
using PermanentValue = boost::multiprecision::uint128_t;

/// Square (0,1)-matrix stored as packed bit rows, with cached row sums.
/// Dimension is unbounded; the exact permanent routines impose their own caps.
class BinaryMatrix {
 public:
  explicit BinaryMatrix(std::size_t n);

  static BinaryMatrix identity(std::size_t n);
  static BinaryMatrix all_ones(std::size_t n);
  /// Identity with the first row filled with ones; its permanent is 1.
  static BinaryMatrix identity_with_full_first_row(std::size_t n);
  static BinaryMatrix from_rows(const std::vector<std::vector<int>>& rows);

  std::size_t size() const noexcept { return n_; }
  bool at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, bool value);

  const std::vector<std::size_t>& row_sums() const noexcept { return row_sums_; }
  bool has_zero_row() const noexcept;

  /// Row i as a bitmask (bit j set iff a(i,j) = 1). Requires n <= 64.
  std::uint64_t row_mask(std::size_t i) const;

  /// Matrix with row i and column k removed.
  BinaryMatrix minor(std::size_t i, std::size_t k) const;

  /// P A Q for row and column permutations given as index maps:
  /// result(r, c) = a(row_perm[r], col_perm[c]).
  BinaryMatrix permuted(std::span<const std::size_t> row_perm,
                        std::span<const std::size_t> col_perm) const;

  /// One line per row of '0'/'1' characters.
  std::string to_string() const;

  friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::size_t> row_sums_;
};

inline constexpr std::size_t kRyserMaxDim = 30;
inline constexpr std::size_t kBruteForceMaxDim = 10;

/// Ryser inclusion-exclusion with Gray-code column updates. The subset
/// range is split into `chunks` contiguous pieces (0 picks automatically);
/// the result does not depend on the split.
PermanentValue permanent_ryser(const BinaryMatrix& m, std::size_t chunks = 0);

/// Enumerates all n! permutations.
PermanentValue permanent_bruteforce(const BinaryMatrix& m);

/// Laplace-style expansion along row i (0-based): sum over k with a(i,k)=1
/// of per(minor(i,k)).
PermanentValue expand_minor(const BinaryMatrix& m, std::size_t i);

/// Biadjacency matrix of a bipartite graph on n + n vertices. Edges are
/// 1-based (left, right) pairs.
BinaryMatrix from_bipartite_graph(
    std::span<const std::pair<std::size_t, std::size_t>> edges, std::size_t n);

std::string to_string(const PermanentValue& v);
double to_double(const PermanentValue& v);

}  // namespace entrocount
