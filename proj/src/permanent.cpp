#include "entrocount/permanent.hpp"

#include <algorithm>
#include <bit>
#include <future>
#include <numeric>
#include <sstream>
#include <thread>

#include "entrocount/errors.hpp"

namespace entrocount {

namespace mp = boost::multiprecision;

BinaryMatrix::BinaryMatrix(std::size_t n)
    : n_(n), words_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0), row_sums_(n, 0) {
  if (n == 0) throw ArgumentError("matrix dimension must be positive");
}

BinaryMatrix BinaryMatrix::identity(std::size_t n) {
  BinaryMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BinaryMatrix BinaryMatrix::all_ones(std::size_t n) {
  BinaryMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, true);
  return m;
}

BinaryMatrix BinaryMatrix::identity_with_full_first_row(std::size_t n) {
  BinaryMatrix m = identity(n);
  for (std::size_t j = 0; j < n; ++j) m.set(0, j, true);
  return m;
}

BinaryMatrix BinaryMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  if (rows.empty()) throw IngestionError("matrix has no rows");
  BinaryMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size())
      throw IngestionError("matrix is not square: row " + std::to_string(i + 1) +
                           " has " + std::to_string(rows[i].size()) + " entries");
    for (std::size_t j = 0; j < rows.size(); ++j) {
      const int v = rows[i][j];
      if (v != 0 && v != 1) throw IngestionError("matrix entries must be 0 or 1");
      m.set(i, j, v == 1);
    }
  }
  return m;
}

bool BinaryMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) throw ArgumentError("matrix index out of range");
  return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u;
}

void BinaryMatrix::set(std::size_t i, std::size_t j, bool value) {
  if (at(i, j) == value) return;
  bits_[i * words_ + j / 64] ^= std::uint64_t{1} << (j % 64);
  value ? ++row_sums_[i] : --row_sums_[i];
}

bool BinaryMatrix::has_zero_row() const noexcept {
  return std::find(row_sums_.begin(), row_sums_.end(), 0u) != row_sums_.end();
}

std::uint64_t BinaryMatrix::row_mask(std::size_t i) const {
  if (n_ > 64) throw CapacityError("row masks need n <= 64");
  if (i >= n_) throw ArgumentError("row index out of range");
  return bits_[i];
}

BinaryMatrix BinaryMatrix::minor(std::size_t i, std::size_t k) const {
  if (n_ < 2) throw ArgumentError("a 1x1 matrix has no proper minor");
  if (i >= n_ || k >= n_) throw ArgumentError("minor index out of range");
  BinaryMatrix out(n_ - 1);
  for (std::size_t r = 0, rr = 0; r < n_; ++r) {
    if (r == i) continue;
    for (std::size_t c = 0, cc = 0; c < n_; ++c) {
      if (c == k) continue;
      out.set(rr, cc++, at(r, c));
    }
    ++rr;
  }
  return out;
}

BinaryMatrix BinaryMatrix::permuted(std::span<const std::size_t> row_perm,
                                    std::span<const std::size_t> col_perm) const {
  if (row_perm.size() != n_ || col_perm.size() != n_)
    throw ArgumentError("permutation length does not match matrix size");
  BinaryMatrix out(n_);
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c) out.set(r, c, at(row_perm[r], col_perm[c]));
  return out;
}

std::string BinaryMatrix::to_string() const {
  std::string s;
  s.reserve(n_ * (n_ + 1));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) s.push_back(at(i, j) ? '1' : '0');
    s.push_back('\n');
  }
  return s;
}

namespace {

// Ryser: per(A) = (-1)^n sum_{S} (-1)^{|S|} prod_i |row_i & S|.
// Column sets S are visited in Gray-code order over [begin, end); `counts`
// holds |row_i & S| and is updated one column at a time.
template <typename Acc>
Acc ryser_chunk(std::span<const std::uint64_t> cols, std::size_t n,
                std::uint64_t begin, std::uint64_t end) {
  std::vector<std::int64_t> counts(n, 0);
  std::uint64_t gray = begin ^ (begin >> 1);
  for (std::size_t j = 0; j < n; ++j)
    if ((gray >> j) & 1u)
      for (std::size_t i = 0; i < n; ++i) counts[i] += (cols[j] >> i) & 1u;

  Acc total = 0;
  for (std::uint64_t k = begin; k < end; ++k) {
    if (k != begin) {
      const std::size_t j = std::size_t(std::countr_zero(k));
      gray ^= std::uint64_t{1} << j;
      const std::int64_t delta = ((gray >> j) & 1u) ? 1 : -1;
      for (std::uint64_t bitsj = cols[j]; bitsj; bitsj &= bitsj - 1)
        counts[std::size_t(std::countr_zero(bitsj))] += delta;
    }
    if (gray == 0) continue;
    Acc prod = 1;
    for (std::size_t i = 0; i < n && prod != 0; ++i) prod *= counts[i];
    if (prod == 0) continue;
    if (std::popcount(gray) % 2 == 1) total -= prod;
    else total += prod;
  }
  return total;
}

PermanentValue to_permanent_value(__int128 v) {
  const auto u = static_cast<unsigned __int128>(v);
  PermanentValue out = static_cast<std::uint64_t>(u >> 64);
  out <<= 64;
  out |= static_cast<std::uint64_t>(u);
  return out;
}

PermanentValue to_permanent_value(const mp::int256_t& v) {
  return v.convert_to<PermanentValue>();
}

template <typename Acc>
PermanentValue ryser(const BinaryMatrix& m, std::size_t chunks) {
  const std::size_t n = m.size();
  std::vector<std::uint64_t> cols(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t row = m.row_mask(i);
    for (std::size_t j = 0; j < n; ++j)
      if ((row >> j) & 1u) cols[j] |= std::uint64_t{1} << i;
  }

  const std::uint64_t total_subsets = std::uint64_t{1} << n;
  if (chunks == 0) {
    chunks = n < 16 ? 1 : std::max(1u, std::thread::hardware_concurrency());
  }
  chunks = std::size_t(std::min<std::uint64_t>(chunks, total_subsets));

  std::vector<std::future<Acc>> parts;
  const std::uint64_t step = total_subsets / chunks;
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::uint64_t begin = c * step;
    const std::uint64_t end = c + 1 == chunks ? total_subsets : begin + step;
    const auto policy = chunks == 1 ? std::launch::deferred : std::launch::async;
    parts.push_back(std::async(policy, [&cols, n, begin, end] {
      return ryser_chunk<Acc>(cols, n, begin, end);
    }));
  }
  Acc sum = 0;
  for (auto& p : parts) sum += p.get();
  if (n % 2 == 1) sum = -sum;
  if (sum < 0) throw std::logic_error("Ryser sum came out negative");
  return to_permanent_value(sum);
}

}  // namespace

PermanentValue permanent_ryser(const BinaryMatrix& m, std::size_t chunks) {
  const std::size_t n = m.size();
  if (n > kRyserMaxDim)
    throw CapacityError("Ryser permanent supports n <= 30, got n = " + std::to_string(n));
  if (m.has_zero_row()) return 0;
  // Products reach n^n and sums carry 2^n of them: 20^20 * 2^20 < 2^127.
  if (n <= 20) return ryser<__int128>(m, chunks);
  return ryser<mp::int256_t>(m, chunks);
}

PermanentValue permanent_bruteforce(const BinaryMatrix& m) {
  const std::size_t n = m.size();
  if (n > kBruteForceMaxDim)
    throw CapacityError("brute-force permanent supports n <= 10, got n = " +
                        std::to_string(n));
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::uint64_t count = 0;
  do {
    bool all = true;
    for (std::size_t i = 0; i < n && all; ++i) all = m.at(i, sigma[i]);
    count += all;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return count;
}

PermanentValue expand_minor(const BinaryMatrix& m, std::size_t i) {
  const std::size_t n = m.size();
  if (i >= n) throw ArgumentError("expansion row out of range");
  if (n == 1) return m.at(0, 0) ? 1 : 0;
  PermanentValue total = 0;
  for (std::size_t k = 0; k < n; ++k)
    if (m.at(i, k)) total += permanent_ryser(m.minor(i, k));
  return total;
}

BinaryMatrix from_bipartite_graph(
    std::span<const std::pair<std::size_t, std::size_t>> edges, std::size_t n) {
  if (n == 0) throw IngestionError("graph must have at least one vertex per side");
  BinaryMatrix m(n);
  for (const auto& [left, right] : edges) {
    if (left < 1 || left > n || right < 1 || right > n) {
      std::ostringstream msg;
      msg << "edge (" << left << ", " << right << ") has a vertex outside 1.." << n;
      throw IngestionError(msg.str());
    }
    m.set(left - 1, right - 1, true);
  }
  return m;
}

std::string to_string(const PermanentValue& v) { return v.str(); }

double to_double(const PermanentValue& v) { return v.convert_to<double>(); }

}  // namespace entrocount
