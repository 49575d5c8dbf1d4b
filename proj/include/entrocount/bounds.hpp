#pragma once

// One-parameter family of upper bounds on permanents of (0,1)-matrices.
//
// For every a > 0 the permanent satisfies
//
//   L_a(per A) <= sum_i (1/r_i) sum_{j=1..r_i} ln_a(j),
//
// where L_a = ln_a for a >= 1 and L_a(x) = -ln_a(1/x) for a in (0,1), and
// r_i are the row sums. At a = 1 this is the Bregman-Minc bound
// prod_i (r_i!)^(1/r_i). The right-hand side depends on row sums only.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "entrocount/entropy.hpp"
#include "entrocount/permanent.hpp"

namespace entrocount {

struct BoundReport {
  AlphaParameter alpha{1.0};
  double rhs_entropy_space = 0.0;
  /// Upper bound on per(A); +inf when the inequality carries no information.
  double ceiling = 0.0;
  /// floor(ceiling), absent when the ceiling is infinite.
  std::optional<double> integer_ceiling;
  bool vacuous = false;
};

struct OptimizationResult {
  AlphaParameter best_alpha{1.0};
  double best_ceiling = 0.0;
  /// Every (alpha, ceiling) pair evaluated, grid first, then refinement.
  std::vector<std::pair<double, double>> trace;
};

struct AlphaGrid {
  double lo = 1.0 / 16.0;
  double hi = 8.0;
  std::size_t points = 64;
};

inline constexpr double kGoldenTolerance = 1e-6;

/// sum_i (1/r_i) sum_{j=1..r_i} ln_a(j). Every r_i must be >= 1.
double bound_rhs(std::span<const std::size_t> row_sums, AlphaParameter alpha);

/// Largest x with L_a(x) <= rhs (see header comment); +inf when every x
/// satisfies it.
double invert_bound(double rhs, AlphaParameter alpha);

/// prod_i (r_i!)^(1/r_i), accumulated in log space.
double bregman_bound(std::span<const std::size_t> row_sums);

BoundReport alpha_bound(const BinaryMatrix& m, AlphaParameter alpha);
/// Same as above from row sums alone. A zero row yields ceiling 0.
BoundReport alpha_bound(std::span<const std::size_t> row_sums, AlphaParameter alpha);

/// Log-spaced grid scan (a = 1 always included) followed by golden-section
/// refinement around the best grid point. Ties go to the smallest a.
OptimizationResult optimize_alpha(const BinaryMatrix& m, const AlphaGrid& grid = {});

}  // namespace entrocount
