#include "entrocount/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "entrocount/errors.hpp"

namespace entrocount {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) comp_ += (sum_ - t) + x;
    else comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

void require_nonzero_rows(std::span<const std::size_t> row_sums) {
  if (row_sums.empty()) throw ArgumentError("row sums are empty");
  for (std::size_t r : row_sums)
    if (r == 0)
      throw PreconditionError("row sum of zero: the permanent is 0 and the bound does not apply");
}

// Tolerance applied before flooring so that a ceiling that is an integer in
// exact arithmetic does not drop below it through rounding.
double integer_part(double ceiling) {
  return std::floor(ceiling + 1e-9 * std::max(1.0, ceiling));
}

}  // namespace

double bound_rhs(std::span<const std::size_t> row_sums, AlphaParameter alpha) {
  require_nonzero_rows(row_sums);
  const std::size_t max_r = *std::max_element(row_sums.begin(), row_sums.end());

  // prefix[r] = sum_{j=1..r} ln_a(j)
  std::vector<double> prefix(max_r + 1, 0.0);
  CompensatedSum running;
  for (std::size_t j = 1; j <= max_r; ++j) {
    running.add(alpha_log(double(j), alpha));
    prefix[j] = running.value();
  }

  CompensatedSum total;
  for (std::size_t r : row_sums) total.add(prefix[r] / double(r));
  return total.value();
}

double invert_bound(double rhs, AlphaParameter alpha) {
  if (!(rhs >= 0.0)) throw DomainError("bound right-hand side must be nonnegative");
  if (alpha.is_shannon()) return std::exp(rhs);
  const double a = alpha.value();
  const double s = 1.0 - a;
  if (a > 1.0) {
    // ln_a(x) <= rhs  <=>  x^(1-a) >= 1 + (1-a) rhs
    const double base = 1.0 + s * rhs;
    if (base <= 0.0) return kInf;
    return std::exp(std::log1p(s * rhs) / s);
  }
  // -ln_a(1/x) <= rhs  <=>  x^(a-1) >= 1 - (1-a) rhs
  const double base = 1.0 - s * rhs;
  if (base <= 0.0) return kInf;
  return std::exp(-std::log1p(-s * rhs) / s);
}

double bregman_bound(std::span<const std::size_t> row_sums) {
  require_nonzero_rows(row_sums);
  CompensatedSum log_total;
  for (std::size_t r : row_sums) log_total.add(std::lgamma(double(r) + 1.0) / double(r));
  return std::exp(log_total.value());
}

BoundReport alpha_bound(std::span<const std::size_t> row_sums, AlphaParameter alpha) {
  BoundReport report;
  report.alpha = alpha;
  if (std::find(row_sums.begin(), row_sums.end(), 0u) != row_sums.end()) {
    report.ceiling = 0.0;
    report.integer_ceiling = 0.0;
    return report;
  }
  report.rhs_entropy_space = bound_rhs(row_sums, alpha);
  report.ceiling = invert_bound(report.rhs_entropy_space, alpha);
  report.vacuous = std::isinf(report.ceiling);
  if (!report.vacuous) report.integer_ceiling = integer_part(report.ceiling);
  return report;
}

BoundReport alpha_bound(const BinaryMatrix& m, AlphaParameter alpha) {
  return alpha_bound(m.row_sums(), alpha);
}

OptimizationResult optimize_alpha(const BinaryMatrix& m, const AlphaGrid& grid) {
  if (!(grid.lo > 0.0) || !(grid.hi > grid.lo) || !std::isfinite(grid.hi))
    throw ArgumentError("alpha grid needs 0 < lo < hi");
  if (grid.points < 2) throw ArgumentError("alpha grid needs at least two points");

  OptimizationResult result;
  auto evaluate = [&](double a) {
    const double c = alpha_bound(m, AlphaParameter(a)).ceiling;
    result.trace.emplace_back(a, c);
    return c;
  };

  std::vector<double> alphas;
  const double log_ratio = std::log(grid.hi / grid.lo);
  for (std::size_t i = 0; i < grid.points; ++i)
    alphas.push_back(i + 1 == grid.points
                         ? grid.hi
                         : grid.lo * std::exp(log_ratio * double(i) / double(grid.points - 1)));
  alphas.push_back(1.0);
  std::sort(alphas.begin(), alphas.end());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());

  std::vector<double> ceilings;
  for (double a : alphas) ceilings.push_back(evaluate(a));
  const std::size_t best =
      std::size_t(std::min_element(ceilings.begin(), ceilings.end()) - ceilings.begin());

  // Golden-section refinement over the bracket of grid neighbours.
  double lo = alphas[best == 0 ? 0 : best - 1];
  double hi = alphas[std::min(best + 1, alphas.size() - 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = evaluate(c);
  double fd = evaluate(d);
  while (hi - lo > kGoldenTolerance) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = evaluate(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = evaluate(d);
    }
  }

  auto winner = result.trace.front();
  for (const auto& entry : result.trace)
    if (entry.second < winner.second ||
        (entry.second == winner.second && entry.first < winner.first))
      winner = entry;
  result.best_alpha = AlphaParameter(winner.first);
  result.best_ceiling = winner.second;
  return result;
}

}  // namespace entrocount
