#pragma once

// Tsallis-Havrda-Charvat (THC) alpha-entropies over finite distributions.
//
// All functions use natural logarithms. Outcomes of zero probability
// contribute nothing to any sum (0^a = 0, 0 * ln_a(1/0) = 0).

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace entrocount {

/// Entropic order a > 0. `is_shannon()` is true only for a == 1 exactly.
class AlphaParameter {
 public:
  explicit AlphaParameter(double value);

  double value() const noexcept { return value_; }
  bool is_shannon() const noexcept { return value_ == 1.0; }

  friend bool operator==(const AlphaParameter&, const AlphaParameter&) = default;

 private:
  double value_;
};

inline constexpr double kProbabilityTolerance = 1e-12;

class DiscreteDistribution {
 public:
  /// Validates nonnegativity and unit sum (within kProbabilityTolerance).
  explicit DiscreteDistribution(std::vector<double> probs,
                                std::vector<std::string> labels = {});

  /// Rescales nonnegative weights to unit sum. Used for ingested data.
  static DiscreteDistribution renormalized(std::vector<double> weights);

  static DiscreteDistribution uniform(std::size_t n);

  std::span<const double> probs() const noexcept { return probs_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return probs_.size(); }
  std::size_t support_size() const noexcept;

 private:
  std::vector<double> probs_;
  std::vector<std::string> labels_;
};

/// Probability table over S_0 x ... x S_{d-1}, flat row-major (last
/// coordinate varies fastest). Coordinates are 0-based in this API.
class JointTable {
 public:
  JointTable(std::vector<std::size_t> shape, std::vector<double> probs);

  static JointTable renormalized(std::vector<std::size_t> shape,
                                 std::vector<double> weights);

  /// Independent product of per-coordinate distributions.
  static JointTable product(std::span<const DiscreteDistribution> factors);

  const std::vector<std::size_t>& shape() const noexcept { return shape_; }
  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t dimensions() const noexcept { return shape_.size(); }
  std::size_t size() const noexcept { return probs_.size(); }

  /// Marginal onto `coords`, in the order given. Coordinates must be
  /// distinct and in range; an empty list yields the trivial 1-cell table.
  JointTable marginal(std::span<const std::size_t> coords) const;

  /// Relabels the values of coordinate `coord` through `mapping`
  /// (value y -> mapping[y]); cells sharing an image are summed. The new
  /// alphabet size is max(mapping) + 1.
  JointTable merge_values(std::size_t coord,
                          std::span<const std::size_t> mapping) const;

  /// Mixed-radix index decomposition helper.
  std::vector<std::size_t> unravel(std::size_t flat) const;

  DiscreteDistribution flattened() const;

 private:
  std::vector<std::size_t> shape_;
  std::vector<double> probs_;
};

/// ln_a(xi) = (xi^(1-a) - 1) / (1 - a); natural log at a = 1.
double alpha_log(double xi, AlphaParameter alpha);

/// H_a of a probability vector. Does not validate: callers pass masses.
double thc_entropy(std::span<const double> probs, AlphaParameter alpha);
double thc_entropy(const DiscreteDistribution& p, AlphaParameter alpha);

/// h_a(q) = -q^a ln_a(q) - (1-q)^a ln_a(1-q).
double binary_thc_entropy(double q, AlphaParameter alpha);

/// H_a of the marginal of `t` onto `coords` (nonempty).
double joint_entropy(const JointTable& t, std::span<const std::size_t> coords,
                     AlphaParameter alpha);

/// Daroczy form: sum_y p(y)^a H_a(X|y). Satisfies the chain rule.
double conditional_entropy_daroczy(const JointTable& t,
                                   std::span<const std::size_t> target,
                                   std::span<const std::size_t> given,
                                   AlphaParameter alpha);

/// Weighted form: sum_y p(y) H_a(X|y).
double conditional_entropy_weighted(const JointTable& t,
                                    std::span<const std::size_t> target,
                                    std::span<const std::size_t> given,
                                    AlphaParameter alpha);

enum class ConditionalForm { kDaroczy, kWeighted };

double conditional_entropy(const JointTable& t,
                           std::span<const std::size_t> target,
                           std::span<const std::size_t> given,
                           AlphaParameter alpha, ConditionalForm form);

namespace detail {

/// Concave kernel (xi^a - xi)/(1 - a) used in the conditioning proofs;
/// -xi ln xi at a = 1. Sums of it over a distribution give H_a.
double eta(double xi, AlphaParameter alpha);

/// Per-slice conditional entropies H_a(X|y) and slice masses p(y).
struct SliceEntropies {
  std::vector<double> mass;
  std::vector<double> entropy;
};

SliceEntropies slice_entropies(const JointTable& t,
                               std::span<const std::size_t> target,
                               std::span<const std::size_t> given,
                               AlphaParameter alpha);

}  // namespace detail

}  // namespace entrocount
