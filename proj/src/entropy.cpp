#include "entrocount/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "entrocount/errors.hpp"

namespace entrocount {

namespace {

// ln_a(1/p) for p in (0, 1], written through expm1 so that a -> 1 is smooth.
double alpha_log_inverse(double p, double a) {
  const double neg_log = -std::log(p);
  if (a == 1.0) return neg_log;
  const double s = 1.0 - a;
  return std::expm1(s * neg_log) / s;
}

void validate_probs(std::span<const double> probs) {
  if (probs.empty()) throw ValidationError("distribution is empty");
  double sum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double p = probs[i];
    if (!std::isfinite(p) || p < 0.0) {
      std::ostringstream msg;
      msg << "probability at index " << i << " is negative or not finite";
      throw ValidationError(msg.str());
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "probabilities sum to " << sum << ", expected 1";
    throw ValidationError(msg.str());
  }
}

std::vector<double> normalize(std::vector<double> weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0)
      throw ValidationError("weights must be finite and nonnegative");
    sum += w;
  }
  if (!(sum > 0.0)) throw ValidationError("weights sum to zero");
  for (double& w : weights) w /= sum;
  return weights;
}

std::size_t checked_product(std::span<const std::size_t> shape) {
  std::size_t total = 1;
  for (std::size_t d : shape) {
    if (d == 0) throw ValidationError("alphabet sizes must be positive");
    total *= d;
  }
  return total;
}

void check_coords(std::span<const std::size_t> coords, std::size_t dims,
                  const char* what) {
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] >= dims) {
      std::ostringstream msg;
      msg << what << " coordinate " << coords[i] << " out of range (table has "
          << dims << " coordinates)";
      throw ArgumentError(msg.str());
    }
    for (std::size_t j = 0; j < i; ++j)
      if (coords[i] == coords[j])
        throw ArgumentError(std::string(what) + " coordinates repeat");
  }
}

}  // namespace

AlphaParameter::AlphaParameter(double value) : value_(value) {
  if (!std::isfinite(value) || value <= 0.0)
    throw DomainError("entropic order must be a finite positive number");
}

DiscreteDistribution::DiscreteDistribution(std::vector<double> probs,
                                           std::vector<std::string> labels)
    : probs_(std::move(probs)), labels_(std::move(labels)) {
  validate_probs(probs_);
  if (!labels_.empty() && labels_.size() != probs_.size())
    throw ValidationError("label count does not match outcome count");
}

DiscreteDistribution DiscreteDistribution::renormalized(
    std::vector<double> weights) {
  if (weights.empty()) throw ValidationError("distribution is empty");
  return DiscreteDistribution(normalize(std::move(weights)));
}

DiscreteDistribution DiscreteDistribution::uniform(std::size_t n) {
  if (n == 0) throw ValidationError("distribution is empty");
  return DiscreteDistribution(std::vector<double>(n, 1.0 / double(n)));
}

std::size_t DiscreteDistribution::support_size() const noexcept {
  return std::size_t(
      std::count_if(probs_.begin(), probs_.end(), [](double p) { return p > 0.0; }));
}

JointTable::JointTable(std::vector<std::size_t> shape, std::vector<double> probs)
    : shape_(std::move(shape)), probs_(std::move(probs)) {
  if (checked_product(shape_) != probs_.size())
    throw ValidationError("table length does not match the product of its shape");
  validate_probs(probs_);
}

JointTable JointTable::renormalized(std::vector<std::size_t> shape,
                                    std::vector<double> weights) {
  if (checked_product(shape) != weights.size())
    throw ValidationError("table length does not match the product of its shape");
  return JointTable(std::move(shape), normalize(std::move(weights)));
}

JointTable JointTable::product(std::span<const DiscreteDistribution> factors) {
  std::vector<std::size_t> shape;
  std::vector<double> probs{1.0};
  for (const auto& f : factors) {
    shape.push_back(f.size());
    std::vector<double> next;
    next.reserve(probs.size() * f.size());
    for (double p : probs)
      for (double q : f.probs()) next.push_back(p * q);
    probs = std::move(next);
  }
  return JointTable::renormalized(std::move(shape), std::move(probs));
}

std::vector<std::size_t> JointTable::unravel(std::size_t flat) const {
  std::vector<std::size_t> idx(shape_.size());
  for (std::size_t d = shape_.size(); d-- > 0;) {
    idx[d] = flat % shape_[d];
    flat /= shape_[d];
  }
  return idx;
}

JointTable JointTable::marginal(std::span<const std::size_t> coords) const {
  check_coords(coords, shape_.size(), "marginal");
  std::vector<std::size_t> new_shape;
  for (std::size_t c : coords) new_shape.push_back(shape_[c]);

  // Stride of each original coordinate inside the marginal table.
  std::vector<std::size_t> out_stride(shape_.size(), 0);
  std::size_t stride = 1;
  for (std::size_t k = coords.size(); k-- > 0;) {
    out_stride[coords[k]] = stride;
    stride *= new_shape[k];
  }

  std::vector<double> out(stride, 0.0);
  std::vector<std::size_t> idx(shape_.size(), 0);
  std::size_t out_index = 0;
  for (double p : probs_) {
    out[out_index] += p;
    // Odometer increment, last coordinate fastest.
    for (std::size_t d = shape_.size(); d-- > 0;) {
      out_index += out_stride[d];
      if (++idx[d] < shape_[d]) break;
      out_index -= out_stride[d] * shape_[d];
      idx[d] = 0;
    }
  }
  return JointTable::renormalized(std::move(new_shape), std::move(out));
}

JointTable JointTable::merge_values(std::size_t coord,
                                    std::span<const std::size_t> mapping) const {
  if (coord >= shape_.size()) throw ArgumentError("merge coordinate out of range");
  if (mapping.size() != shape_[coord])
    throw ArgumentError("mapping must have one entry per value of the coordinate");
  const std::size_t new_size = *std::max_element(mapping.begin(), mapping.end()) + 1;

  std::vector<std::size_t> new_shape = shape_;
  new_shape[coord] = new_size;
  std::size_t inner = 1;
  for (std::size_t d = coord + 1; d < shape_.size(); ++d) inner *= shape_[d];
  std::size_t outer = 1;
  for (std::size_t d = 0; d < coord; ++d) outer *= shape_[d];

  std::vector<double> out(outer * new_size * inner, 0.0);
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t y = 0; y < shape_[coord]; ++y)
      for (std::size_t i = 0; i < inner; ++i)
        out[(o * new_size + mapping[y]) * inner + i] +=
            probs_[(o * shape_[coord] + y) * inner + i];
  return JointTable::renormalized(std::move(new_shape), std::move(out));
}

DiscreteDistribution JointTable::flattened() const {
  return DiscreteDistribution::renormalized(probs_);
}

double alpha_log(double xi, AlphaParameter alpha) {
  if (!(xi > 0.0)) throw DomainError("alpha-logarithm needs a positive argument");
  const double l = std::log(xi);
  if (alpha.is_shannon()) return l;
  const double s = 1.0 - alpha.value();
  return std::expm1(s * l) / s;
}

double thc_entropy(std::span<const double> probs, AlphaParameter alpha) {
  double h = 0.0;
  for (double p : probs)
    if (p > 0.0) h += p * alpha_log_inverse(p, alpha.value());
  return std::max(h, 0.0);
}

double thc_entropy(const DiscreteDistribution& p, AlphaParameter alpha) {
  return thc_entropy(p.probs(), alpha);
}

double binary_thc_entropy(double q, AlphaParameter alpha) {
  if (!(q >= 0.0 && q <= 1.0))
    throw DomainError("binary entropy argument must lie in [0, 1]");
  const double pair[2] = {q, 1.0 - q};
  return thc_entropy(pair, alpha);
}

double joint_entropy(const JointTable& t, std::span<const std::size_t> coords,
                     AlphaParameter alpha) {
  if (coords.empty()) throw ArgumentError("joint entropy needs at least one coordinate");
  return thc_entropy(t.marginal(coords).probs(), alpha);
}

namespace detail {

double eta(double xi, AlphaParameter alpha) {
  if (xi < 0.0) throw DomainError("eta needs a nonnegative argument");
  if (xi == 0.0) return 0.0;
  return xi * alpha_log_inverse(xi, alpha.value());
}

SliceEntropies slice_entropies(const JointTable& t,
                               std::span<const std::size_t> target,
                               std::span<const std::size_t> given,
                               AlphaParameter alpha) {
  if (target.empty()) throw ArgumentError("target coordinate set is empty");
  check_coords(target, t.dimensions(), "target");
  check_coords(given, t.dimensions(), "given");
  for (std::size_t a : target)
    if (std::find(given.begin(), given.end(), a) != given.end())
      throw ArgumentError("target and given coordinate sets overlap");

  std::vector<std::size_t> order(given.begin(), given.end());
  order.insert(order.end(), target.begin(), target.end());
  const JointTable m = t.marginal(order);

  std::size_t rows = 1;
  for (std::size_t c : given) rows *= t.shape()[c];
  const std::size_t cols = m.size() / rows;

  SliceEntropies out;
  out.mass.resize(rows, 0.0);
  out.entropy.resize(rows, 0.0);
  std::vector<double> slice(cols);
  for (std::size_t y = 0; y < rows; ++y) {
    const auto row = m.probs().subspan(y * cols, cols);
    const double mass = std::accumulate(row.begin(), row.end(), 0.0);
    out.mass[y] = mass;
    if (mass <= 0.0) continue;
    for (std::size_t x = 0; x < cols; ++x) slice[x] = row[x] / mass;
    out.entropy[y] = thc_entropy(slice, alpha);
  }
  return out;
}

}  // namespace detail

double conditional_entropy_daroczy(const JointTable& t,
                                   std::span<const std::size_t> target,
                                   std::span<const std::size_t> given,
                                   AlphaParameter alpha) {
  const auto s = detail::slice_entropies(t, target, given, alpha);
  double h = 0.0;
  for (std::size_t y = 0; y < s.mass.size(); ++y)
    if (s.mass[y] > 0.0) h += std::pow(s.mass[y], alpha.value()) * s.entropy[y];
  return h;
}

double conditional_entropy_weighted(const JointTable& t,
                                    std::span<const std::size_t> target,
                                    std::span<const std::size_t> given,
                                    AlphaParameter alpha) {
  const auto s = detail::slice_entropies(t, target, given, alpha);
  double h = 0.0;
  for (std::size_t y = 0; y < s.mass.size(); ++y) h += s.mass[y] * s.entropy[y];
  return h;
}

double conditional_entropy(const JointTable& t,
                           std::span<const std::size_t> target,
                           std::span<const std::size_t> given,
                           AlphaParameter alpha, ConditionalForm form) {
  return form == ConditionalForm::kDaroczy
             ? conditional_entropy_daroczy(t, target, given, alpha)
             : conditional_entropy_weighted(t, target, given, alpha);
}

}  // namespace entrocount
