#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kernels.hpp"
#include "sample.hpp"

namespace bagdens {

//! Kernel density estimate (1/(n h)) * sum_i K((x - x_i) / h).
//!
//! Observations are stored sorted with duplicates collapsed into weights.
//! Bootstrap resamples are roughly one third ties, so this keeps repeated
//! evaluation cheap without changing any value of the estimate.
class KdeEstimator {
 public:
  KdeEstimator(std::span<const double> data, double bandwidth, Kernel kernel = Kernel())
      : h_(bandwidth), kernel_(kernel) {
    check_sample(data, 1);
    check_bandwidth(h_);
    std::vector<double> sorted = sorted_copy(data);
    unique_weighted(sorted, values_, weights_);
    n_ = static_cast<double>(data.size());
  }

  //! Weighted form: distinct values with positive multiplicities.
  KdeEstimator(std::vector<double> values, std::vector<double> weights, double bandwidth,
               Kernel kernel = Kernel())
      : values_(std::move(values)), weights_(std::move(weights)), h_(bandwidth), kernel_(kernel) {
    check_bandwidth(h_);
    if (values_.empty() || values_.size() != weights_.size())
      throw std::invalid_argument("weighted sample needs matching non-empty value/weight lists");
    for (double v : values_)
      if (!std::isfinite(v)) throw std::invalid_argument("sample contains a non-finite observation");
    n_ = 0.0;
    for (double w : weights_) {
      if (!(w > 0.0) || !std::isfinite(w))
        throw std::invalid_argument("weights must be positive finite numbers");
      n_ += w;
    }
    std::vector<std::size_t> order(values_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [this](std::size_t a, std::size_t b) { return values_[a] < values_[b]; });
    std::vector<double> v2, w2;
    v2.reserve(values_.size());
    w2.reserve(values_.size());
    for (std::size_t i : order) {
      if (!v2.empty() && v2.back() == values_[i]) {
        w2.back() += weights_[i];
      } else {
        v2.push_back(values_[i]);
        w2.push_back(weights_[i]);
      }
    }
    values_ = std::move(v2);
    weights_ = std::move(w2);
  }

  //! Estimated density at x. The gaussian sum runs over every observation;
  //! finite-support kernels only visit values within one bandwidth radius.
  double operator()(double x) const {
    if (!std::isfinite(x)) throw std::invalid_argument("evaluation point must be finite");
    double acc = 0.0;
    if (kernel_.shape() == Kernel::Shape::gaussian) {
      const double c = -0.5 / (h_ * h_);
      for (std::size_t i = 0; i < values_.size(); ++i) {
        const double d = x - values_[i];
        acc += weights_[i] * std::exp(c * d * d);
      }
      return acc * Kernel::inv_sqrt_2pi / (n_ * h_);
    }
    const double radius = kernel_.support_radius() * h_;
    const auto first = std::lower_bound(values_.begin(), values_.end(), x - radius);
    const auto past = std::upper_bound(first, values_.end(), x + radius);
    for (auto it = first; it != past; ++it)
      acc += weights_[static_cast<std::size_t>(it - values_.begin())] * kernel_((x - *it) / h_);
    return acc / (n_ * h_);
  }

  double bandwidth() const { return h_; }
  const Kernel& kernel() const { return kernel_; }
  std::size_t n() const { return static_cast<std::size_t>(n_ + 0.5); }
  double total_weight() const { return n_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& weights() const { return weights_; }

  static void check_bandwidth(double h) {
    if (!(h > 0.0) || !std::isfinite(h))
      throw std::invalid_argument("bandwidth must be a positive finite number");
  }

 private:
  std::vector<double> values_;
  std::vector<double> weights_;
  double n_ = 0.0;
  double h_ = 1.0;
  Kernel kernel_;
};

}  // namespace bagdens
