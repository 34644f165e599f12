#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bagdens {

//! Raised when an operation needs sample variation but every observation
//! is identical (or too few observations are available to measure spread).
class degenerate_sample_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

//! Validates an observation batch: at least min_size entries, all finite.
inline void check_sample(std::span<const double> values, std::size_t min_size = 1) {
  if (values.size() < min_size)
    throw std::invalid_argument("sample needs at least " + std::to_string(min_size) +
                                " observations, got " + std::to_string(values.size()));
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("sample contains a non-finite observation");
}

inline double sample_min(std::span<const double> values) {
  return *std::min_element(values.begin(), values.end());
}

inline double sample_max(std::span<const double> values) {
  return *std::max_element(values.begin(), values.end());
}

inline double sample_mean(std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

//! Sample standard deviation with the n - 1 denominator.
inline double sample_sd(std::span<const double> values) {
  if (values.size() < 2)
    throw std::invalid_argument("standard deviation needs at least 2 observations");
  double mean = sample_mean(values);
  double ss = 0.0;
  for (double v : values) {
    double d = v - mean;
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

inline std::vector<double> sorted_copy(std::span<const double> values) {
  std::vector<double> out(values.begin(), values.end());
  std::sort(out.begin(), out.end());
  return out;
}

//! Collapses an ascending batch into distinct values with multiplicities.
inline void unique_weighted(std::span<const double> sorted_values, std::vector<double>& values,
                            std::vector<double>& weights) {
  values.clear();
  weights.clear();
  for (double v : sorted_values) {
    if (!values.empty() && values.back() == v) {
      weights.back() += 1.0;
    } else {
      values.push_back(v);
      weights.push_back(1.0);
    }
  }
}

}  // namespace bagdens
