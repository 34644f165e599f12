#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "sample.hpp"

namespace bagdens {

//! Uniform partition of the real line into half-open bins
//! [origin + j * width, origin + (j + 1) * width).
struct BinGrid {
  double origin = 0.0;
  double width = 1.0;

  BinGrid() = default;

  BinGrid(double origin_, double width_) : origin(origin_), width(width_) {
    if (!std::isfinite(origin)) throw std::invalid_argument("bin origin must be finite");
    if (!(width > 0.0) || !std::isfinite(width))
      throw std::invalid_argument("bin width must be a positive finite number");
  }

  //! Index j of the bin containing x.
  long bin_index(double x) const { return static_cast<long>(std::floor((x - origin) / width)); }

  double bin_left(long j) const { return origin + static_cast<double>(j) * width; }

  double bin_midpoint(long j) const { return origin + (static_cast<double>(j) + 0.5) * width; }
};

//! Piecewise-constant density estimate: bin counts scaled by 1/(n h).
class HistogramEstimator {
 public:
  HistogramEstimator(std::span<const double> data, const BinGrid& grid) : grid_(grid) {
    check_sample(data, 1);
    n_ = data.size();
    double lo = sample_min(data);
    double hi = sample_max(data);
    double dlo = std::floor((lo - grid_.origin) / grid_.width);
    double dhi = std::floor((hi - grid_.origin) / grid_.width);
    if (!(dhi - dlo < 1e8) || std::fabs(dlo) > 9e15 || std::fabs(dhi) > 9e15)
      throw std::invalid_argument("bin width too small for the data range");
    j_min_ = static_cast<long>(dlo);
    counts_.assign(static_cast<std::size_t>(static_cast<long>(dhi) - j_min_ + 1), 0.0);
    for (double x : data) counts_[static_cast<std::size_t>(grid_.bin_index(x) - j_min_)] += 1.0;
    nh_ = static_cast<double>(n_) * grid_.width;
  }

  //! Estimated density at x: count of the bin holding x over n h.
  double operator()(double x) const {
    if (!std::isfinite(x)) throw std::invalid_argument("evaluation point must be finite");
    double dj = std::floor((x - grid_.origin) / grid_.width);
    if (dj < static_cast<double>(j_min_) || dj > static_cast<double>(last_bin())) return 0.0;
    return counts_[static_cast<std::size_t>(static_cast<long>(dj) - j_min_)] / nh_;
  }

  const BinGrid& grid() const { return grid_; }
  std::size_t n() const { return n_; }

  //! Lowest and highest occupied bin indices.
  long first_bin() const { return j_min_; }
  long last_bin() const { return j_min_ + static_cast<long>(counts_.size()) - 1; }

  //! Count in bin j; zero outside the stored range.
  double count(long j) const {
    if (j < j_min_ || j > last_bin()) return 0.0;
    return counts_[static_cast<std::size_t>(j - j_min_)];
  }

  //! Height of bin j, count over n h.
  double height(long j) const { return count(j) / nh_; }

 private:
  BinGrid grid_;
  long j_min_ = 0;
  std::vector<double> counts_;
  std::size_t n_ = 0;
  double nh_ = 1.0;
};

}  // namespace bagdens
