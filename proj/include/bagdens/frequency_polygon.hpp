#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "histogram.hpp"

namespace bagdens {

//! Piecewise-linear density estimate joining histogram heights at bin
//! midpoints, closed by one zero-height knot half a bin beyond each end.
class FrequencyPolygonEstimator {
 public:
  FrequencyPolygonEstimator(std::span<const double> data, const BinGrid& grid)
      : base_(data, grid) {
    build_knots();
  }

  explicit FrequencyPolygonEstimator(HistogramEstimator base) : base_(std::move(base)) {
    build_knots();
  }

  //! Estimated density at x; zero at and beyond the outer zero knots.
  double operator()(double x) const {
    if (!std::isfinite(x)) throw std::invalid_argument("evaluation point must be finite");
    if (x <= abscissae_.front() || x >= abscissae_.back()) return 0.0;
    const double w = base_.grid().width;
    const std::size_t last = abscissae_.size() - 1;
    double rel = (x - abscissae_.front()) / w;
    std::size_t k = std::min(static_cast<std::size_t>(rel), last - 1);
    while (k + 1 < last && abscissae_[k + 1] <= x) ++k;
    while (k > 0 && abscissae_[k] > x) --k;
    double v = heights_[k] + (x - abscissae_[k]) * (heights_[k + 1] - heights_[k]) / w;
    return v > 0.0 ? v : 0.0;
  }

  const HistogramEstimator& base() const { return base_; }

  std::size_t knot_count() const { return abscissae_.size(); }
  double knot_abscissa(std::size_t k) const { return abscissae_[k]; }
  double knot_height(std::size_t k) const { return heights_[k]; }

 private:
  void build_knots() {
    const long lo = base_.first_bin() - 1;
    const long hi = base_.last_bin() + 1;
    abscissae_.reserve(static_cast<std::size_t>(hi - lo + 1));
    heights_.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (long j = lo; j <= hi; ++j) {
      abscissae_.push_back(base_.grid().bin_midpoint(j));
      heights_.push_back(j == lo || j == hi ? 0.0 : base_.height(j));
    }
    for (std::size_t k = 1; k < abscissae_.size(); ++k)
      if (!(abscissae_[k] > abscissae_[k - 1]))
        throw std::invalid_argument("bin grid cannot resolve distinct knot abscissae");
  }

  HistogramEstimator base_;
  std::vector<double> abscissae_;
  std::vector<double> heights_;
};

}  // namespace bagdens
