#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bagging.hpp"
#include "grid.hpp"
#include "histogram.hpp"
#include "kde.hpp"

namespace bagdens {

//! Upper-tail standard normal quantile: the z with P(Z > z) = q.
//!
//! Rational initial guess refined by two Newton steps on the erfc-based tail
//! probability; absolute error is far below 1e-6 over (0, 1).
inline double normal_upper_quantile(double q) {
  if (!(q > 0.0) || !(q < 1.0)) throw std::invalid_argument("tail probability must lie in (0, 1)");
  const bool flip = q > 0.5;
  const double p = flip ? 1.0 - q : q;  // tail mass at most 1/2, so the quantile is >= 0

  // Acklam's rational approximation to the standard normal inverse CDF,
  // evaluated at the lower-tail argument p and negated to the upper tail.
  double z;
  if (p < 0.02425) {
    const double r = std::sqrt(-2.0 * std::log(p));
    z = -(((((-7.784894002430293e-03 * r - 3.223964580411365e-01) * r - 2.400758277161838e+00) * r -
            2.549732539343734e+00) *
               r +
           4.374664141464968e+00) *
              r +
          2.938163982698783e+00) /
        ((((7.784695709041462e-03 * r + 3.224671290700398e-01) * r + 2.445134137142996e+00) * r +
          3.754408661907416e+00) *
             r +
         1.0);
    z = -z;
  } else {
    const double s = p - 0.5;
    const double r = s * s;
    z = (((((-3.969683028665376e+01 * r + 2.209460984245205e+02) * r - 2.759285104469687e+02) * r +
           1.383577518672690e+02) *
              r -
          3.066479806614716e+01) *
             r +
         2.506628277459239e+00) *
        s /
        (((((-5.447609879822406e+01 * r + 1.615858368580409e+02) * r - 1.556989798598866e+02) * r +
           6.680131188771972e+01) *
              r -
          1.328068155288572e+01) *
             r +
         1.0);
    z = -z;
  }

  for (int step = 0; step < 2; ++step) {
    const double tail = 0.5 * std::erfc(z / std::sqrt(2.0));
    const double density = Kernel::inv_sqrt_2pi * std::exp(-0.5 * z * z);
    z += (tail - p) / density;
  }
  return flip ? -z : z;
}

//! Pointwise variability band: lower and upper envelopes over an ordered set
//! of abscissae, tagged with the nominal level.
class Band {
 public:
  Band(std::vector<double> abscissae, std::vector<double> lower, std::vector<double> upper,
       double level)
      : abscissae_(std::move(abscissae)),
        lower_(std::move(lower)),
        upper_(std::move(upper)),
        level_(level) {
    if (abscissae_.empty() || lower_.size() != abscissae_.size() ||
        upper_.size() != abscissae_.size())
      throw std::invalid_argument("band needs equally long, nonempty coordinate lists");
    if (!(level_ > 0.0) || !(level_ < 1.0))
      throw std::invalid_argument("band level must lie in (0, 1)");
    for (std::size_t i = 0; i < abscissae_.size(); ++i) {
      if (!std::isfinite(abscissae_[i]) || !std::isfinite(lower_[i]) || !std::isfinite(upper_[i]))
        throw std::invalid_argument("band coordinates must be finite");
      if (i > 0 && !(abscissae_[i] > abscissae_[i - 1]))
        throw std::invalid_argument("band abscissae must be strictly increasing");
      if (lower_[i] < 0.0 || lower_[i] > upper_[i])
        throw std::invalid_argument("band needs 0 <= lower <= upper");
    }
  }

  std::size_t size() const { return abscissae_.size(); }
  double abscissa(std::size_t i) const { return abscissae_.at(i); }
  double lower(std::size_t i) const { return lower_.at(i); }
  double upper(std::size_t i) const { return upper_.at(i); }
  double level() const { return level_; }

 private:
  std::vector<double> abscissae_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  double level_;
};

namespace detail {

//! Builds ((sqrt(f) - c)_+)^2 .. (sqrt(f) + c)^2 envelopes around a curve.
template <class F>
Band sqrt_scale_band(F&& f, double half_width, const EvalGrid& grid, double level) {
  std::vector<double> abscissae(grid.size());
  std::vector<double> lower(grid.size());
  std::vector<double> upper(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid.point(i);
    const double root = std::sqrt(f(t));
    const double lo = std::max(root - half_width, 0.0);
    abscissae[i] = t;
    lower[i] = lo * lo;
    upper[i] = (root + half_width) * (root + half_width);
  }
  return Band(std::move(abscissae), std::move(lower), std::move(upper), level);
}

//! Order statistic of rank ceil(q * count), clamped to [1, count]. The tiny
//! nudge keeps exact products like 0.05 * 20 from rounding up a rank.
inline std::size_t quantile_rank(double q, std::size_t count) {
  const double raw = std::ceil(q * static_cast<double>(count) - 1e-9);
  if (raw < 1.0) return 1;
  if (raw >= static_cast<double>(count)) return count;
  return static_cast<std::size_t>(raw);
}

}  // namespace detail

//! Variability band for a histogram, applied on the square-root scale with
//! half-width c = z_{alpha/(2m)} / 2 * sqrt(m / n), where m counts the bins
//! spanning the data range.
inline Band hist_band(const HistogramEstimator& est, std::size_t bins, double alpha,
                      const EvalGrid& grid) {
  if (bins < 1) throw std::invalid_argument("bin count must be at least 1");
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::invalid_argument("alpha must lie in (0, 1)");
  const double m = static_cast<double>(bins);
  const double n = static_cast<double>(est.n());
  const double c =
      normal_upper_quantile(alpha / (2.0 * m)) / 2.0 * std::sqrt(m / n);
  return detail::sqrt_scale_band(est, c, grid, 1.0 - alpha);
}

//! Variability band for a kernel density estimate on the square-root scale,
//! with pointwise standard error ||K||_2 / sqrt(4 n h) scaled by the given
//! multiplier (2 corresponds to roughly 95%).
inline Band kde_band(const KdeEstimator& est, double multiplier, const EvalGrid& grid) {
  if (!(multiplier > 0.0) || !std::isfinite(multiplier))
    throw std::invalid_argument("multiplier must be positive and finite");
  const double se = std::sqrt(est.kernel().l2_norm_squared() /
                              (4.0 * static_cast<double>(est.n()) * est.bandwidth()));
  const double level =
      std::min(std::erf(multiplier / std::sqrt(2.0)), std::nextafter(1.0, 0.0));
  return detail::sqrt_scale_band(est, multiplier * se, grid, level);
}

//! Pointwise band from the empirical alpha/2 and 1-alpha/2 quantiles of the
//! ensemble member values at each grid point.
template <class Estimator>
Band bootstrap_band(const BaggedEnsemble<Estimator>& ens, double alpha, const EvalGrid& grid) {
  if (ens.size() < 2) throw std::invalid_argument("bootstrap band needs at least 2 members");
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::invalid_argument("alpha must lie in (0, 1)");
  const std::size_t lo_rank = detail::quantile_rank(alpha / 2.0, ens.size());
  const std::size_t hi_rank = detail::quantile_rank(1.0 - alpha / 2.0, ens.size());
  std::vector<double> abscissae(grid.size());
  std::vector<double> lower(grid.size());
  std::vector<double> upper(grid.size());
  std::vector<double> values;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid.point(i);
    values = ens.member_values(t);
    std::sort(values.begin(), values.end());
    abscissae[i] = t;
    lower[i] = values[lo_rank - 1];
    upper[i] = values[hi_rank - 1];
  }
  return Band(std::move(abscissae), std::move(lower), std::move(upper), 1.0 - alpha);
}

}  // namespace bagdens
