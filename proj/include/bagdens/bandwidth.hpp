#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "frequency_polygon.hpp"
#include "histogram.hpp"
#include "kde.hpp"
#include "kernels.hpp"
#include "sample.hpp"

namespace bagdens {

//! Estimator family a bandwidth is selected for.
enum class CurveFamily { histogram, frequency_polygon, kde };

//! Normal-reference bandwidth for the given family.
//!
//! Uses the sample standard deviation with the n-1 denominator:
//!   histogram          3.49 * sd * n^(-1/3)
//!   frequency polygon  2.15 * sd * n^(-1/5)
//!   kde                1.06 * sd * n^(-1/5)
//!
//! Throws degenerate_sample_error when the sample has no spread, since no
//! positive bandwidth can be derived from it.
inline double reference_bandwidth(std::span<const double> data, CurveFamily family) {
  check_sample(data, 2);
  const double sd = sample_sd(data);
  if (sd <= 0.0) throw degenerate_sample_error("sample has zero spread, no reference bandwidth");
  const double n = static_cast<double>(data.size());
  switch (family) {
    case CurveFamily::histogram:
      return 3.49 * sd * std::pow(n, -1.0 / 3.0);
    case CurveFamily::frequency_polygon:
      return 2.15 * sd * std::pow(n, -1.0 / 5.0);
    case CurveFamily::kde:
      return 1.06 * sd * std::pow(n, -1.0 / 5.0);
  }
  throw std::logic_error("unreachable curve family");
}

//! Log-spaced candidate grid for cross-validation, expressed as multiples of
//! the reference bandwidth.
struct LscvGrid {
  double lo_factor = 0.2;
  double hi_factor = 5.0;
  std::size_t size = 30;
};

//! Expands a grid specification into ascending candidate bandwidths
//! h_ref * lo * (hi/lo)^(i/(size-1)).
inline std::vector<double> lscv_candidates(double h_ref, const LscvGrid& grid = {}) {
  if (!(h_ref > 0.0) || !std::isfinite(h_ref))
    throw std::invalid_argument("reference bandwidth must be positive and finite");
  if (grid.size < 10) throw std::invalid_argument("cross-validation grid needs at least 10 candidates");
  if (!(grid.lo_factor > 0.0) || !(grid.lo_factor < grid.hi_factor) || !std::isfinite(grid.hi_factor))
    throw std::invalid_argument("cross-validation grid needs 0 < lo_factor < hi_factor < inf");
  std::vector<double> out(grid.size);
  const double log_lo = std::log(grid.lo_factor);
  const double log_hi = std::log(grid.hi_factor);
  const double denom = static_cast<double>(grid.size - 1);
  for (std::size_t i = 0; i < grid.size; ++i) {
    const double t = static_cast<double>(i) / denom;
    out[i] = h_ref * std::exp(log_lo + t * (log_hi - log_lo));
  }
  return out;
}

namespace detail {

inline void check_candidates(std::span<const double> candidates) {
  if (candidates.empty()) throw std::invalid_argument("candidate bandwidth list is empty");
  double prev = 0.0;
  for (double h : candidates) {
    if (!(h > 0.0) || !std::isfinite(h))
      throw std::invalid_argument("candidate bandwidths must be positive and finite");
    if (!(h > prev)) throw std::invalid_argument("candidate bandwidths must be strictly ascending");
    prev = h;
  }
}

template <class F>
double integrate_trapezoid(F&& f, double lo, double hi, std::size_t points) {
  const double step = (hi - lo) / static_cast<double>(points - 1);
  double acc = 0.5 * (f(lo) + f(hi));
  for (std::size_t i = 1; i + 1 < points; ++i) acc += f(lo + step * static_cast<double>(i));
  return acc * step;
}

constexpr std::size_t kRiskQuadraturePoints = 2001;

//! Squared distance beyond which exp(-d^2 / (4 h^2)) underflows past double
//! precision relative to the retained terms: d/h = sqrt(168) gives exp(-42).
constexpr double kGaussianPairCutoff = 12.96148139681572;

}  // namespace detail

//! Leave-one-out least-squares risk of a histogram with bin width h anchored at
//! origin, via the closed form
//!   CV(h) = 2 / ((n-1) h) - (n+1) / ((n-1) n^2 h) * sum_j count_j^2.
inline double lscv_score_histogram(std::span<const double> data, double h, double origin) {
  check_sample(data, 2);
  const HistogramEstimator hist(data, BinGrid(origin, h));
  double sum_sq = 0.0;
  for (long j = hist.first_bin(); j <= hist.last_bin(); ++j) {
    const double c = hist.count(j);
    sum_sq += c * c;
  }
  const double n = static_cast<double>(data.size());
  return 2.0 / ((n - 1.0) * h) - (n + 1.0) * sum_sq / ((n - 1.0) * n * n * h);
}

//! Leave-one-out least-squares risk of a frequency polygon with bin width h
//! anchored at origin. The squared-curve term is integrated numerically over
//! the polygon's support; each leave-one-out value follows from decrementing
//! the count of the bin that holds the left-out point.
inline double lscv_score_frequency_polygon(std::span<const double> data, double h, double origin) {
  check_sample(data, 2);
  const HistogramEstimator hist(data, BinGrid(origin, h));
  const FrequencyPolygonEstimator fp(hist);
  const double integral = detail::integrate_trapezoid(
      [&fp](double x) {
        const double v = fp(x);
        return v * v;
      },
      fp.knot_abscissa(0), fp.knot_abscissa(fp.knot_count() - 1), detail::kRiskQuadraturePoints);

  const auto& grid = hist.grid();
  const double n = static_cast<double>(data.size());
  double loo_sum = 0.0;
  for (double x : data) {
    const long j = grid.bin_index(x);
    const double mid = grid.bin_midpoint(j);
    // Interpolate between the midpoints straddling x, with the count of bin j
    // reduced by one for the left-out observation.
    double numer;
    if (x >= mid) {
      const double t = (x - mid) / h;
      const double cj = hist.count(j) - 1.0;
      numer = cj + t * (hist.count(j + 1) - cj);
    } else {
      const double t = (x - grid.bin_midpoint(j - 1)) / h;
      const double cl = hist.count(j - 1);
      numer = cl + t * (hist.count(j) - 1.0 - cl);
    }
    loo_sum += numer / ((n - 1.0) * h);
  }
  return integral - 2.0 * loo_sum / n;
}

//! Leave-one-out least-squares risk of a kernel density estimate with
//! bandwidth h. The Gaussian kernel uses the exact pair-sum form; other
//! kernels fall back to numeric integration of the squared curve plus the
//! identity f_loo(x_i) = (n f(x_i) - K(0)/h) / (n-1).
inline double lscv_score_kde(std::span<const double> data, double h,
                             const Kernel& kernel = Kernel()) {
  check_sample(data, 2);
  KdeEstimator::check_bandwidth(h);
  const double n = static_cast<double>(data.size());

  if (kernel.shape() == Kernel::Shape::gaussian) {
    const std::vector<double> sorted = sorted_copy(data);
    std::vector<double> values;
    std::vector<double> weights;
    unique_weighted(sorted, values, weights);
    const std::size_t m = values.size();
    double sum_w_sq = 0.0;
    for (double w : weights) sum_w_sq += w * w;
    double p1 = sum_w_sq;
    double p2 = sum_w_sq;
    const double cutoff = detail::kGaussianPairCutoff * h;
    const double scale = -0.25 / (h * h);
    for (std::size_t a = 0; a + 1 < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) {
        const double d = values[b] - values[a];
        if (d > cutoff) break;
        const double e = std::exp(scale * d * d);
        const double ww = 2.0 * weights[a] * weights[b];
        p1 += ww * e;
        p2 += ww * e * e;
      }
    }
    const double sqrt_pi = std::sqrt(std::acos(-1.0));
    const double sqrt_2pi = std::sqrt(2.0 * std::acos(-1.0));
    return p1 / (2.0 * sqrt_pi * n * n * h) - 2.0 * (p2 - n) / (sqrt_2pi * n * (n - 1.0) * h);
  }

  const KdeEstimator kde(data, h, kernel);
  const double radius = kernel.support_radius();
  const double lo = sample_min(data) - radius * h;
  const double hi = sample_max(data) + radius * h;
  const double integral = detail::integrate_trapezoid(
      [&kde](double x) {
        const double v = kde(x);
        return v * v;
      },
      lo, hi, detail::kRiskQuadraturePoints);

  const double k0_over_h = kernel(0.0) / h;
  double loo_sum = 0.0;
  for (double x : data) loo_sum += (n * kde(x) - k0_over_h) / (n - 1.0);
  return integral - 2.0 * loo_sum / n;
}

namespace detail {

template <class Score>
double select_minimizer(std::span<const double> candidates, Score&& score) {
  check_candidates(candidates);
  double best_h = candidates[0];
  double best_score = score(candidates[0]);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double s = score(candidates[i]);
    if (s < best_score) {
      best_score = s;
      best_h = candidates[i];
    }
  }
  return best_h;
}

}  // namespace detail

//! Smallest candidate minimizing the histogram cross-validation risk.
//! Candidates must be strictly ascending; ties keep the smaller bandwidth.
inline double lscv_select_histogram(std::span<const double> data,
                                    std::span<const double> candidates, double origin) {
  check_sample(data, 2);
  return detail::select_minimizer(
      candidates, [&](double h) { return lscv_score_histogram(data, h, origin); });
}

//! Smallest candidate minimizing the frequency-polygon cross-validation risk.
inline double lscv_select_frequency_polygon(std::span<const double> data,
                                            std::span<const double> candidates, double origin) {
  check_sample(data, 2);
  return detail::select_minimizer(
      candidates, [&](double h) { return lscv_score_frequency_polygon(data, h, origin); });
}

//! Smallest candidate minimizing the kernel-density cross-validation risk.
inline double lscv_select_kde(std::span<const double> data, std::span<const double> candidates,
                              const Kernel& kernel = Kernel()) {
  check_sample(data, 2);
  return detail::select_minimizer(candidates,
                                  [&](double h) { return lscv_score_kde(data, h, kernel); });
}

//! Cross-validated bandwidth for the given family: builds the candidate grid
//! around the reference bandwidth and returns the risk minimizer. Grid-based
//! estimators anchor their bins at `origin` when given, otherwise at the
//! sample minimum. Throws degenerate_sample_error when the sample has no
//! spread.
inline double lscv_bandwidth(std::span<const double> data, CurveFamily family,
                             const Kernel& kernel = Kernel(),
                             const LscvGrid& grid = {},
                             std::optional<double> origin = std::nullopt) {
  const double h_ref = reference_bandwidth(data, family);
  const std::vector<double> candidates = lscv_candidates(h_ref, grid);
  switch (family) {
    case CurveFamily::histogram:
      return lscv_select_histogram(data, candidates, origin.value_or(sample_min(data)));
    case CurveFamily::frequency_polygon:
      return lscv_select_frequency_polygon(data, candidates, origin.value_or(sample_min(data)));
    case CurveFamily::kde:
      return lscv_select_kde(data, candidates, kernel);
  }
  throw std::logic_error("unreachable curve family");
}

}  // namespace bagdens
