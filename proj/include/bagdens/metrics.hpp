#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bands.hpp"
#include "grid.hpp"
#include "models.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace bagdens {

//! Mean and standard error accumulated from plain sums, so the reported mean
//! is exactly the arithmetic mean of the inputs.
class RunningStat {
 public:
  void add(double x) {
    sum_ += x;
    sum_sq_ += x * x;
    ++count_;
  }

  std::size_t count() const { return count_; }

  double mean() const {
    if (count_ == 0) throw std::logic_error("no values accumulated");
    return sum_ / static_cast<double>(count_);
  }

  //! Unbiased sample variance; 0 by convention for fewer than two values.
  double variance() const {
    if (count_ < 2) return 0.0;
    const double n = static_cast<double>(count_);
    const double m = sum_ / n;
    const double v = (sum_sq_ - n * m * m) / (n - 1.0);
    return v > 0.0 ? v : 0.0;
  }

  double std_error() const {
    if (count_ == 0) return 0.0;
    return std::sqrt(variance() / static_cast<double>(count_));
  }

 private:
  double sum_ = 0.0;
  double sum_sq_ = 0.0;
  std::size_t count_ = 0;
};

//! Default evaluation grid: 1001 uniform points over the model's support
//! hint. Shared by the error and band experiments.
inline EvalGrid default_grid(const DensityModel& model) {
  return EvalGrid(model.support_lo(), model.support_hi(), 1001);
}

struct IseResult {
  double value = 0.0;
  //! False flags a grid that does not bracket the model's support hint; the
  //! integral is still computed over the grid as given.
  bool covers_support = true;
};

//! Integrated squared error of a curve given by its values at the grid
//! points, by trapezoid quadrature against the true pdf.
inline IseResult ise_values_checked(std::span<const double> values, const DensityModel& truth,
                                    const EvalGrid& grid) {
  if (values.size() != grid.size())
    throw std::invalid_argument("curve values must match the grid length");
  IseResult out;
  out.covers_support = grid.front() <= truth.support_lo() && grid.back() >= truth.support_hi();
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = values[i] - truth.pdf(grid.point(i));
    const double w = (i == 0 || i + 1 == grid.size()) ? 0.5 : 1.0;
    acc += w * d * d;
  }
  out.value = acc * grid.spacing();
  return out;
}

//! Integrated squared error of a density curve against the true pdf,
//! by trapezoid quadrature over the grid.
template <class Estimate>
IseResult ise_checked(Estimate&& estimate, const DensityModel& truth, const EvalGrid& grid) {
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = estimate(grid.point(i));
  return ise_values_checked(values, truth, grid);
}

template <class Estimate>
double ise(Estimate&& estimate, const DensityModel& truth, const EvalGrid& grid) {
  return ise_checked(std::forward<Estimate>(estimate), truth, grid).value;
}

//! Fraction of grid points where the true pdf lies inside the band, bounds
//! inclusive.
inline double coverage(const Band& band, const DensityModel& truth) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < band.size(); ++i) {
    const double f = truth.pdf(band.abscissa(i));
    if (band.lower(i) <= f && f <= band.upper(i)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(band.size());
}

//! Arithmetic mean of the pointwise band widths.
inline double mean_width(const Band& band) {
  double acc = 0.0;
  for (std::size_t i = 0; i < band.size(); ++i) acc += band.upper(i) - band.lower(i);
  return acc / static_cast<double>(band.size());
}

struct MiseResult {
  double mean = 0.0;
  double std_error = 0.0;
};

//! Monte Carlo MISE. Replicate m = 1..M draws a fresh sample of size n using
//! child stream m of the cell stream (the sample from grandchild 0, the fit
//! from grandchild 1), fits a curve with the supplied fitter and integrates
//! the squared error against the true pdf. The fitter receives
//! (sample, fit stream), must be thread-safe, and replicate results are
//! reduced in replicate order, so every thread count gives identical output.
template <class Fitter>
MiseResult mise(const DensityModel& model, std::size_t n, std::size_t replicates,
                const RngStream& cell_stream, const EvalGrid& grid, Fitter&& fit,
                unsigned threads = 1) {
  if (replicates < 1) throw std::invalid_argument("need at least one replicate");
  std::vector<double> errors(replicates);
  parallel_for(replicates, threads, [&](std::size_t idx) {
    const RngStream rep = cell_stream.derive(idx + 1);
    RngStream sample_stream = rep.derive(0);
    const std::vector<double> sample = model.sample(n, sample_stream);
    const auto density = fit(std::span<const double>(sample), rep.derive(1));
    errors[idx] = ise(density, model, grid);
  });
  RunningStat stat;
  for (double e : errors) stat.add(e);
  return {stat.mean(), stat.std_error()};
}

}  // namespace bagdens
