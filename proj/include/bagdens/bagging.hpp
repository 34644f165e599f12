#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bandwidth.hpp"
#include "frequency_polygon.hpp"
#include "histogram.hpp"
#include "kde.hpp"
#include "kernels.hpp"
#include "rng.hpp"
#include "sample.hpp"

namespace bagdens {

//! Draws a same-size sample with replacement into `out`. Deterministic given
//! the stream state.
inline void bootstrap_resample(std::span<const double> data, RngStream& stream,
                               std::vector<double>& out) {
  check_sample(data, 1);
  const std::size_t n = data.size();
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto idx = static_cast<std::size_t>(stream.uniform01() * static_cast<double>(n));
    if (idx >= n) idx = n - 1;
    out[i] = data[idx];
  }
}

inline std::vector<double> bootstrap_resample(std::span<const double> data, RngStream& stream) {
  std::vector<double> out;
  bootstrap_resample(data, stream, out);
  return out;
}

//! How each ensemble member obtains its bandwidth: a fixed value shared by
//! all members, or a rule recomputed on each bootstrap sample.
struct BandwidthChoice {
  enum class Mode { fixed, reference, lscv };

  Mode mode = Mode::lscv;
  double value = 0.0;  // only read in fixed mode
  LscvGrid grid{};     // only read in lscv mode

  static BandwidthChoice fixed(double h) {
    if (!(h > 0.0) || !std::isfinite(h))
      throw std::invalid_argument("fixed bandwidth must be positive and finite");
    BandwidthChoice c;
    c.mode = Mode::fixed;
    c.value = h;
    return c;
  }

  static BandwidthChoice reference() {
    BandwidthChoice c;
    c.mode = Mode::reference;
    return c;
  }

  static BandwidthChoice lscv(LscvGrid grid = {}) {
    BandwidthChoice c;
    c.mode = Mode::lscv;
    c.grid = grid;
    return c;
  }
};

//! Options shared by the bagging fitters. By default each member's grid is
//! anchored at the minimum of its own bootstrap sample; `fixed_origin`
//! overrides that, which some identities (and their tests) require.
struct BagOptions {
  BandwidthChoice bandwidth{};
  std::optional<double> fixed_origin{};
};

//! Pointwise average of B base estimators of one kind.
template <class Estimator>
class BaggedEnsemble {
 public:
  explicit BaggedEnsemble(std::vector<Estimator> members) : members_(std::move(members)) {
    if (members_.empty()) throw std::invalid_argument("bagged ensemble needs at least one member");
  }

  std::size_t size() const { return members_.size(); }
  const Estimator& member(std::size_t b) const { return members_.at(b); }

  double operator()(double x) const {
    double acc = 0.0;
    for (const Estimator& m : members_) acc += m(x);
    return acc / static_cast<double>(members_.size());
  }

  //! Member evaluations at x, in member order.
  std::vector<double> member_values(double x) const {
    std::vector<double> out;
    out.reserve(members_.size());
    for (const Estimator& m : members_) out.push_back(m(x));
    return out;
  }

 private:
  std::vector<Estimator> members_;
};

namespace detail {

inline double resolve_bandwidth(std::span<const double> data, const BandwidthChoice& choice,
                                CurveFamily family, const Kernel& kernel,
                                std::optional<double> origin) {
  switch (choice.mode) {
    case BandwidthChoice::Mode::fixed:
      return choice.value;
    case BandwidthChoice::Mode::reference:
      return reference_bandwidth(data, family);
    case BandwidthChoice::Mode::lscv:
      return lscv_bandwidth(data, family, kernel, choice.grid, origin);
  }
  throw std::logic_error("unreachable bandwidth mode");
}

//! Fig.-1-style loop shared by the bagging fitters. Member b draws from the
//! child stream with index b, so results do not depend on fitting order. A
//! bootstrap sample with zero spread cannot support a data-driven bandwidth;
//! such members fall back to the parent sample's bandwidth.
template <class Estimator, class SelectH, class FitOne>
BaggedEnsemble<Estimator> fit_bagged(std::span<const double> data, std::size_t ensemble_size,
                                     const RngStream& stream, SelectH&& select_h,
                                     FitOne&& fit_one) {
  check_sample(data, 1);
  if (ensemble_size < 1) throw std::invalid_argument("ensemble size must be at least 1");
  std::vector<Estimator> members;
  members.reserve(ensemble_size);
  std::optional<double> parent_h;
  std::vector<double> resample;
  for (std::size_t b = 1; b <= ensemble_size; ++b) {
    RngStream member_stream = stream.derive(b);
    bootstrap_resample(data, member_stream, resample);
    double h;
    try {
      h = select_h(std::span<const double>(resample));
    } catch (const degenerate_sample_error&) {
      if (!parent_h) parent_h = select_h(data);
      h = *parent_h;
    }
    members.push_back(fit_one(std::span<const double>(resample), h));
  }
  return BaggedEnsemble<Estimator>(std::move(members));
}

}  // namespace detail

//! Bagged histogram: B histograms fitted on bootstrap resamples, averaged
//! pointwise.
inline BaggedEnsemble<HistogramEstimator> bag_histogram(std::span<const double> data,
                                                        std::size_t ensemble_size,
                                                        const RngStream& stream,
                                                        const BagOptions& options = {}) {
  auto select_h = [&options](std::span<const double> s) {
    return detail::resolve_bandwidth(s, options.bandwidth, CurveFamily::histogram, Kernel(),
                                     options.fixed_origin);
  };
  auto fit_one = [&options](std::span<const double> s, double h) {
    return HistogramEstimator(s, BinGrid(options.fixed_origin.value_or(sample_min(s)), h));
  };
  return detail::fit_bagged<HistogramEstimator>(data, ensemble_size, stream, select_h, fit_one);
}

//! Bagged frequency polygon.
inline BaggedEnsemble<FrequencyPolygonEstimator> bag_frequency_polygon(
    std::span<const double> data, std::size_t ensemble_size, const RngStream& stream,
    const BagOptions& options = {}) {
  auto select_h = [&options](std::span<const double> s) {
    return detail::resolve_bandwidth(s, options.bandwidth, CurveFamily::frequency_polygon,
                                     Kernel(), options.fixed_origin);
  };
  auto fit_one = [&options](std::span<const double> s, double h) {
    return FrequencyPolygonEstimator(s, BinGrid(options.fixed_origin.value_or(sample_min(s)), h));
  };
  return detail::fit_bagged<FrequencyPolygonEstimator>(data, ensemble_size, stream, select_h,
                                                       fit_one);
}

//! Bagged kernel density estimate.
inline BaggedEnsemble<KdeEstimator> bag_kde(std::span<const double> data,
                                            std::size_t ensemble_size, const RngStream& stream,
                                            const BagOptions& options = {},
                                            const Kernel& kernel = Kernel()) {
  auto select_h = [&options, &kernel](std::span<const double> s) {
    return detail::resolve_bandwidth(s, options.bandwidth, CurveFamily::kde, kernel,
                                     std::nullopt);
  };
  auto fit_one = [&kernel](std::span<const double> s, double h) {
    return KdeEstimator(s, h, kernel);
  };
  return detail::fit_bagged<KdeEstimator>(data, ensemble_size, stream, select_h, fit_one);
}

//! Random average shifted histogram with explicit grid shifts: one histogram
//! on the full sample per shift, each anchored at min(data) + shift.
inline BaggedEnsemble<HistogramEstimator> rash_with_shifts(std::span<const double> data, double h,
                                                           std::span<const double> shifts) {
  check_sample(data, 1);
  if (!(h > 0.0) || !std::isfinite(h))
    throw std::invalid_argument("bin width must be positive and finite");
  if (shifts.empty()) throw std::invalid_argument("need at least one grid shift");
  const double base = sample_min(data);
  std::vector<HistogramEstimator> members;
  members.reserve(shifts.size());
  for (double u : shifts) members.emplace_back(data, BinGrid(base + u, h));
  return BaggedEnsemble<HistogramEstimator>(std::move(members));
}

//! Random average shifted histogram: B histograms on the full sample (no
//! resampling), with grid origins translated by independent U[0, h) shifts.
inline BaggedEnsemble<HistogramEstimator> rash(std::span<const double> data, double h,
                                               std::size_t ensemble_size,
                                               const RngStream& stream) {
  if (ensemble_size < 1) throw std::invalid_argument("ensemble size must be at least 1");
  if (!(h > 0.0) || !std::isfinite(h))
    throw std::invalid_argument("bin width must be positive and finite");
  std::vector<double> shifts(ensemble_size);
  for (std::size_t b = 1; b <= ensemble_size; ++b) {
    RngStream member_stream = stream.derive(b);
    shifts[b - 1] = member_stream.uniform(0.0, h);
  }
  return rash_with_shifts(data, h, shifts);
}

}  // namespace bagdens
