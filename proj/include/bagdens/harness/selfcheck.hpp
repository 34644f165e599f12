#pragma once

#include <cmath>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "../bagging.hpp"
#include "../bands.hpp"
#include "../bandwidth.hpp"
#include "../grid.hpp"
#include "../metrics.hpp"
#include "../models.hpp"
#include "../rng.hpp"

namespace bagdens::harness {

//! Runs a battery of fast invariant checks on small instances, printing one
//! line per check. Returns true when every check passes; the CLI maps a
//! failure to exit code 3.
inline bool run_selfcheck(std::ostream& os) {
  bool all_ok = true;
  auto check = [&](std::string_view label, bool ok, const std::string& detail = {}) {
    os << "selfcheck: " << label << (ok ? " ok" : " FAILED");
    if (!ok && !detail.empty()) os << " (" << detail << ")";
    os << '\n';
    if (!ok) all_ok = false;
  };

  // Kernels: unit mass and the tabulated constants.
  for (const char* name : {"gaussian", "epanechnikov", "rectangular", "triangular"}) {
    const Kernel k = Kernel::from_name(name);
    const double radius = std::isfinite(k.support_radius()) ? k.support_radius() : 9.0;
    double mass = 0.0;
    double mass_sq = 0.0;
    double moment = 0.0;
    const std::size_t points = 4001;
    const double step = 2.0 * radius / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
      const double u = -radius + step * static_cast<double>(i);
      const double w = (i == 0 || i + 1 == points) ? 0.5 : 1.0;
      mass += w * k(u);
      mass_sq += w * k(u) * k(u);
      moment += w * u * u * k(u);
    }
    mass *= step;
    mass_sq *= step;
    moment *= step;
    const bool ok = std::abs(mass - 1.0) < 1e-6 &&
                    std::abs(mass_sq - k.l2_norm_squared()) < 1e-6 &&
                    std::abs(moment - k.second_moment()) < 1e-6;
    check(std::string("kernel constants (") + name + ")", ok,
          "mass " + std::to_string(mass));
  }

  // RNG: keyed determinism and stream separation.
  {
    RngStream a(2026);
    RngStream b(2026);
    bool same = true;
    for (int i = 0; i < 5; ++i) same = same && a.uniform01() == b.uniform01();
    RngStream parent(7);
    RngStream c1 = parent.derive(1);
    RngStream c2 = parent.derive(2);
    check("rng determinism and separation", same && c1.next_u64() != c2.next_u64());
  }

  // Histogram: exact unit mass over the occupied bins.
  {
    const std::vector<double> data{0.1, 0.25, 0.6, 0.61, 1.4};
    const HistogramEstimator hist(data, BinGrid(0.0, 0.25));
    double mass = 0.0;
    for (long j = hist.first_bin(); j <= hist.last_bin(); ++j)
      mass += hist.height(j) * hist.grid().width;
    check("histogram unit mass", std::abs(mass - 1.0) < 1e-12, std::to_string(mass));
  }

  // Frequency polygon: exact unit mass from the knot trapezoids.
  {
    const std::vector<double> data{0.1, 0.25, 0.6, 0.61, 1.4};
    const FrequencyPolygonEstimator fp(data, BinGrid(0.0, 0.25));
    double mass = 0.0;
    for (std::size_t k = 0; k + 1 < fp.knot_count(); ++k) {
      mass += (fp.knot_abscissa(k + 1) - fp.knot_abscissa(k)) *
              (fp.knot_height(k) + fp.knot_height(k + 1)) / 2.0;
    }
    check("frequency polygon unit mass", std::abs(mass - 1.0) < 1e-12, std::to_string(mass));
  }

  // KDE: quadrature mass close to one.
  {
    const std::vector<double> data{-0.3, 0.2, 1.1};
    const KdeEstimator kde(data, 0.4);
    double mass = 0.0;
    const double lo = -0.3 - 9.0 * 0.4;
    const double hi = 1.1 + 9.0 * 0.4;
    const std::size_t points = 4001;
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
      const double w = (i == 0 || i + 1 == points) ? 0.5 : 1.0;
      mass += w * kde(lo + step * static_cast<double>(i));
    }
    mass *= step;
    check("kde unit mass", std::abs(mass - 1.0) < 1e-6, std::to_string(mass));
  }

  // One-member ensemble evaluates exactly like its member.
  {
    const std::vector<double> data{0.0, 0.5, 1.0, 2.5};
    const RngStream stream(11);
    const BagOptions options{BandwidthChoice::fixed(0.5), 0.0};
    const auto ens = bag_histogram(data, 1, stream, options);
    bool ok = true;
    for (double x : {0.1, 0.9, 2.2}) ok = ok && ens(x) == ens.member(0)(x);
    check("one-member ensemble identity", ok);
  }

  // Bootstrap band ranks: members valued 1..100 at x = 0.
  {
    std::vector<HistogramEstimator> members;
    members.reserve(100);
    const std::vector<double> one{0.0};
    for (int i = 1; i <= 100; ++i)
      members.emplace_back(one, BinGrid(0.0, 1.0 / static_cast<double>(i)));
    const BaggedEnsemble<HistogramEstimator> ens(std::move(members));
    const Band band = bootstrap_band(ens, 0.10, EvalGrid(-0.5, 0.5, 3));
    const bool ok = std::abs(band.lower(1) - 5.0) < 1e-9 && std::abs(band.upper(1) - 95.0) < 1e-9;
    check("bootstrap band order statistics", ok,
          std::to_string(band.lower(1)) + ".." + std::to_string(band.upper(1)));
  }

  // Normal quantile against the textbook two-sided 95% point.
  {
    const double z = normal_upper_quantile(0.025);
    check("normal quantile", std::abs(z - 1.9599639845400545) < 1e-6, std::to_string(z));
  }

  // Cross-validation over a single candidate returns that candidate.
  {
    const std::vector<double> data{0.0, 0.3, 0.5, 0.9, 1.4, 1.7};
    const std::vector<double> grid{0.4};
    const bool ok = lscv_select_histogram(data, grid, 0.0) == 0.4 &&
                    lscv_select_kde(data, grid) == 0.4;
    check("cross-validation single candidate", ok);
  }

  // Every model: nonnegative pdf and at least 99.99% of mass on its hint.
  for (const DensityModel& model : DensityModel::all()) {
    const double mass = model.mass(model.support_lo(), model.support_hi());
    bool nonneg = true;
    const EvalGrid grid(model.support_lo(), model.support_hi(), 201);
    for (std::size_t i = 0; i < grid.size(); ++i) nonneg = nonneg && model.pdf(grid.point(i)) >= 0.0;
    const bool ok = nonneg && mass >= 0.9999 && mass <= 1.0 + 1e-9;
    check(std::string("model mass (") + std::string(model.name()) + ")", ok,
          std::to_string(mass));
  }

  // Sampling determinism: one stream, two identical draws.
  {
    const DensityModel model = DensityModel::from_name("claw");
    RngStream s1(99);
    RngStream s2(99);
    const std::vector<double> a = model.sample(50, s1);
    const std::vector<double> b = model.sample(50, s2);
    check("sampling determinism", a == b);
  }

  return all_ok;
}

}  // namespace bagdens::harness
