#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kernels.hpp"
#include "rng.hpp"

namespace bagdens {

//! Identifiers for the eight simulation targets.
enum class ModelId { normal, chi10, mix1, claw, triangular, uniform01, mix2, mix3 };

namespace detail {

inline double normal_pdf(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return Kernel::inv_sqrt_2pi / sd * std::exp(-0.5 * z * z);
}

//! True when x lies in one of the ten blocks (0.2k, 0.2k + 0.1], k = 0..9.
inline bool in_comb_block(double x) {
  if (!(x > 0.0) || x > 1.9) return false;
  const double k = std::floor(x / 0.2);
  const double frac = x - 0.2 * k;
  return frac > 0.0 && frac <= 0.1;
}

}  // namespace detail

//! One of the eight benchmark densities, offering exact pdf evaluation and
//! exact sampling. The support hint brackets at least 99.99% of the mass and
//! is what the experiment harness integrates over.
class DensityModel {
 public:
  explicit DensityModel(ModelId id) : id_(id) {}

  //! Parses "normal", "chi10", "mix1", "claw", "triangular", "uniform01",
  //! "mix2" or "mix3".
  static DensityModel from_name(std::string_view name) {
    for (const DensityModel& m : all())
      if (m.name() == name) return m;
    throw std::invalid_argument("unknown model '" + std::string(name) + "'");
  }

  //! All eight models in their catalog order.
  static const std::vector<DensityModel>& all() {
    static const std::vector<DensityModel> models = {
        DensityModel(ModelId::normal),    DensityModel(ModelId::chi10),
        DensityModel(ModelId::mix1),      DensityModel(ModelId::claw),
        DensityModel(ModelId::triangular), DensityModel(ModelId::uniform01),
        DensityModel(ModelId::mix2),      DensityModel(ModelId::mix3)};
    return models;
  }

  ModelId id() const { return id_; }

  std::string_view name() const {
    switch (id_) {
      case ModelId::normal: return "normal";
      case ModelId::chi10: return "chi10";
      case ModelId::mix1: return "mix1";
      case ModelId::claw: return "claw";
      case ModelId::triangular: return "triangular";
      case ModelId::uniform01: return "uniform01";
      case ModelId::mix2: return "mix2";
      case ModelId::mix3: return "mix3";
    }
    return "normal";
  }

  double support_lo() const {
    switch (id_) {
      case ModelId::normal: return -5.0;
      case ModelId::chi10: return 0.0;
      case ModelId::mix1: return -3.5;
      case ModelId::claw: return -4.0;
      case ModelId::triangular: return 0.0;
      case ModelId::uniform01: return 0.0;
      case ModelId::mix2: return -5.0;
      case ModelId::mix3: return -2.0;
    }
    return 0.0;
  }

  double support_hi() const {
    switch (id_) {
      case ModelId::normal: return 5.0;
      case ModelId::chi10: return 40.0;
      case ModelId::mix1: return 3.5;
      case ModelId::claw: return 4.0;
      case ModelId::triangular: return 2.0;
      case ModelId::uniform01: return 1.0;
      case ModelId::mix2: return 5.0;
      case ModelId::mix3: return 2.0;
    }
    return 1.0;
  }

  double pdf(double x) const {
    switch (id_) {
      case ModelId::normal:
        return detail::normal_pdf(x, 0.0, 1.0);
      case ModelId::chi10:
        // Chi-square with 10 degrees of freedom: x^4 e^(-x/2) / (2^5 4!).
        return x > 0.0 ? x * x * x * x * std::exp(-0.5 * x) / 768.0 : 0.0;
      case ModelId::mix1: {
        const double sd = std::sqrt(0.3);
        return 0.5 * detail::normal_pdf(x, -1.0, sd) + 0.5 * detail::normal_pdf(x, 1.0, sd);
      }
      case ModelId::claw: {
        double acc = 0.5 * detail::normal_pdf(x, 0.0, 1.0);
        for (int j = 0; j <= 4; ++j) acc += 0.1 * detail::normal_pdf(x, 0.5 * j - 1.0, 0.1);
        return acc;
      }
      case ModelId::triangular:
        if (x < 0.0 || x > 2.0) return 0.0;
        return x <= 1.0 ? x : 2.0 - x;
      case ModelId::uniform01:
        return x >= 0.0 && x <= 1.0 ? 1.0 : 0.0;
      case ModelId::mix2:
        return 0.5 * detail::normal_pdf(x, 0.0, 1.0) + (detail::in_comb_block(x) ? 0.5 : 0.0);
      case ModelId::mix3:
        if ((x >= -2.0 && x <= -1.0) || (x >= 1.0 && x <= 2.0)) return 0.5;
        return 0.0;
    }
    return 0.0;
  }

  double sample_one(RngStream& stream) const {
    switch (id_) {
      case ModelId::normal:
        return stream.normal();
      case ModelId::chi10: {
        // Sum of five rate-1/2 exponentials is chi-square with 10 degrees of
        // freedom; log(1 - u) is safe because uniform01 never returns 1.
        double log_prod = 0.0;
        for (int i = 0; i < 5; ++i) log_prod += std::log(1.0 - stream.uniform01());
        return -2.0 * log_prod;
      }
      case ModelId::mix1: {
        const double center = stream.uniform01() < 0.5 ? -1.0 : 1.0;
        return center + std::sqrt(0.3) * stream.normal();
      }
      case ModelId::claw: {
        const double u = stream.uniform01();
        if (u < 0.5) return stream.normal();
        int j = static_cast<int>((u - 0.5) * 10.0);
        if (j > 4) j = 4;
        return 0.5 * j - 1.0 + 0.1 * stream.normal();
      }
      case ModelId::triangular: {
        // Inverse CDF of the symmetric triangle on [0, 2].
        const double u = stream.uniform01();
        return u <= 0.5 ? std::sqrt(2.0 * u) : 2.0 - std::sqrt(2.0 * (1.0 - u));
      }
      case ModelId::uniform01:
        return stream.uniform01();
      case ModelId::mix2: {
        const double u = stream.uniform01();
        if (u < 0.5) return stream.normal();
        const double v = stream.uniform01();
        int k = static_cast<int>(10.0 * v);
        if (k > 9) k = 9;
        const double w = 10.0 * v - k;
        // 1 - w keeps the draw inside the half-open block (0.2k, 0.2k + 0.1].
        return 0.2 * k + 0.1 * (1.0 - w);
      }
      case ModelId::mix3: {
        const double u = stream.uniform01();
        const double v = stream.uniform01();
        return u < 0.5 ? -2.0 + v : 1.0 + v;
      }
    }
    throw std::logic_error("unreachable model id");
  }

  std::vector<double> sample(std::size_t n, RngStream& stream) const {
    if (n < 1) throw std::invalid_argument("sample size must be at least 1");
    std::vector<double> out(n);
    for (double& x : out) x = sample_one(stream);
    return out;
  }

  //! Interior abscissae where the pdf jumps or kinks. Quadrature helpers
  //! split integration ranges here; smooth models return an empty list.
  std::vector<double> breakpoints() const {
    switch (id_) {
      case ModelId::triangular:
        return {1.0};
      case ModelId::mix2: {
        std::vector<double> cuts;
        cuts.reserve(20);
        for (int j = 0; j < 20; ++j) cuts.push_back(0.1 * j);
        return cuts;
      }
      case ModelId::mix3:
        return {-1.0, 1.0};
      default:
        return {};
    }
  }

  //! Mass on [lo, hi]: composite Simpson quadrature between breakpoints,
  //! sampling strictly inside each smooth piece so one-sided jump values
  //! cannot bias the integral.
  double mass(double lo, double hi) const;

 private:
  ModelId id_;
};

namespace detail {

inline double simpson_inside(const DensityModel& model, double a, double b) {
  const double length = b - a;
  auto subdivisions = static_cast<std::size_t>(std::ceil(length * 1000.0));
  subdivisions = std::clamp<std::size_t>(subdivisions, 16, 20000);
  if (subdivisions % 2 == 1) ++subdivisions;
  const double nudge = length * 1e-9;
  const double lo = a + nudge;
  const double hi = b - nudge;
  const double step = (hi - lo) / static_cast<double>(subdivisions);
  double acc = model.pdf(lo) + model.pdf(hi);
  for (std::size_t k = 1; k < subdivisions; ++k)
    acc += model.pdf(lo + step * static_cast<double>(k)) * (k % 2 == 1 ? 4.0 : 2.0);
  return acc * step / 3.0;
}

}  // namespace detail

inline double DensityModel::mass(double lo, double hi) const {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("mass needs finite bounds with lo < hi");
  std::vector<double> cuts{lo};
  for (double b : breakpoints())
    if (b > lo && b < hi) cuts.push_back(b);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += detail::simpson_inside(*this, cuts[i], cuts[i + 1]);
  return total;
}

}  // namespace bagdens
