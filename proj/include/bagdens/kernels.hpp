#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bagdens {

//! Symmetric, nonnegative, unit-mass smoothing kernel together with the
//! analytic constants that enter bandwidth rules and variability bands.
class Kernel {
 public:
  enum class Shape { gaussian, epanechnikov, rectangular, triangular };

  Kernel() = default;
  explicit Kernel(Shape shape) : shape_(shape) {}

  //! Parses "gaussian", "epanechnikov", "rectangular" or "triangular".
  static Kernel from_name(std::string_view name) {
    if (name == "gaussian") return Kernel(Shape::gaussian);
    if (name == "epanechnikov") return Kernel(Shape::epanechnikov);
    if (name == "rectangular") return Kernel(Shape::rectangular);
    if (name == "triangular") return Kernel(Shape::triangular);
    throw std::invalid_argument("unknown kernel '" + std::string(name) + "'");
  }

  Shape shape() const { return shape_; }

  std::string_view name() const {
    switch (shape_) {
      case Shape::gaussian: return "gaussian";
      case Shape::epanechnikov: return "epanechnikov";
      case Shape::rectangular: return "rectangular";
      case Shape::triangular: return "triangular";
    }
    return "gaussian";
  }

  //! Kernel weight K(u). Finite-support kernels include their endpoints.
  double operator()(double u) const {
    switch (shape_) {
      case Shape::gaussian: return inv_sqrt_2pi * std::exp(-0.5 * u * u);
      case Shape::epanechnikov: return std::fabs(u) <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0;
      case Shape::rectangular: return std::fabs(u) <= 1.0 ? 0.5 : 0.0;
      case Shape::triangular: {
        double a = std::fabs(u);
        return a <= 1.0 ? 1.0 - a : 0.0;
      }
    }
    return 0.0;
  }

  //! Integral of K^2 over the real line.
  double l2_norm_squared() const {
    switch (shape_) {
      case Shape::gaussian: return 0.2820947917738781434;  // 1 / (2 sqrt(pi))
      case Shape::epanechnikov: return 0.6;
      case Shape::rectangular: return 0.5;
      case Shape::triangular: return 2.0 / 3.0;
    }
    return 0.0;
  }

  //! Second moment, the integral of u^2 K(u).
  double second_moment() const {
    switch (shape_) {
      case Shape::gaussian: return 1.0;
      case Shape::epanechnikov: return 0.2;
      case Shape::rectangular: return 1.0 / 3.0;
      case Shape::triangular: return 1.0 / 6.0;
    }
    return 0.0;
  }

  //! Half-width of the support; infinite for the gaussian.
  double support_radius() const {
    return shape_ == Shape::gaussian ? std::numeric_limits<double>::infinity() : 1.0;
  }

  static constexpr double inv_sqrt_2pi = 0.3989422804014326779;

 private:
  Shape shape_ = Shape::gaussian;
};

}  // namespace bagdens
