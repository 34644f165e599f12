#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstddef>
#include <vector>

#include <bagdens/kde.hpp>
#include <bagdens/kernels.hpp>

using bagdens::Kernel;
using bagdens::KdeEstimator;

namespace {

//! Simpson quadrature over [lo, hi], written here independently of the
//! library's integration helpers.
template <class F>
double simpson(F&& f, double lo, double hi, std::size_t intervals) {
  const double step = (hi - lo) / static_cast<double>(intervals);
  double acc = f(lo) + f(hi);
  for (std::size_t k = 1; k < intervals; ++k)
    acc += f(lo + step * static_cast<double>(k)) * (k % 2 == 1 ? 4.0 : 2.0);
  return acc * step / 3.0;
}

}  // namespace

TEST_CASE("kernel names round-trip", "[kernels]") {
  for (const char* name : {"gaussian", "epanechnikov", "rectangular", "triangular"}) {
    CHECK(Kernel::from_name(name).name() == name);
  }
  CHECK_THROWS_AS(Kernel::from_name("cosine"), std::invalid_argument);
  CHECK(Kernel().shape() == Kernel::Shape::gaussian);
}

TEST_CASE("kernel point values", "[kernels]") {
  const Kernel g = Kernel::from_name("gaussian");
  CHECK(g(0.0) == Kernel::inv_sqrt_2pi);
  CHECK_THAT(g(1.0), Catch::Matchers::WithinRel(Kernel::inv_sqrt_2pi * std::exp(-0.5), 1e-15));
  const Kernel e = Kernel::from_name("epanechnikov");
  CHECK(e(0.0) == 0.75);
  CHECK(e(0.5) == 0.75 * 0.75);
  CHECK(e(1.0) == 0.0);
  CHECK(e(-1.5) == 0.0);
  const Kernel r = Kernel::from_name("rectangular");
  CHECK(r(0.0) == 0.5);
  CHECK(r(1.0) == 0.5);  // support endpoints included
  CHECK(r(-1.0) == 0.5);
  CHECK(r(1.0000001) == 0.0);
  const Kernel t = Kernel::from_name("triangular");
  CHECK(t(0.0) == 1.0);
  CHECK(t(0.25) == 0.75);
  CHECK(t(1.0) == 0.0);
  CHECK(t(-2.0) == 0.0);
}

TEST_CASE("kernel constants agree with quadrature", "[kernels]") {
  for (const char* name : {"gaussian", "epanechnikov", "rectangular", "triangular"}) {
    const Kernel k = Kernel::from_name(name);
    const double radius = std::isfinite(k.support_radius()) ? k.support_radius() : 10.0;
    const double mass = simpson([&k](double u) { return k(u); }, -radius, radius, 40000);
    const double l2 = simpson([&k](double u) { return k(u) * k(u); }, -radius, radius, 40000);
    const double mu2 = simpson([&k](double u) { return u * u * k(u); }, -radius, radius, 40000);
    INFO("kernel " << name);
    CHECK_THAT(mass, Catch::Matchers::WithinAbs(1.0, 1e-8));
    CHECK_THAT(l2, Catch::Matchers::WithinAbs(k.l2_norm_squared(), 1e-8));
    CHECK_THAT(mu2, Catch::Matchers::WithinAbs(k.second_moment(), 1e-8));
  }
}

TEST_CASE("kernel symmetry and support radius", "[kernels]") {
  for (const char* name : {"gaussian", "epanechnikov", "rectangular", "triangular"}) {
    const Kernel k = Kernel::from_name(name);
    for (double u : {0.1, 0.45, 0.99, 1.3}) CHECK(k(u) == k(-u));
  }
  CHECK(Kernel::from_name("gaussian").support_radius() ==
        std::numeric_limits<double>::infinity());
  CHECK(Kernel::from_name("epanechnikov").support_radius() == 1.0);
}

TEST_CASE("kde matches the literal kernel sum", "[kde]") {
  const std::vector<double> data{-0.4, 0.1, 0.1, 1.2};
  const double h = 0.3;
  for (const char* name : {"gaussian", "epanechnikov", "triangular"}) {
    const Kernel kernel = Kernel::from_name(name);
    const KdeEstimator kde(data, h, kernel);
    for (double x : {-1.0, -0.35, 0.1, 0.4, 0.95, 1.2, 2.0}) {
      double expected = 0.0;
      for (double xi : data) expected += kernel((x - xi) / h);
      expected /= static_cast<double>(data.size()) * h;
      INFO("kernel " << name << " at x = " << x);
      CHECK_THAT(kde(x), Catch::Matchers::WithinAbs(expected, 1e-14));
    }
  }
}

TEST_CASE("weighted form reproduces the expanded sample", "[kde]") {
  const std::vector<double> expanded{0.5, 0.5, 0.5, 2.0, 3.5, 3.5};
  const KdeEstimator from_data(expanded, 0.8);
  const KdeEstimator from_weights({0.5, 2.0, 3.5}, {3.0, 1.0, 2.0}, 0.8);
  for (double x : {-1.0, 0.5, 1.7, 3.2, 5.0}) CHECK(from_data(x) == from_weights(x));
  CHECK(from_data.n() == 6);
  CHECK(from_weights.total_weight() == 6.0);
}

TEST_CASE("gaussian tails stay positive where finite kernels vanish", "[kde]") {
  const std::vector<double> data{0.0, 0.5, 1.0};
  const KdeEstimator gauss(data, 0.4);
  const KdeEstimator epan(data, 0.4, Kernel::from_name("epanechnikov"));
  CHECK(gauss(5.0) > 0.0);
  CHECK(epan(5.0) == 0.0);
  CHECK(epan(1.5) > 0.0);  // inside the support window of the last point
}

TEST_CASE("kde integrates to one", "[kde]") {
  const std::vector<double> data{-1.2, 0.3, 0.9, 2.4};
  for (const char* name : {"gaussian", "rectangular"}) {
    const KdeEstimator kde(data, 0.5, Kernel::from_name(name));
    const double mass = simpson([&kde](double x) { return kde(x); }, -8.0, 9.0, 200000);
    INFO("kernel " << name);
    CHECK_THAT(mass, Catch::Matchers::WithinAbs(1.0, 1e-6));
  }
}

TEST_CASE("kde rejects bad inputs", "[kde]") {
  const std::vector<double> data{0.0, 1.0};
  CHECK_THROWS_AS(KdeEstimator(std::vector<double>{}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(KdeEstimator(data, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(KdeEstimator(data, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(KdeEstimator(data, std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(KdeEstimator({1.0}, {0.0}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(KdeEstimator({1.0}, {1.0, 2.0}, 0.5), std::invalid_argument);
  const KdeEstimator kde(data, 0.5);
  CHECK_THROWS_AS(kde(std::numeric_limits<double>::infinity()), std::invalid_argument);
}

TEST_CASE("kde accessors", "[kde]") {
  const std::vector<double> data{3.0, 1.0, 1.0};
  const KdeEstimator kde(data, 0.7, Kernel::from_name("triangular"));
  CHECK(kde.bandwidth() == 0.7);
  CHECK(kde.kernel().shape() == Kernel::Shape::triangular);
  CHECK(kde.n() == 3);
  CHECK(kde.values() == std::vector<double>{1.0, 3.0});
  CHECK(kde.weights() == std::vector<double>{2.0, 1.0});
}
