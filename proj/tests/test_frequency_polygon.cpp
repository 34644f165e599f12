#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <bagdens/frequency_polygon.hpp>
#include <bagdens/histogram.hpp>

using bagdens::BinGrid;
using bagdens::FrequencyPolygonEstimator;
using bagdens::HistogramEstimator;

TEST_CASE("knots sit at bin midpoints with zero-height pads", "[fp]") {
  const std::vector<double> data{0.1, 0.2, 0.7};
  const FrequencyPolygonEstimator fp(data, BinGrid(0.0, 0.5));
  REQUIRE(fp.knot_count() == 4);
  CHECK(fp.knot_abscissa(0) == -0.25);
  CHECK(fp.knot_abscissa(1) == 0.25);
  CHECK(fp.knot_abscissa(2) == 0.75);
  CHECK(fp.knot_abscissa(3) == 1.25);
  CHECK(fp.knot_height(0) == 0.0);
  CHECK_THAT(fp.knot_height(1), Catch::Matchers::WithinRel(4.0 / 3.0, 1e-15));
  CHECK_THAT(fp.knot_height(2), Catch::Matchers::WithinRel(2.0 / 3.0, 1e-15));
  CHECK(fp.knot_height(3) == 0.0);
}

TEST_CASE("evaluation interpolates linearly between knots", "[fp]") {
  const std::vector<double> data{0.1, 0.2, 0.7};
  const FrequencyPolygonEstimator fp(data, BinGrid(0.0, 0.5));
  CHECK_THAT(fp(0.5), Catch::Matchers::WithinRel(1.0, 1e-14));
  CHECK_THAT(fp(0.0), Catch::Matchers::WithinRel(2.0 / 3.0, 1e-14));
  CHECK(fp(0.25) == fp.knot_height(1));
  CHECK(fp(0.75) == fp.knot_height(2));
}

TEST_CASE("polygon equals histogram heights at interior midpoints", "[fp]") {
  const std::vector<double> data{-0.8, -0.1, 0.2, 0.25, 0.9, 1.6, 1.6, 2.3};
  const HistogramEstimator hist(data, BinGrid(-1.0, 0.45));
  const FrequencyPolygonEstimator fp(hist);
  for (long j = hist.first_bin(); j <= hist.last_bin(); ++j) {
    CHECK(fp(hist.grid().bin_midpoint(j)) == hist.height(j));
  }
}

TEST_CASE("zero at and beyond the pad knots", "[fp]") {
  const std::vector<double> data{0.1, 0.2, 0.7};
  const FrequencyPolygonEstimator fp(data, BinGrid(0.0, 0.5));
  CHECK(fp(-0.25) == 0.0);
  CHECK(fp(-0.26) == 0.0);
  CHECK(fp(-10.0) == 0.0);
  CHECK(fp(1.25) == 0.0);
  CHECK(fp(7.0) == 0.0);
  CHECK(fp(-0.24) > 0.0);
  CHECK(fp(1.24) > 0.0);
}

TEST_CASE("polygon mass is exactly one", "[fp]") {
  const std::vector<double> data{0.1, 0.25, 0.6, 0.61, 1.4, 2.2, 2.25};
  const FrequencyPolygonEstimator fp(data, BinGrid(0.0, 0.3));
  double mass = 0.0;
  for (std::size_t k = 0; k + 1 < fp.knot_count(); ++k) {
    mass += (fp.knot_abscissa(k + 1) - fp.knot_abscissa(k)) *
            (fp.knot_height(k) + fp.knot_height(k + 1)) / 2.0;
  }
  CHECK_THAT(mass, Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("construction from data and from a histogram agree", "[fp]") {
  const std::vector<double> data{-0.3, 0.4, 0.45, 1.7};
  const BinGrid grid(-0.5, 0.6);
  const FrequencyPolygonEstimator direct(data, grid);
  const FrequencyPolygonEstimator via_hist(HistogramEstimator(data, grid));
  REQUIRE(direct.knot_count() == via_hist.knot_count());
  for (double x : {-0.7, -0.3, 0.0, 0.42, 1.0, 1.69, 2.0}) CHECK(direct(x) == via_hist(x));
}

TEST_CASE("single observation gives a unit-mass tent", "[fp]") {
  const std::vector<double> one{2.0};
  const FrequencyPolygonEstimator fp(one, BinGrid(2.0, 1.0));
  REQUIRE(fp.knot_count() == 3);
  CHECK(fp.knot_abscissa(1) == 2.5);
  CHECK(fp.knot_height(1) == 1.0);
  CHECK(fp(2.5) == 1.0);
  CHECK(fp(2.0) == 0.5);
  CHECK(fp(3.0) == 0.5);
  double mass = 0.0;
  for (std::size_t k = 0; k + 1 < fp.knot_count(); ++k) {
    mass += (fp.knot_abscissa(k + 1) - fp.knot_abscissa(k)) *
            (fp.knot_height(k) + fp.knot_height(k + 1)) / 2.0;
  }
  CHECK(mass == 1.0);
}

TEST_CASE("polygon is nonnegative", "[fp]") {
  const std::vector<double> data{0.0, 0.1, 3.0, 3.05, 6.0};
  const FrequencyPolygonEstimator fp(data, BinGrid(0.0, 0.8));
  for (int i = 0; i <= 200; ++i) CHECK(fp(-1.0 + 0.05 * i) >= 0.0);
}

TEST_CASE("polygon rejects bad inputs", "[fp]") {
  CHECK_THROWS_AS(FrequencyPolygonEstimator(std::vector<double>{}, BinGrid(0.0, 1.0)),
                  std::invalid_argument);
  const std::vector<double> data{0.0, 1.0};
  const FrequencyPolygonEstimator fp(data, BinGrid(0.0, 0.5));
  CHECK_THROWS_AS(fp(std::nan("")), std::invalid_argument);
}
