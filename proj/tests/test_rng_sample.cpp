#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

#include <bagdens/rng.hpp>
#include <bagdens/sample.hpp>

using bagdens::RngStream;

TEST_CASE("hash_label matches published FNV-1a vectors", "[rng]") {
  CHECK(bagdens::hash_label("") == 0xcbf29ce484222325ULL);
  CHECK(bagdens::hash_label("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(bagdens::hash_label("normal|hist|100") != bagdens::hash_label("normal|hist|1000"));
}

TEST_CASE("equal keys give identical sequences", "[rng]") {
  RngStream a(123456789);
  RngStream b(123456789);
  for (int i = 0; i < 100; ++i) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("uniform01 stays in [0, 1) and has sane mean", "[rng]") {
  RngStream s(2718281828);
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = s.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / 10000.0 - 0.5) < 0.01);
}

TEST_CASE("uniform maps to the requested interval", "[rng]") {
  RngStream s(42);
  RngStream clone(42);
  for (int i = 0; i < 50; ++i) {
    const double u = clone.uniform01();
    const double v = s.uniform(2.0, 5.0);
    CHECK(v == 2.0 + 3.0 * u);
  }
}

TEST_CASE("derive is independent of parent draw history", "[rng]") {
  RngStream fresh(777);
  RngStream consumed(777);
  for (int i = 0; i < 17; ++i) consumed.uniform01();
  RngStream child_of_fresh = fresh.derive(3);
  RngStream child_of_consumed = consumed.derive(3);
  for (int i = 0; i < 20; ++i)
    REQUIRE(child_of_fresh.next_u64() == child_of_consumed.next_u64());
}

TEST_CASE("sibling child streams differ", "[rng]") {
  const RngStream parent(31415);
  RngStream c1 = parent.derive(1);
  RngStream c2 = parent.derive(2);
  int same = 0;
  for (int i = 0; i < 16; ++i)
    if (c1.next_u64() == c2.next_u64()) ++same;
  CHECK(same == 0);
}

TEST_CASE("normal consumes exactly two uniforms", "[rng]") {
  RngStream a(5150);
  RngStream b(5150);
  a.normal();
  b.uniform01();
  b.uniform01();
  CHECK(a.uniform01() == b.uniform01());
}

TEST_CASE("normal follows the Box-Muller transform of its two uniforms", "[rng]") {
  RngStream s(8675309);
  RngStream clone(8675309);
  const double u1 = clone.uniform01();
  const double u2 = clone.uniform01();
  const double expected =
      std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(6.283185307179586476925286766559 * u2);
  CHECK(s.normal() == expected);
}

TEST_CASE("normal draws have standard moments", "[rng]") {
  RngStream s(99991);
  double sum = 0.0;
  double sum_sq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double z = s.normal();
    sum += z;
    sum_sq += z * z;
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  CHECK(std::abs(mean) < 0.03);
  CHECK(std::abs(var - 1.0) < 0.05);
}

TEST_CASE("check_sample enforces size and finiteness", "[sample]") {
  const std::vector<double> ok{1.0, 2.0};
  CHECK_NOTHROW(bagdens::check_sample(ok));
  CHECK_NOTHROW(bagdens::check_sample(ok, 2));
  CHECK_THROWS_AS(bagdens::check_sample(ok, 3), std::invalid_argument);
  CHECK_THROWS_AS(bagdens::check_sample(std::vector<double>{}), std::invalid_argument);
  const std::vector<double> with_nan{1.0, std::nan("")};
  CHECK_THROWS_AS(bagdens::check_sample(with_nan), std::invalid_argument);
  const std::vector<double> with_inf{1.0, std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(bagdens::check_sample(with_inf), std::invalid_argument);
}

TEST_CASE("summary helpers compute the textbook values", "[sample]") {
  const std::vector<double> data{4.0, 1.0, 3.0, 2.0};
  CHECK(bagdens::sample_min(data) == 1.0);
  CHECK(bagdens::sample_max(data) == 4.0);
  CHECK(bagdens::sample_mean(data) == 2.5);
  CHECK_THAT(bagdens::sample_sd(data),
             Catch::Matchers::WithinRel(std::sqrt(5.0 / 3.0), 1e-14));
  CHECK_THROWS_AS(bagdens::sample_sd(std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("sorted_copy sorts without touching the input", "[sample]") {
  const std::vector<double> data{3.0, 1.0, 2.0};
  const std::vector<double> sorted = bagdens::sorted_copy(data);
  CHECK(sorted == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(data == std::vector<double>{3.0, 1.0, 2.0});
}

TEST_CASE("unique_weighted collapses runs into multiplicities", "[sample]") {
  const std::vector<double> sorted{1.0, 1.0, 2.0, 3.0, 3.0, 3.0};
  std::vector<double> values;
  std::vector<double> weights;
  bagdens::unique_weighted(sorted, values, weights);
  CHECK(values == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(weights == std::vector<double>{2.0, 1.0, 3.0});
}
