#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "distsel/series.hpp"

using namespace distsel;

TEST_CASE("summary of {0,1} matches hand arithmetic", "[series]") {
  const std::vector<double> x = {0.0, 1.0};
  const auto s = summarize(std::span<const double>(x));
  CHECK(s.mean == Catch::Approx(0.5));
  CHECK(s.sd == Catch::Approx(0.70711).margin(1e-5));
  CHECK(s.cv == Catch::Approx(1.41421).margin(1e-5));
  CHECK(s.min == 0.0);
  CHECK(s.max == 1.0);
}

TEST_CASE("constant sample is degenerate", "[series]") {
  const std::vector<double> x = {5.0, 5.0, 5.0};
  CHECK_THROWS_MATCHES(summarize(std::span<const double>(x)), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::degenerate_sample;
                       }));
}

TEST_CASE("single observation rejected", "[series]") {
  const std::vector<double> x = {3.0};
  CHECK_THROWS_AS(summarize(std::span<const double>(x)), Error);
}

TEST_CASE("adjusted estimators match a direct evaluation", "[series]") {
  // Independent evaluation of the adjusted Fisher-Pearson skewness and the
  // sample excess kurtosis on a small fixed sample.
  const std::vector<double> x = {1.0, 2.0, 3.0, 4.0, 6.0, 9.0};
  const double n = 6.0;
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : x) {
    m2 += std::pow(v - mean, 2) / n;
    m3 += std::pow(v - mean, 3) / n;
    m4 += std::pow(v - mean, 4) / n;
  }
  const double g1 = m3 / std::pow(m2, 1.5);
  const double g2 = m4 / (m2 * m2) - 3.0;
  const double skew = g1 * std::sqrt(n * (n - 1.0)) / (n - 2.0);
  const double kurt =
      ((n + 1.0) * g2 + 6.0) * (n - 1.0) / ((n - 2.0) * (n - 3.0));

  const auto s = summarize(std::span<const double>(x));
  CHECK(s.skewness == Catch::Approx(skew).epsilon(1e-12));
  CHECK(s.kurtosis == Catch::Approx(kurt).epsilon(1e-12));
}

TEST_CASE("summarize is permutation invariant", "[series]") {
  std::vector<double> x = {3.1, 0.0, 12.5, 7.7, 0.4, 5.0, 2.2, 9.9};
  const auto base = summarize(std::span<const double>(x));
  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(x.begin(), x.end(), rng);
    const auto s = summarize(std::span<const double>(x));
    CHECK(s == base);
  }
}

TEST_CASE("positive scaling moves mm statistics and fixes ratios", "[series]") {
  const std::vector<double> x = {0.0, 3.5, 8.0, 1.25, 6.0, 11.0, 2.0};
  const double a = 4.25;
  std::vector<double> ax(x);
  for (double& v : ax) v *= a;
  const auto s0 = summarize(std::span<const double>(x));
  const auto s1 = summarize(std::span<const double>(ax));
  CHECK(s1.min == Catch::Approx(a * s0.min).margin(1e-10));
  CHECK(s1.max == Catch::Approx(a * s0.max).margin(1e-10));
  CHECK(s1.mean == Catch::Approx(a * s0.mean).margin(1e-10));
  CHECK(s1.sd == Catch::Approx(a * s0.sd).margin(1e-10));
  CHECK(s1.cv == Catch::Approx(s0.cv).margin(1e-10));
  CHECK(s1.skewness == Catch::Approx(s0.skewness).margin(1e-10));
  CHECK(s1.kurtosis == Catch::Approx(s0.kurtosis).margin(1e-10));
}
