#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "distsel/lmoments.hpp"
#include "distsel/rng.hpp"
#include "oracles.hpp"

using namespace distsel;

namespace {

std::span<const double> as_span(const std::vector<double>& v) {
  return std::span<const double>(v);
}

}  // namespace

TEST_CASE("L-moments of {1,2,3,4}", "[lmoments]") {
  const std::vector<double> x = {1.0, 2.0, 3.0, 4.0};
  const auto m = sample_lmoments(as_span(x));
  // b1 = (1/4)[(1/3)*2 + (2/3)*3 + 1*4], l2 = 2 b1 - b0.
  CHECK(m.l1 == Catch::Approx(2.5).epsilon(1e-12));
  CHECK(m.l2 == Catch::Approx(0.83333).margin(1e-5));
}

TEST_CASE("degenerate and undersized samples are rejected", "[lmoments]") {
  const std::vector<double> flat = {3.0, 3.0, 3.0, 3.0};
  CHECK_THROWS_MATCHES(sample_lmoments(as_span(flat)), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::degenerate_sample;
                       }));
  const std::vector<double> three = {1.0, 2.0, 3.0};
  CHECK_THROWS_MATCHES(sample_lmoments(as_span(three)), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::sample_too_small;
                       }));
}

TEST_CASE("l1 is exactly the sample mean", "[lmoments]") {
  UniformSource u(31);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x;
    const int n = 4 + static_cast<int>(u.next() * 20);
    for (int i = 0; i < n; ++i) x.push_back(100.0 * u.next());
    const auto m = sample_lmoments(as_span(x));
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    CHECK(m.l1 == Catch::Approx(mean).margin(1e-12));
  }
}

TEST_CASE("L-moments match the order-statistic brute force", "[lmoments]") {
  UniformSource u(32);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 4 + static_cast<int>(u.next() * 9.0);  // 4..12
    std::vector<double> x;
    for (int i = 0; i < n; ++i) x.push_back(50.0 * u.next());
    const auto m = sample_lmoments(as_span(x));
    const auto b = oracles::lmoments_brute(x);
    CHECK(m.l1 == Catch::Approx(b.l1).margin(1e-9));
    CHECK(m.l2 == Catch::Approx(b.l2).margin(1e-9));
    CHECK(m.l3 == Catch::Approx(b.l3).margin(1e-9));
    CHECK(m.l4 == Catch::Approx(b.l4).margin(1e-9));
  }
}

TEST_CASE("shift and scale equivariance", "[lmoments]") {
  const std::vector<double> x = {0.0, 2.5, 7.0, 11.0, 18.0, 31.0, 44.5};
  const auto base = sample_lmoments(as_span(x));

  const double c = 13.75;
  std::vector<double> shifted(x);
  for (double& v : shifted) v += c;
  const auto sh = sample_lmoments(as_span(shifted));
  CHECK(sh.l1 == Catch::Approx(base.l1 + c).margin(1e-10));
  CHECK(sh.l2 == Catch::Approx(base.l2).margin(1e-10));
  CHECK(sh.tau3 == Catch::Approx(base.tau3).margin(1e-10));
  CHECK(sh.tau4 == Catch::Approx(base.tau4).margin(1e-10));

  const double a = 3.5;
  std::vector<double> scaled(x);
  for (double& v : scaled) v *= a;
  const auto sc = sample_lmoments(as_span(scaled));
  CHECK(sc.l1 == Catch::Approx(a * base.l1).margin(1e-10));
  CHECK(sc.l2 == Catch::Approx(a * base.l2).margin(1e-10));
  CHECK(sc.tau3 == Catch::Approx(base.tau3).margin(1e-10));
  CHECK(sc.tau4 == Catch::Approx(base.tau4).margin(1e-10));
}

TEST_CASE("ratio bounds hold on random data", "[lmoments]") {
  std::mt19937_64 rng(33);
  std::lognormal_distribution<double> logn(2.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x;
    for (int i = 0; i < 50; ++i) x.push_back(logn(rng));
    const auto m = sample_lmoments(as_span(x));
    CHECK(m.l2 >= 0.0);
    CHECK(std::abs(m.tau3) < 1.0);
    CHECK(m.tau4 < 1.0);
  }
}
