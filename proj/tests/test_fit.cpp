#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <span>
#include <vector>

#include "distsel/fit.hpp"
#include "oracles.hpp"

using namespace distsel;

namespace {

std::span<const double> as_span(const std::vector<double>& v) {
  return std::span<const double>(v);
}

}  // namespace

TEST_CASE("normal fit matches the closed-form MLE", "[fit]") {
  const Dist truth(FamilyId::normal, {{}, 5.0, 2.0});
  const auto data = truth.sample(5000, 7);
  const auto fit = fit_mle(FamilyId::normal, as_span(data));

  double mean = 0.0;
  for (double v : data) mean += v;
  mean /= static_cast<double>(data.size());
  double ss = 0.0;
  for (double v : data) ss += (v - mean) * (v - mean);
  const double sd_mle = std::sqrt(ss / static_cast<double>(data.size()));

  CHECK(std::abs(fit.params.loc - mean) < 0.1);
  CHECK(std::abs(fit.params.scale - sd_mle) < 0.1);
  CHECK(fit.converged);
  CHECK(fit.k_params == 2);
}

TEST_CASE("weibull shape tracks the profile-likelihood oracle", "[fit]") {
  const Dist truth(FamilyId::weibull, {{1.5}, 0.0, 3.0});
  const auto data = truth.sample(5000, 8);
  const auto fit = fit_mle(FamilyId::weibull, as_span(data));
  const double k_oracle = oracles::weibull_profile_shape(data);
  CHECK(std::abs(fit.params.shapes[0] - k_oracle) < 0.05 * k_oracle);
}

TEST_CASE("all-equal sample is degenerate", "[fit]") {
  const std::vector<double> data(20, 3.25);
  CHECK_THROWS_MATCHES(fit_mle(FamilyId::normal, as_span(data)), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::degenerate_sample;
                       }));
}

TEST_CASE("log-likelihood is recomputable from the params", "[fit]") {
  const Dist truth(FamilyId::gamma, {{2.0}, 1.0, 3.0});
  const auto data = truth.sample(500, 9);
  const auto fit = fit_mle(FamilyId::gamma, as_span(data));
  const double ll = log_likelihood(Dist(fit.family, fit.params), as_span(data));
  CHECK(fit.log_likelihood == Catch::Approx(ll).margin(1e-9));
}

TEST_CASE("initial parameters: normal is the exact moment match", "[fit]") {
  const std::vector<double> data = {1.0, 4.0, 2.0, 8.0, 5.0};
  const auto p = initial_params(FamilyId::normal, as_span(data));
  const auto s = summarize(as_span(data));
  CHECK(p.loc == Catch::Approx(s.mean).epsilon(1e-12));
  CHECK(p.scale == Catch::Approx(s.sd).epsilon(1e-12));
}

TEST_CASE("initial parameters: beta covers the observed range", "[fit]") {
  // Extremes shaped like the Cuttack record: min 0, max 506.19.
  std::vector<double> data = {0.0, 12.0, 55.0, 101.0, 180.0, 340.0, 506.19};
  const auto p = initial_params(FamilyId::beta, as_span(data));
  CHECK(p.loc < 0.0);
  CHECK(p.loc + p.scale > 506.19);
  CHECK(p.shapes[0] > 0.0);
  CHECK(p.shapes[1] > 0.0);
}

TEST_CASE("initial parameters: gamma shape near 1 on exponential data",
          "[fit]") {
  const Dist truth(FamilyId::gamma, {{1.0}, 0.0, 1.0});
  const auto data = truth.sample(5000, 10);
  const auto p = initial_params(FamilyId::gamma, as_span(data));
  CHECK(std::abs(p.shapes[0] - 1.0) < 0.2);
}

TEST_CASE("optimization never loses likelihood", "[fit]") {
  for (FamilyId fam : {FamilyId::gamma, FamilyId::gumbel, FamilyId::beta,
                       FamilyId::t, FamilyId::invgauss}) {
    const Dist truth(fam, initial_params(fam, as_span(std::vector<double>{
                              0.5, 1.5, 2.5, 4.0, 7.0, 9.5, 13.0, 21.0})));
    const auto data = truth.sample(400, 11 + static_cast<int>(fam));
    const auto p0 = initial_params(fam, as_span(data));
    const double ll0 = log_likelihood(Dist(fam, p0), as_span(data));
    const auto fit = fit_mle(fam, as_span(data));
    INFO("family " << family_name(fam));
    CHECK(fit.log_likelihood >= ll0 - 1e-9);
  }
}

TEST_CASE("fit is scale-equivariant", "[fit]") {
  const Dist truth(FamilyId::gamma, {{2.0}, 1.0, 3.0});
  const auto data = truth.sample(500, 12);
  const double a = 3.7;
  std::vector<double> scaled(data);
  for (double& v : scaled) v *= a;

  const auto fit0 = fit_mle(FamilyId::gamma, as_span(data));
  const auto fit1 = fit_mle(FamilyId::gamma, as_span(scaled));
  const double n = static_cast<double>(data.size());

  CHECK(fit1.params.shapes[0] ==
        Catch::Approx(fit0.params.shapes[0]).epsilon(1e-4));
  CHECK(fit1.params.loc == Catch::Approx(a * fit0.params.loc)
                               .margin(1e-4 * a * fit0.params.scale));
  CHECK(fit1.params.scale == Catch::Approx(a * fit0.params.scale).epsilon(1e-4));
  CHECK(fit1.log_likelihood ==
        Catch::Approx(fit0.log_likelihood - n * std::log(a)).margin(1e-3));
}

TEST_CASE("sampling a fitted model and refitting recovers it", "[fit][slow]") {
  struct Case {
    FamilyId fam;
    ParamVector truth;
  };
  const std::vector<Case> cases = {
      {FamilyId::normal, {{}, 5.0, 2.0}},
      {FamilyId::lognorm, {{0.5}, 1.0, 3.0}},
      {FamilyId::gamma, {{2.0}, 10.0, 3.0}},
      {FamilyId::invgauss, {{1.5}, 0.0, 3.0}},
      {FamilyId::genextreme, {{0.2}, 10.0, 2.0}},
      {FamilyId::gumbel, {{}, 4.0, 1.5}},
      {FamilyId::t, {{6.0}, 2.0, 1.2}},
      {FamilyId::beta, {{2.0, 3.0}, 1.0, 5.0}},
      {FamilyId::weibull, {{1.5}, 0.0, 3.0}},
      {FamilyId::f, {{6.0, 12.0}, 0.0, 2.0}},
  };
  for (const auto& c : cases) {
    FittedModel model;
    model.family = c.fam;
    model.params = c.truth;
    const auto data =
        Dist(c.fam, c.truth).sample(10000, 7000 + static_cast<int>(c.fam));
    const auto refit = fit_mle(c.fam, as_span(data));
    INFO("family " << family_name(c.fam));
    for (std::size_t i = 0; i < c.truth.shapes.size(); ++i) {
      CHECK(std::abs(refit.params.shapes[i] - c.truth.shapes[i]) <=
            0.10 * std::abs(c.truth.shapes[i]));
    }
    CHECK(std::abs(refit.params.loc - c.truth.loc) <= 0.05 * c.truth.scale);
    CHECK(std::abs(refit.params.scale - c.truth.scale) <= 0.05 * c.truth.scale);
  }
}

TEST_CASE("raw support freezes the location", "[fit]") {
  const Dist truth(FamilyId::gamma, {{2.0}, 0.0, 3.0});
  auto data = truth.sample(400, 13);
  for (double& v : data) v = std::max(v, 1e-3);  // keep strictly positive
  FitConfig cfg;
  cfg.raw_support = true;
  const auto fit = fit_mle(FamilyId::gamma, as_span(data), cfg);
  CHECK(fit.params.loc == 0.0);
  CHECK(fit.k_params == 2);
  CHECK(free_param_count(FamilyId::gamma, true) == 2);
  CHECK(free_param_count(FamilyId::gamma, false) == 3);
  CHECK(free_param_count(FamilyId::beta, false) == 4);
  CHECK(free_param_count(FamilyId::normal, true) == 2);
}
