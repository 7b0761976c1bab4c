#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "distsel/criteria.hpp"

using namespace distsel;

TEST_CASE("AIC formula", "[criteria]") {
  CHECK(aic(0.0, 0) == 0.0);
  CHECK(aic(-100.0, 3) == 206.0);
  CHECK(aic(-50.0, 4) - aic(-50.0, 3) == Catch::Approx(2.0));
}

TEST_CASE("AICc standard and paper-literal forms", "[criteria]") {
  CHECK(aicc(0.0, 2, 100) == Catch::Approx(4.0 + 12.0 / 97.0).epsilon(1e-12));
  CHECK(aicc_paper_literal(0.0, 2, 100) ==
        Catch::Approx(12.0 / 97.0).epsilon(1e-12));
  // The literal form sits exactly 2K below the standard one.
  for (int k = 1; k <= 5; ++k) {
    CHECK(aicc_paper_literal(-37.5, k, 200) ==
          aicc(-37.5, k, 200) - 2.0 * k);
  }
  // AICc = AIC + 2K(K+1)/(N-K-1), with the correction vanishing as N grows.
  for (std::size_t n : {50u, 500u, 5000u, 50000u}) {
    CHECK(aicc(-10.0, 3, n) == aic(-10.0, 3) + aicc_correction(3, n));
    CHECK(aicc_correction(3, n) ==
          Catch::Approx(24.0 / (static_cast<double>(n) - 4.0)).epsilon(1e-12));
  }
  CHECK(aicc_correction(3, 100000000) < 1e-6);
  CHECK_THROWS_MATCHES(aicc(0.0, 5, 6), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::sample_too_small;
                       }));
}

TEST_CASE("BIC formula", "[criteria]") {
  CHECK(bic(0.0, 0, 10) == 0.0);
  CHECK(bic(0.0, 1, static_cast<std::size_t>(std::round(std::exp(2.0)))) ==
        Catch::Approx(2.0).margin(0.1));
  // For n >= 8 the BIC penalty exceeds the AIC penalty.
  for (std::size_t n : {8u, 100u, 1224u}) {
    CHECK(bic(0.0, 3, n) > aic(0.0, 3));
  }
}

TEST_CASE("argmin is invariant to constant log-likelihood shifts",
          "[criteria]") {
  std::vector<FittedModel> models(4);
  const double lls[] = {-500.0, -480.0, -495.0, -520.0};
  const int ks[] = {2, 4, 3, 2};
  for (int i = 0; i < 4; ++i) {
    models[i].log_likelihood = lls[i];
    models[i].k_params = ks[i];
    models[i].n = 300;
  }
  const auto base = score_models(models);
  std::size_t argmin0 = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (base[i].bic < base[argmin0].bic) argmin0 = i;
  }
  for (auto& m : models) m.log_likelihood += 17.3;
  const auto shifted = score_models(models);
  std::size_t argmin1 = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (shifted[i].bic < shifted[argmin1].bic) argmin1 = i;
  }
  CHECK(argmin0 == argmin1);
}

TEST_CASE("delta scores vanish exactly at the per-station minimum",
          "[criteria]") {
  std::vector<FittedModel> models(5);
  for (int i = 0; i < 5; ++i) {
    models[i].log_likelihood = -100.0 - 7.0 * i;
    models[i].k_params = 2 + i % 3;
    models[i].n = 250;
  }
  const auto scores = score_models(models);
  int zero_aicc = 0, zero_bic = 0;
  for (const auto& s : scores) {
    CHECK(s.delta_aicc >= 0.0);
    CHECK(s.delta_bic >= 0.0);
    if (s.delta_aicc == 0.0) ++zero_aicc;
    if (s.delta_bic == 0.0) ++zero_bic;
  }
  CHECK(zero_aicc >= 1);
  CHECK(zero_bic >= 1);
}
