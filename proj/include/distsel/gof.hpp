#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "distsel/distribution.hpp"
#include "distsel/errors.hpp"
#include "distsel/fit.hpp"
#include "distsel/rng.hpp"

// Goodness-of-fit statistics and p-values. The Kolmogorov-Smirnov statistic
// is the supremum distance between the ECDF and the model CDF; the
// Anderson-Darling statistic weights the tails; the chi-square statistic is
// computed on equal-probability bins by default.

namespace distsel {

// Right-continuous empirical CDF: E_N(y_i) = i/N on sorted data.
struct Ecdf {
  std::vector<double> sorted;

  double height(std::size_t i) const {  // i = 1..N
    return static_cast<double>(i) / static_cast<double>(sorted.size());
  }

  double operator()(double x) const {
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
    return static_cast<double>(it - sorted.begin()) /
           static_cast<double>(sorted.size());
  }
};

inline Ecdf ecdf(std::span<const double> data) {
  if (data.empty()) raise(errc::empty_sample, "ecdf: empty sample");
  Ecdf e{std::vector<double>(data.begin(), data.end())};
  std::sort(e.sorted.begin(), e.sorted.end());
  return e;
}

// D = max_i max(F(y_i) - (i-1)/N, i/N - F(y_i)) over the sorted sample.
inline double ks_statistic(std::span<const double> data, const Dist& model) {
  if (data.empty()) raise(errc::empty_sample, "ks_statistic: empty sample");
  std::vector<double> y(data.begin(), data.end());
  std::sort(y.begin(), y.end());
  const double n = static_cast<double>(y.size());
  double d = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double f = model.cdf(y[i]);
    const double below = f - static_cast<double>(i) / n;
    const double above = static_cast<double>(i + 1) / n - f;
    d = std::max(d, std::max(below, above));
  }
  return d;
}

// Asymptotic Kolmogorov survival function with the Stephens finite-sample
// effective sqrt(N): lambda = (sqrt(n) + 0.12 + 0.11/sqrt(n)) * d,
// Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2).
inline double ks_pvalue(double d, std::size_t n) {
  if (d <= 0.0) return 1.0;
  const double rn = std::sqrt(static_cast<double>(n));
  const double lambda = (rn + 0.12 + 0.11 / rn) * d;
  if (lambda < 1e-6) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 200; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    if (term < 1e-12) break;
    sum += sign * term;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

// A^2 = -N - sum_i ((2i-1)/N) [ln F(y_i) + ln(1 - F(y_{N+1-i}))].
// CDF values are clamped to [1e-15, 1 - 1e-15] so the logs stay finite.
inline double ad_statistic(std::span<const double> data, const Dist& model) {
  if (data.empty()) raise(errc::empty_sample, "ad_statistic: empty sample");
  std::vector<double> y(data.begin(), data.end());
  std::sort(y.begin(), y.end());
  const std::size_t n = y.size();
  const double nd = static_cast<double>(n);
  constexpr double clamp_lo = 1e-15;
  constexpr double clamp_hi = 1.0 - 1e-15;
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = std::clamp(model.cdf(y[i]), clamp_lo, clamp_hi);
  }
  double sum = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    sum += (2.0 * static_cast<double>(i) - 1.0) / nd *
           (std::log(f[i - 1]) + std::log(1.0 - f[n - i]));
  }
  return -nd - sum;
}

namespace detail {

// Marsaglia & Marsaglia's approximation of the asymptotic (case-0) CDF of
// the Anderson-Darling statistic.
inline double ad_asymptotic_cdf(double z) {
  if (z <= 0.0) return 0.0;
  if (z < 2.0) {
    return std::exp(-1.2337141 / z) / std::sqrt(z) *
           (2.00012 +
            (0.247105 -
             (0.0649821 - (0.0347962 - (0.011672 - 0.00168691 * z) * z) * z) *
                 z) *
                z);
  }
  return std::exp(
      -std::exp(1.0776 - (2.30695 -
                          (0.43424 - (0.082433 - (0.008056 - 0.0003146 * z) * z) *
                                         z) *
                              z) *
                             z));
}

}  // namespace detail

// Asymptotic p-value for A^2 under a fully specified null.
inline double ad_pvalue(double a2) {
  return std::clamp(1.0 - detail::ad_asymptotic_cdf(a2), 0.0, 1.0);
}

// Stephens' small-sample multiplier for the normal-theory case; applied
// optionally before the asymptotic lookup.
inline double stephens_normal_multiplier(std::size_t n) {
  const double nd = static_cast<double>(n);
  return 1.0 + 0.75 / nd + 2.25 / (nd * nd);
}

struct Chi2Result {
  double chi2 = 0.0;
  int dof = 0;
  double pvalue = 0.0;
  int bins_used = 0;
  std::vector<double> expected;
  std::vector<double> observed;
};

// Chi-square test on n_bins bins. Equal-probability bins place the edges at
// model quantiles j/n_bins so every expected count is exactly N/n_bins;
// equal-width bins span [min, max] with the outer bins extended to the
// support ends. Adjacent bins are merged until every expected count is at
// least 5; dof = bins - (k_params + 1).
inline Chi2Result chi_square(std::span<const double> data, const Dist& model,
                             int k_params, int n_bins = 100,
                             bool equal_width = false) {
  if (data.empty()) raise(errc::empty_sample, "chi_square: empty sample");
  if (n_bins < 2) raise(errc::too_few_bins, "chi_square: need at least 2 bins");
  const std::size_t n = data.size();
  const double nd = static_cast<double>(n);

  std::vector<double> y(data.begin(), data.end());
  std::sort(y.begin(), y.end());

  // Raw bins, before the >= 5 merge.
  std::vector<double> expected(n_bins);
  std::vector<double> observed(n_bins, 0.0);
  std::vector<double> edges(n_bins - 1);  // interior edges
  if (equal_width) {
    const double lo = y.front(), hi = y.back();
    for (int j = 1; j < n_bins; ++j) {
      edges[j - 1] = lo + (hi - lo) * static_cast<double>(j) /
                              static_cast<double>(n_bins);
    }
    double prev_cdf = 0.0;  // outermost bins reach the support ends
    for (int j = 0; j < n_bins; ++j) {
      const double next_cdf =
          j + 1 < n_bins ? model.cdf(edges[j]) : 1.0;
      expected[j] = nd * (next_cdf - prev_cdf);
      prev_cdf = next_cdf;
    }
  } else {
    for (int j = 1; j < n_bins; ++j) {
      edges[j - 1] =
          model.quantile(static_cast<double>(j) / static_cast<double>(n_bins));
    }
    std::fill(expected.begin(), expected.end(),
              nd / static_cast<double>(n_bins));
  }
  // Observed counts; bins are (e_{j-1}, e_j] with the first reaching -inf.
  std::size_t start = 0;
  for (int j = 0; j < n_bins; ++j) {
    std::size_t stop =
        j + 1 < n_bins
            ? static_cast<std::size_t>(
                  std::upper_bound(y.begin() + start, y.end(), edges[j]) -
                  y.begin())
            : n;
    observed[j] = static_cast<double>(stop - start);
    start = stop;
  }

  // Merge adjacent bins until every expected count reaches 5.
  Chi2Result res;
  double acc_e = 0.0, acc_o = 0.0;
  for (int j = 0; j < n_bins; ++j) {
    acc_e += expected[j];
    acc_o += observed[j];
    if (acc_e >= 5.0) {
      res.expected.push_back(acc_e);
      res.observed.push_back(acc_o);
      acc_e = acc_o = 0.0;
    }
  }
  if (acc_e > 0.0) {
    if (res.expected.empty()) {
      raise(errc::too_few_bins, "chi_square: expected counts never reach 5");
    }
    res.expected.back() += acc_e;
    res.observed.back() += acc_o;
  }

  res.bins_used = static_cast<int>(res.expected.size());
  res.dof = res.bins_used - (k_params + 1);
  if (res.dof < 1) {
    raise(errc::too_few_bins,
          "chi_square: only " + std::to_string(res.bins_used) +
              " bins after merging, dof would be " + std::to_string(res.dof));
  }
  for (int j = 0; j < res.bins_used; ++j) {
    const double d = res.observed[j] - res.expected[j];
    res.chi2 += d * d / res.expected[j];
  }
  res.pvalue = gamma_q(0.5 * res.dof, 0.5 * res.chi2);
  return res;
}

enum class PValueMode { asymptotic, bootstrap };

struct GofConfig {
  int n_bins = 100;
  bool equal_width_bins = false;
  PValueMode pvalue_mode = PValueMode::asymptotic;
  int bootstrap_b = 200;
  std::uint64_t seed = 0;
  bool ad_stephens = false;  // apply the normal-case multiplier where defined
  FitConfig fit;             // used to refit bootstrap replicates
};

struct GofResult {
  double ks_d = 0.0;
  double ks_p = 0.0;
  double ad_a2 = 0.0;
  double ad_p = 0.0;
  double chi2 = 0.0;
  int chi2_dof = 0;
  double chi2_p = 0.0;
  int n_bins_used = 0;
  PValueMode p_mode = PValueMode::asymptotic;

  bool operator==(const GofResult&) const = default;
};

// Parametric bootstrap for KS and AD: resample from the fitted model, refit
// the same family, recompute both statistics against the refitted model.
// Each replicate gets an independent seed-derived stream, so aggregation is
// order-independent.
struct BootstrapPvalues {
  double ks_p = 0.0;
  double ad_p = 0.0;
};

inline BootstrapPvalues bootstrap_pvalues(const FittedModel& fitted,
                                          double ks_obs, double ad_obs,
                                          const GofConfig& config) {
  const Dist model(fitted.family, fitted.params);
  int ks_ge = 0, ad_ge = 0;
  for (int b = 0; b < config.bootstrap_b; ++b) {
    const std::uint64_t seed =
        derive_seed(config.seed, hash_tag("bootstrap"),
                    static_cast<std::uint64_t>(b));
    const auto replicate = model.sample(fitted.n, seed);
    try {
      FitConfig fit_cfg = config.fit;
      fit_cfg.seed = derive_seed(seed, hash_tag("refit"));
      const FittedModel refit =
          fit_mle(fitted.family, std::span<const double>(replicate), fit_cfg);
      const Dist refit_dist(refit.family, refit.params);
      if (ks_statistic(replicate, refit_dist) >= ks_obs) ++ks_ge;
      if (ad_statistic(replicate, refit_dist) >= ad_obs) ++ad_ge;
    } catch (const Error&) {
      // A replicate whose refit degenerates counts as an exceedance, which
      // can only push the p-value up.
      ++ks_ge;
      ++ad_ge;
    }
  }
  const double b = static_cast<double>(config.bootstrap_b);
  return {static_cast<double>(ks_ge) / b, static_cast<double>(ad_ge) / b};
}

inline GofResult evaluate_gof(std::span<const double> data,
                              const FittedModel& fitted,
                              const GofConfig& config = {}) {
  const Dist model(fitted.family, fitted.params);
  GofResult res;
  res.ks_d = ks_statistic(data, model);
  res.ad_a2 = ad_statistic(data, model);
  res.p_mode = config.pvalue_mode;

  const auto chi = chi_square(data, model, fitted.k_params, config.n_bins,
                              config.equal_width_bins);
  res.chi2 = chi.chi2;
  res.chi2_dof = chi.dof;
  res.chi2_p = chi.pvalue;
  res.n_bins_used = chi.bins_used;

  if (config.pvalue_mode == PValueMode::bootstrap) {
    const auto boot = bootstrap_pvalues(fitted, res.ks_d, res.ad_a2, config);
    res.ks_p = boot.ks_p;
    res.ad_p = boot.ad_p;
  } else {
    res.ks_p = ks_pvalue(res.ks_d, data.size());
    double a2 = res.ad_a2;
    if (config.ad_stephens && (fitted.family == FamilyId::normal ||
                               fitted.family == FamilyId::lognorm)) {
      a2 *= stephens_normal_multiplier(data.size());
    }
    res.ad_p = ad_pvalue(a2);
  }
  return res;
}

}  // namespace distsel
