#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "distsel/distribution.hpp"
#include "distsel/errors.hpp"
#include "distsel/nelder_mead.hpp"
#include "distsel/params.hpp"
#include "distsel/rng.hpp"
#include "distsel/series.hpp"

// Maximum-likelihood fitting. The simplex search runs over unconstrained
// coordinates: positive parameters are optimized as logs, and for families
// with bounded support the location is reparameterized so that every
// observation stays strictly inside the support.

namespace distsel {

struct FitConfig {
  int max_iter = 2000;
  double tol = 1e-8;        // relative log-likelihood spread at convergence
  bool raw_support = false; // freeze loc at 0 for positive-support families
  std::uint64_t seed = 0;   // stream for the perturbed restart
};

struct FittedModel {
  FamilyId family = FamilyId::normal;
  ParamVector params;
  double log_likelihood = 0.0;
  int k_params = 0;  // free parameters actually optimized
  std::size_t n = 0;
  bool converged = false;

  bool operator==(const FittedModel&) const = default;
};

inline bool positive_support_family(FamilyId family) {
  switch (family) {
    case FamilyId::lognorm:
    case FamilyId::gamma:
    case FamilyId::invgauss:
    case FamilyId::weibull:
    case FamilyId::f:
    case FamilyId::beta:
      return true;
    default:
      return false;
  }
}

inline int free_param_count(FamilyId family, bool raw_support) {
  int k = shape_count(family) + 2;
  if (raw_support && positive_support_family(family)) k -= 1;
  return k;
}

inline double log_likelihood(const Dist& dist, std::span<const double> data) {
  double ll = 0.0;
  for (double x : data) ll += dist.log_pdf(x);
  return ll;
}

namespace detail {

struct DataStats {
  std::size_t n = 0;
  double mean = 0.0, sd = 0.0, var = 0.0;
  double min = 0.0, max = 0.0;
  double excess_kurtosis = 0.0;
  double resolution = 0.0;  // smallest positive gap between distinct values
};

inline DataStats data_stats(std::span<const double> data) {
  DataStats s;
  s.n = data.size();
  s.min = s.max = data[0];
  double sum = 0.0;
  for (double v : data) {
    sum += v;
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
  }
  s.mean = sum / static_cast<double>(s.n);
  double m2 = 0.0, m4 = 0.0;
  for (double v : data) {
    const double d = v - s.mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  s.var = m2 / static_cast<double>(s.n - 1);
  s.sd = std::sqrt(s.var);
  const double m2n = m2 / static_cast<double>(s.n);
  s.excess_kurtosis =
      m2n > 0.0 ? m4 / static_cast<double>(s.n) / (m2n * m2n) - 3.0 : 0.0;

  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  s.resolution = s.max - s.min;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const double gap = sorted[i] - sorted[i - 1];
    if (gap > 0.0) s.resolution = std::min(s.resolution, gap);
  }
  return s;
}

// Margin keeping the support boundary strictly below (above) the data.
inline double support_margin(const DataStats& s) {
  return 1e-6 * (s.max - s.min);
}

// Maps between ParamVector and the unconstrained simplex coordinates.
// Layout: shapes..., [loc], scale-like coordinate(s).
struct FitTransform {
  FamilyId family;
  bool loc_free = true;
  bool shifted = false;       // loc enters as lo_bound - exp(u)
  double lo_bound = 0.0;      // min(x) - margin
  double hi_bound = 0.0;      // max(x) + margin (beta only)

  FitTransform(FamilyId fam, const DataStats& s, bool raw_support)
      : family(fam) {
    const double margin = support_margin(s);
    lo_bound = s.min - margin;
    hi_bound = s.max + margin;
    if (positive_support_family(fam)) {
      shifted = true;
      loc_free = !raw_support;
    }
  }

  int dim() const {
    return shape_count(family) + (loc_free ? 1 : 0) + 1;
  }

  std::vector<double> encode(const ParamVector& p) const {
    std::vector<double> u;
    u.reserve(dim());
    for (double s : p.shapes) {
      u.push_back(family == FamilyId::genextreme ? s : std::log(s));
    }
    if (family == FamilyId::beta) {
      if (loc_free) u.push_back(std::log(lo_bound - p.loc));
      u.push_back(std::log(p.loc + p.scale - hi_bound));
      return u;
    }
    if (loc_free) {
      u.push_back(shifted ? std::log(lo_bound - p.loc) : p.loc);
    }
    u.push_back(std::log(p.scale));
    return u;
  }

  ParamVector decode(std::span<const double> u) const {
    ParamVector p;
    const int ns = shape_count(family);
    p.shapes.resize(ns);
    for (int i = 0; i < ns; ++i) {
      p.shapes[i] =
          family == FamilyId::genextreme ? u[i] : std::exp(u[i]);
    }
    std::size_t j = ns;
    if (family == FamilyId::beta) {
      p.loc = loc_free ? lo_bound - std::exp(u[j++]) : 0.0;
      const double upper = hi_bound + std::exp(u[j]);
      p.scale = upper - p.loc;
      return p;
    }
    if (loc_free) {
      p.loc = shifted ? lo_bound - std::exp(u[j]) : u[j];
      ++j;
    }
    p.scale = std::exp(u[j]);
    return p;
  }
};

}  // namespace detail

// Moment-matched starting point; always satisfies the family invariants and
// keeps every observation strictly inside the support.
inline ParamVector initial_params(FamilyId family, std::span<const double> data,
                                  bool raw_support = false) {
  if (data.size() < 2) {
    raise(errc::sample_too_small, "initial_params: need at least 2 points");
  }
  const auto s = detail::data_stats(data);
  if (s.sd == 0.0) {
    raise(errc::degenerate_sample, "initial_params: sample has zero variance");
  }

  const double margin = detail::support_margin(s);
  const bool shift = positive_support_family(family) && !raw_support;
  // Starting location for shifted families: slightly below the sample
  // minimum so moment inversion sees strictly positive data.
  const double loc0 = shift ? s.min - std::max(margin, 0.05 * s.sd) : 0.0;
  const double mean_y = s.mean - loc0;

  ParamVector p;
  switch (family) {
    case FamilyId::normal:
      p = {{}, s.mean, s.sd};
      break;
    case FamilyId::gumbel: {
      const double scale = s.sd * std::sqrt(6.0) / kPi;
      p = {{}, s.mean - kEulerGamma * scale, scale};
      break;
    }
    case FamilyId::genextreme: {
      const double scale = s.sd * std::sqrt(6.0) / kPi;
      p = {{0.1}, s.mean - kEulerGamma * scale, scale};
      break;
    }
    case FamilyId::t: {
      double v = 10.0;
      if (s.excess_kurtosis > 0.5) {
        v = std::clamp(4.0 + 6.0 / s.excess_kurtosis, 2.5, 100.0);
      }
      p = {{v}, s.mean, s.sd * std::sqrt((v - 2.0) / v)};
      break;
    }
    case FamilyId::lognorm: {
      const double s2 = std::log1p(s.var / (mean_y * mean_y));
      p = {{std::sqrt(s2)}, loc0, mean_y * std::exp(-0.5 * s2)};
      break;
    }
    case FamilyId::gamma: {
      const double k = std::max(mean_y * mean_y / s.var, 0.05);
      p = {{k}, loc0, s.var / mean_y};
      break;
    }
    case FamilyId::weibull: {
      const double cv = s.sd / mean_y;
      const double k = std::clamp(std::pow(cv, -1.086), 0.1, 50.0);
      p = {{k}, loc0, mean_y / std::tgamma(1.0 + 1.0 / k)};
      break;
    }
    case FamilyId::invgauss: {
      const double m = std::max(s.var / (mean_y * mean_y), 1e-3);
      p = {{m}, loc0, mean_y / m};
      break;
    }
    case FamilyId::f: {
      const double d2 = 10.0;
      p = {{5.0, d2}, loc0, mean_y * (d2 - 2.0) / d2};
      break;
    }
    case FamilyId::beta: {
      const double pad = std::max(margin, 0.01 * (s.max - s.min));
      const double lo = raw_support ? 0.0 : s.min - pad;
      const double hi = s.max + pad;
      const double scale = hi - lo;
      const double mz = (s.mean - lo) / scale;
      const double vz = s.var / (scale * scale);
      const double t = std::max(mz * (1.0 - mz) / vz - 1.0, 0.1);
      p = {{std::max(mz * t, 0.05), std::max((1.0 - mz) * t, 0.05)}, lo,
           scale};
      break;
    }
  }
  validate_params(family, p);
  return p;
}

inline ParamVector initial_params(FamilyId family, const StationSeries& series,
                                  bool raw_support = false) {
  const auto v = series.values();
  return initial_params(family, std::span<const double>(v), raw_support);
}

namespace detail {

inline constexpr double kPenalty = 1e100;

// Search box relative to the data scale. Wide enough for any plausible
// optimum while keeping the simplex away from the overflow corners of the
// parameter space. The scale floor is tied to the data's measurement
// resolution: records with repeated values (0.0 mm dry months) otherwise
// admit unbounded likelihood spikes at scales the data cannot resolve.
struct SaneBox {
  double scale_lo, scale_hi;
  double loc_lo, loc_hi;

  explicit SaneBox(const DataStats& s)
      : scale_lo(std::max(1e-8 * s.sd, 0.5 * s.resolution)),
        scale_hi(1e8 * s.sd),
        loc_lo(s.mean - 1e6 * s.sd),
        loc_hi(s.mean + 1e6 * s.sd) {}
};

inline bool within_box(FamilyId family, const ParamVector& p,
                       const SaneBox& box) {
  if (p.scale < box.scale_lo || p.scale > box.scale_hi) return false;
  if (p.loc < box.loc_lo || p.loc > box.loc_hi) return false;
  for (double s : p.shapes) {
    if (family == FamilyId::genextreme) {
      if (std::abs(s) > 20.0) return false;
    } else if (s < 1e-6 || s > 1e6) {
      return false;
    }
  }
  return true;
}

template <class Transform>
double negative_log_likelihood(FamilyId family, const Transform& tr,
                               std::span<const double> data,
                               std::span<const double> u, const SaneBox& box) {
  const ParamVector p = tr.decode(u);
  if (!params_valid(family, p) || !within_box(family, p, box)) {
    return kPenalty;
  }
  const Dist dist(family, p);
  const double ll = log_likelihood(dist, data);
  if (!std::isfinite(ll)) return kPenalty;
  return -ll;
}

}  // namespace detail

// MLE by simplex search from the moment-matched start. On non-convergence
// the search restarts once from a perturbed initial point and the better
// run is kept (ties within 1e-9 keep the first). A non-converged result is
// returned with converged = false rather than thrown, so the selection
// stage can still rank it by its achieved likelihood.
inline FittedModel fit_mle(FamilyId family, std::span<const double> data,
                           const FitConfig& config = {}) {
  const auto stats = detail::data_stats(data);
  if (stats.sd == 0.0) {
    raise(errc::degenerate_sample, "fit_mle: sample has zero variance");
  }
  const detail::FitTransform tr(family, stats, config.raw_support);
  const int k = tr.dim();
  if (data.size() < static_cast<std::size_t>(k) + 1) {
    raise(errc::sample_too_small,
          "fit_mle: need at least k_params + 1 observations");
  }

  const ParamVector p0 = initial_params(family, data, config.raw_support);
  const std::vector<double> u0 = tr.encode(p0);
  const detail::SaneBox box(stats);

  auto objective = [&](const std::vector<double>& u) {
    return detail::negative_log_likelihood(family, tr, data,
                                           std::span<const double>(u), box);
  };

  NelderMeadOptions opt;
  opt.max_iter = config.max_iter;
  opt.f_tol = config.tol;

  auto run_from = [&](const std::vector<double>& start) {
    NelderMeadResult r = nelder_mead(objective, start, opt);
    // Polish: restart the simplex around the located optimum. Cheap and
    // sharpens the final vertex well past the first convergence test.
    NelderMeadResult r2 = nelder_mead(objective, r.x, opt);
    r2.evaluations += r.evaluations;
    r2.converged = r.converged && r2.converged;
    return r2;
  };

  NelderMeadResult best = run_from(u0);
  if (!best.converged) {
    UniformSource noise(derive_seed(config.seed, hash_tag("fit-restart"),
                                    static_cast<std::uint64_t>(family)));
    std::vector<double> u1 = u0;
    for (double& v : u1) {
      v = v * (1.0 + 0.05 * (2.0 * noise.next() - 1.0)) +
          0.01 * (2.0 * noise.next() - 1.0);
    }
    NelderMeadResult second = run_from(u1);
    if (second.fmin < best.fmin - 1e-9) best = second;
  }

  FittedModel m;
  m.family = family;
  m.params = tr.decode(best.x);
  m.log_likelihood = -best.fmin;
  m.k_params = k;
  m.n = data.size();
  m.converged = best.converged;
  return m;
}

inline FittedModel fit_mle(FamilyId family, const StationSeries& series,
                           const FitConfig& config = {}) {
  const auto v = series.values();
  return fit_mle(family, std::span<const double>(v), config);
}

}  // namespace distsel
