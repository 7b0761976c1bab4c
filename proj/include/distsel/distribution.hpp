#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "distsel/errors.hpp"
#include "distsel/params.hpp"
#include "distsel/rng.hpp"
#include "distsel/special.hpp"

// The ten distribution families under one location-scale scheme. Densities
// follow the standardized forms; the GEV uses the ksi-sign convention with
// support condition 1 + ksi*(x-mu)/sigma > 0. The Gumbel density is the
// normalized (1/beta) exp(-(z + e^-z)).

namespace distsel {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

class Dist {
 public:
  Dist(FamilyId family, ParamVector params)
      : family_(family), p_(std::move(params)) {
    validate_params(family_, p_);
    log_scale_ = std::log(p_.scale);
    switch (family_) {
      case FamilyId::normal:
        norm_ = -0.5 * std::log(2.0 * kPi) - log_scale_;
        break;
      case FamilyId::lognorm:
        norm_ = -std::log(p_.shapes[0]) - 0.5 * std::log(2.0 * kPi) -
                log_scale_;
        break;
      case FamilyId::gamma:
        norm_ = -std::lgamma(p_.shapes[0]) - log_scale_;
        break;
      case FamilyId::invgauss:
        norm_ = -0.5 * std::log(2.0 * kPi) - log_scale_;
        break;
      case FamilyId::genextreme:
      case FamilyId::gumbel:
        norm_ = -log_scale_;
        break;
      case FamilyId::t: {
        // lgamma((v+1)/2) - lgamma(v/2) cancels catastrophically for huge v;
        // switch to the Stirling form 0.5*log(v/2) - 1/(4v) there.
        const double v = p_.shapes[0];
        const double lg_ratio =
            v < 2e8 ? std::lgamma(0.5 * (v + 1.0)) - std::lgamma(0.5 * v)
                    : 0.5 * std::log(0.5 * v) - 1.0 / (4.0 * v);
        norm_ = lg_ratio - 0.5 * std::log(v * kPi) - log_scale_;
        break;
      }
      case FamilyId::beta:
        norm_ = -log_beta(p_.shapes[0], p_.shapes[1]) - log_scale_;
        break;
      case FamilyId::weibull:
        norm_ = std::log(p_.shapes[0]) - log_scale_;
        break;
      case FamilyId::f: {
        const double d1 = p_.shapes[0], d2 = p_.shapes[1];
        norm_ = 0.5 * (d1 * std::log(d1) + d2 * std::log(d2)) -
                log_beta(0.5 * d1, 0.5 * d2) - log_scale_;
        break;
      }
    }
  }

  FamilyId family() const { return family_; }
  const ParamVector& params() const { return p_; }

  Support support() const {
    Support s;
    switch (family_) {
      case FamilyId::normal:
      case FamilyId::gumbel:
      case FamilyId::t:
        break;
      case FamilyId::lognorm:
      case FamilyId::gamma:
      case FamilyId::invgauss:
      case FamilyId::weibull:
      case FamilyId::f:
        s.lower = p_.loc;
        break;
      case FamilyId::beta:
        s.lower = p_.loc;
        s.upper = p_.loc + p_.scale;
        break;
      case FamilyId::genextreme: {
        const double xi = p_.shapes[0];
        if (xi > 0.0) {
          s.lower = p_.loc - p_.scale / xi;
        } else if (xi < 0.0) {
          s.upper = p_.loc - p_.scale / xi;
        }
        break;
      }
    }
    return s;
  }

  double log_pdf(double x) const {
    const double z = (x - p_.loc) / p_.scale;
    if (std::isinf(z)) return kNegInf;  // density vanishes at +-infinity
    switch (family_) {
      case FamilyId::normal:
        return norm_ - 0.5 * z * z;
      case FamilyId::lognorm: {
        if (z <= 0.0) return kNegInf;
        const double s = p_.shapes[0];
        const double lz = std::log(z);
        return norm_ - lz - lz * lz / (2.0 * s * s);
      }
      case FamilyId::gamma: {
        if (z <= 0.0) return kNegInf;
        return norm_ + (p_.shapes[0] - 1.0) * std::log(z) - z;
      }
      case FamilyId::invgauss: {
        if (z <= 0.0) return kNegInf;
        // Quadratic form written as ((z/m - 1)^2)/(2z): no m^2 overflow.
        const double m = p_.shapes[0];
        const double r = z / m - 1.0;
        return norm_ - 1.5 * std::log(z) - r * r / (2.0 * z);
      }
      case FamilyId::genextreme: {
        const double xi = p_.shapes[0];
        if (xi == 0.0) return norm_ - z - std::exp(-z);
        const double w = 1.0 + xi * z;
        if (w <= 0.0) return kNegInf;
        const double lw = std::log1p(xi * z);
        return norm_ - (1.0 + 1.0 / xi) * lw - std::exp(-lw / xi);
      }
      case FamilyId::gumbel:
        return norm_ - z - std::exp(-z);
      case FamilyId::t: {
        const double v = p_.shapes[0];
        return norm_ - 0.5 * (v + 1.0) * std::log1p(z * z / v);
      }
      case FamilyId::beta: {
        if (z <= 0.0 || z >= 1.0) return kNegInf;
        return norm_ + (p_.shapes[0] - 1.0) * std::log(z) +
               (p_.shapes[1] - 1.0) * std::log1p(-z);
      }
      case FamilyId::weibull: {
        if (z <= 0.0) return kNegInf;
        const double k = p_.shapes[0];
        return norm_ + (k - 1.0) * std::log(z) - std::pow(z, k);
      }
      case FamilyId::f: {
        if (z <= 0.0) return kNegInf;
        const double d1 = p_.shapes[0], d2 = p_.shapes[1];
        return norm_ + (0.5 * d1 - 1.0) * std::log(z) -
               0.5 * (d1 + d2) * std::log(d2 + d1 * z);
      }
    }
    return kNegInf;
  }

  double pdf(double x) const { return std::exp(log_pdf(x)); }

  double cdf(double x) const {
    const double z = (x - p_.loc) / p_.scale;
    if (std::isinf(z)) return z < 0.0 ? 0.0 : 1.0;
    switch (family_) {
      case FamilyId::normal:
        return normal_cdf(z);
      case FamilyId::lognorm:
        if (z <= 0.0) return 0.0;
        return normal_cdf(std::log(z) / p_.shapes[0]);
      case FamilyId::gamma:
        if (z <= 0.0) return 0.0;
        return gamma_p(p_.shapes[0], z);
      case FamilyId::invgauss: {
        if (z <= 0.0) return 0.0;
        const double m = p_.shapes[0];
        const double fac = 1.0 / std::sqrt(z);
        const double a = normal_cdf(fac * (z / m - 1.0));
        const double lb = 2.0 / m + log_normal_cdf(-fac * (z / m + 1.0));
        const double cdf = a + std::exp(lb);
        return cdf < 1.0 ? cdf : 1.0;
      }
      case FamilyId::genextreme: {
        const double xi = p_.shapes[0];
        if (xi == 0.0) return std::exp(-std::exp(-z));
        const double w = 1.0 + xi * z;
        if (w <= 0.0) return xi > 0.0 ? 0.0 : 1.0;
        return std::exp(-std::exp(-std::log1p(xi * z) / xi));
      }
      case FamilyId::gumbel:
        return std::exp(-std::exp(-z));
      case FamilyId::t: {
        const double v = p_.shapes[0];
        const double w = v / (v + z * z);
        const double half_tail = 0.5 * beta_inc(0.5 * v, 0.5, w);
        return z <= 0.0 ? half_tail : 1.0 - half_tail;
      }
      case FamilyId::beta:
        if (z <= 0.0) return 0.0;
        if (z >= 1.0) return 1.0;
        return beta_inc(p_.shapes[0], p_.shapes[1], z);
      case FamilyId::weibull:
        if (z <= 0.0) return 0.0;
        return -std::expm1(-std::pow(z, p_.shapes[0]));
      case FamilyId::f: {
        if (z <= 0.0) return 0.0;
        const double d1 = p_.shapes[0], d2 = p_.shapes[1];
        return beta_inc(0.5 * d1, 0.5 * d2, d1 * z / (d1 * z + d2));
      }
    }
    return 0.0;
  }

  // Inverse CDF: closed form where available, otherwise bracketed root
  // finding on the CDF.
  double quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) {
      raise(errc::invalid_params, "quantile: p must lie in (0,1)");
    }
    switch (family_) {
      case FamilyId::normal:
        return p_.loc + p_.scale * normal_quantile(p);
      case FamilyId::lognorm:
        return p_.loc +
               p_.scale * std::exp(p_.shapes[0] * normal_quantile(p));
      case FamilyId::gumbel:
        return p_.loc - p_.scale * std::log(-std::log(p));
      case FamilyId::weibull:
        return p_.loc +
               p_.scale * std::pow(-std::log1p(-p), 1.0 / p_.shapes[0]);
      case FamilyId::genextreme: {
        const double xi = p_.shapes[0];
        const double g = -std::log(p);  // Gumbel variate -log(-log p) base
        if (xi == 0.0) return p_.loc - p_.scale * std::log(g);
        return p_.loc + p_.scale * std::expm1(-xi * std::log(g)) / xi;
      }
      default:
        return quantile_by_root(p);
    }
  }

  // Inverse-transform sampling; deterministic given the seed.
  std::vector<double> sample(std::size_t n, std::uint64_t seed) const {
    if (n == 0) {
      raise(errc::invalid_params, "sample: n must be at least 1");
    }
    UniformSource u(seed);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = quantile(u.next());
    return out;
  }

 private:
  // Geometric bracket expansion covering the whole double range; extreme
  // parameter combinations (heavy-tailed fits on degenerate data) can push
  // quantiles far beyond scale * 2^200.
  double quantile_by_root(double p) const {
    constexpr double kMaxOffset = 1e300;
    const Support s = support();
    double lo, hi;
    if (std::isfinite(s.lower)) {
      lo = s.lower;
      if (std::isfinite(s.upper)) {
        hi = s.upper;
      } else {
        hi = s.lower + p_.scale;
        while (cdf(hi) < p && hi - s.lower < kMaxOffset) {
          hi = s.lower + 2.0 * (hi - s.lower);
        }
      }
    } else {
      lo = p_.loc - p_.scale;
      hi = p_.loc + p_.scale;
      while (cdf(lo) > p && p_.loc - lo < kMaxOffset) {
        lo = p_.loc - 2.0 * (p_.loc - lo);
      }
      while (cdf(hi) < p && hi - p_.loc < kMaxOffset) {
        hi = p_.loc + 2.0 * (hi - p_.loc);
      }
    }
    const double abs_tol = p_.scale * 1e-15;
    return brent_root([&](double x) { return cdf(x) - p; }, lo, hi, abs_tol);
  }

  FamilyId family_;
  ParamVector p_;
  double log_scale_ = 0.0;
  double norm_ = 0.0;  // log of the density normalization constant
};

inline double log_pdf(FamilyId family, const ParamVector& p, double x) {
  return Dist(family, p).log_pdf(x);
}

inline double pdf(FamilyId family, const ParamVector& p, double x) {
  return Dist(family, p).pdf(x);
}

inline double cdf(FamilyId family, const ParamVector& p, double x) {
  return Dist(family, p).cdf(x);
}

inline double quantile(FamilyId family, const ParamVector& p, double prob) {
  return Dist(family, p).quantile(prob);
}

inline std::vector<double> sample(FamilyId family, const ParamVector& p,
                                  std::size_t n, std::uint64_t seed) {
  return Dist(family, p).sample(n, seed);
}

}  // namespace distsel
