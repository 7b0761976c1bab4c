#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "distsel/errors.hpp"

namespace distsel {

// The ten families fitted to each station record. The string names are
// stable identifiers used in every report, table and CLI flag.
enum class FamilyId {
  normal,
  lognorm,
  gamma,
  invgauss,
  genextreme,
  gumbel,
  t,
  beta,
  weibull,
  f,
};

inline constexpr std::array<FamilyId, 10> kAllFamilies = {
    FamilyId::normal, FamilyId::lognorm,    FamilyId::gamma,
    FamilyId::invgauss, FamilyId::genextreme, FamilyId::gumbel,
    FamilyId::t,      FamilyId::beta,       FamilyId::weibull,
    FamilyId::f,
};

inline std::string_view family_name(FamilyId id) {
  switch (id) {
    case FamilyId::normal: return "normal";
    case FamilyId::lognorm: return "lognorm";
    case FamilyId::gamma: return "gamma";
    case FamilyId::invgauss: return "invgauss";
    case FamilyId::genextreme: return "genextreme";
    case FamilyId::gumbel: return "gumbel";
    case FamilyId::t: return "t";
    case FamilyId::beta: return "beta";
    case FamilyId::weibull: return "weibull";
    case FamilyId::f: return "f";
  }
  return "?";
}

inline FamilyId family_from_name(std::string_view name) {
  for (FamilyId id : kAllFamilies) {
    if (family_name(id) == name) return id;
  }
  raise(errc::invalid_params, "unknown family name: " + std::string(name));
}

// Number of shape parameters beyond location and scale.
inline int shape_count(FamilyId id) {
  switch (id) {
    case FamilyId::normal:
    case FamilyId::gumbel: return 0;
    case FamilyId::lognorm:
    case FamilyId::gamma:
    case FamilyId::invgauss:
    case FamilyId::genextreme:
    case FamilyId::t:
    case FamilyId::weibull: return 1;
    case FamilyId::beta:
    case FamilyId::f: return 2;
  }
  return 0;
}

// Uniform parameter scheme: optional shapes plus a location and a scale.
// Every family is evaluated as f(x) = g((x - loc)/scale; shapes) / scale
// with g the standardized density.
struct ParamVector {
  std::vector<double> shapes;
  double loc = 0.0;
  double scale = 1.0;

  bool operator==(const ParamVector&) const = default;
};

struct Support {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  bool lower_open = true;
  bool upper_open = true;
};

namespace detail {

inline bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace detail

// Validates the family invariants; returns an explanation for reports.
inline void validate_params(FamilyId family, const ParamVector& p) {
  auto fail = [&](const std::string& what) {
    raise(errc::invalid_params,
          std::string(family_name(family)) + ": " + what);
  };
  if (!std::isfinite(p.loc)) fail("loc must be finite");
  if (!detail::positive_finite(p.scale)) fail("scale must be positive");
  if (static_cast<int>(p.shapes.size()) != shape_count(family)) {
    fail("expected " + std::to_string(shape_count(family)) +
         " shape parameter(s), got " + std::to_string(p.shapes.size()));
  }
  for (double s : p.shapes) {
    if (!std::isfinite(s)) fail("shape must be finite");
  }
  switch (family) {
    case FamilyId::lognorm:
      if (p.shapes[0] <= 0.0) fail("log-sd shape must be positive");
      break;
    case FamilyId::gamma:
      if (p.shapes[0] <= 0.0) fail("shape k must be positive");
      break;
    case FamilyId::invgauss:
      if (p.shapes[0] <= 0.0) fail("relative-mean shape must be positive");
      break;
    case FamilyId::t:
      if (p.shapes[0] <= 0.0) fail("degrees of freedom must be positive");
      break;
    case FamilyId::weibull:
      if (p.shapes[0] <= 0.0) fail("shape k must be positive");
      break;
    case FamilyId::beta:
      if (p.shapes[0] <= 0.0 || p.shapes[1] <= 0.0)
        fail("alpha and beta must be positive");
      break;
    case FamilyId::f:
      if (p.shapes[0] <= 0.0 || p.shapes[1] <= 0.0)
        fail("d1 and d2 must be positive");
      break;
    default:
      break;  // genextreme shape is unconstrained; normal/gumbel have none
  }
}

inline bool params_valid(FamilyId family, const ParamVector& p) {
  try {
    validate_params(family, p);
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace distsel
