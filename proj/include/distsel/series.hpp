#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "distsel/errors.hpp"

namespace distsel {

struct Observation {
  int year = 0;
  int month = 0;  // 1..12
  double precip_mm = 0.0;

  bool operator==(const Observation&) const = default;
};

// One station's ordered monthly precipitation record; the unit of analysis.
struct StationSeries {
  std::string station;
  std::vector<Observation> observations;

  std::size_t size() const { return observations.size(); }

  std::vector<double> values() const {
    std::vector<double> v;
    v.reserve(observations.size());
    for (const auto& o : observations) v.push_back(o.precip_mm);
    return v;
  }

  bool operator==(const StationSeries&) const = default;
};

struct SummaryStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double sd = 0.0;        // sample standard deviation (n-1)
  double cv = 0.0;        // sd / mean
  double skewness = 0.0;  // adjusted Fisher-Pearson; NaN for n < 3
  double kurtosis = 0.0;  // sample excess kurtosis; NaN for n < 4

  bool operator==(const SummaryStats&) const = default;
};

// Accumulation is done over a sorted copy so the result is exactly
// permutation-invariant.
inline SummaryStats summarize(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) {
    raise(errc::sample_too_small, "summarize: need at least 2 observations");
  }
  std::vector<double> x(values.begin(), values.end());
  std::sort(x.begin(), x.end());

  SummaryStats s;
  s.min = x.front();
  s.max = x.back();
  double sum = 0.0;
  for (double v : x) sum += v;
  const double nd = static_cast<double>(n);
  s.mean = sum / nd;

  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d = v - s.mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  const double var = m2 / (nd - 1.0);
  s.sd = std::sqrt(var);
  if (s.sd == 0.0) {
    raise(errc::degenerate_sample,
          "summarize: zero variance, skewness/kurtosis undefined");
  }
  s.cv = s.mean != 0.0 ? s.sd / s.mean
                       : std::numeric_limits<double>::quiet_NaN();

  m2 /= nd;
  m3 /= nd;
  m4 /= nd;
  if (n >= 3) {
    const double g1 = m3 / std::pow(m2, 1.5);
    s.skewness = g1 * std::sqrt(nd * (nd - 1.0)) / (nd - 2.0);
  } else {
    s.skewness = std::numeric_limits<double>::quiet_NaN();
  }
  if (n >= 4) {
    const double g2 = m4 / (m2 * m2) - 3.0;
    s.kurtosis = ((nd + 1.0) * g2 + 6.0) * (nd - 1.0) / ((nd - 2.0) * (nd - 3.0));
  } else {
    s.kurtosis = std::numeric_limits<double>::quiet_NaN();
  }
  return s;
}

inline SummaryStats summarize(const StationSeries& series) {
  return summarize(std::span<const double>(series.values()));
}

}  // namespace distsel
