#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "distsel/errors.hpp"

namespace distsel {

// Density-normalized histogram: sum(density_i * width_i) = 1.
struct Histogram {
  std::vector<double> edges;    // size bins + 1
  std::vector<double> counts;   // raw counts per bin
  std::vector<double> density;  // counts / (n * width)

  bool operator==(const Histogram&) const = default;
};

// Freedman-Diaconis bin count, with fallbacks for degenerate spreads.
inline Histogram compute_histogram(std::span<const double> data) {
  if (data.empty()) raise(errc::empty_sample, "compute_histogram: empty data");
  std::vector<double> x(data.begin(), data.end());
  std::sort(x.begin(), x.end());
  const std::size_t n = x.size();
  const double lo = x.front(), hi = x.back();

  Histogram h;
  if (lo == hi) {
    h.edges = {lo - 0.5, lo + 0.5};
    h.counts = {static_cast<double>(n)};
    h.density = {1.0};
    return h;
  }

  const double q1 = x[static_cast<std::size_t>(0.25 * (n - 1))];
  const double q3 = x[static_cast<std::size_t>(0.75 * (n - 1))];
  const double iqr = q3 - q1;
  double width = 2.0 * iqr / std::cbrt(static_cast<double>(n));
  int bins;
  if (width > 0.0) {
    bins = static_cast<int>(std::ceil((hi - lo) / width));
  } else {
    bins = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
  }
  bins = std::clamp(bins, 1, 400);

  h.edges.resize(bins + 1);
  for (int j = 0; j <= bins; ++j) {
    h.edges[j] = lo + (hi - lo) * static_cast<double>(j) /
                          static_cast<double>(bins);
  }
  h.counts.assign(bins, 0.0);
  std::size_t start = 0;
  for (int j = 0; j < bins; ++j) {
    std::size_t stop =
        j + 1 < bins ? static_cast<std::size_t>(std::upper_bound(
                           x.begin() + start, x.end(), h.edges[j + 1]) -
                       x.begin())
                     : n;
    h.counts[j] = static_cast<double>(stop - start);
    start = stop;
  }
  h.density.resize(bins);
  for (int j = 0; j < bins; ++j) {
    const double w = h.edges[j + 1] - h.edges[j];
    h.density[j] = h.counts[j] / (static_cast<double>(n) * w);
  }
  return h;
}

}  // namespace distsel
