#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "distsel/errors.hpp"

// Sample L-moments via unbiased probability-weighted moments (Hosking):
//   b_r = (1/n) sum_{i=r+1..n} [(i-1)(i-2)...(i-r) / ((n-1)(n-2)...(n-r))] x_(i)
//   l1 = b0, l2 = 2b1 - b0, l3 = 6b2 - 6b1 + b0, l4 = 20b3 - 30b2 + 12b1 - b0.

namespace distsel {

struct LMomentSet {
  double l1 = 0.0;    // mean
  double l2 = 0.0;    // L-scale
  double l3 = 0.0;
  double l4 = 0.0;
  double tau3 = 0.0;  // L-skewness l3/l2
  double tau4 = 0.0;  // L-kurtosis l4/l2

  bool operator==(const LMomentSet&) const = default;
};

inline LMomentSet sample_lmoments(std::span<const double> data) {
  const std::size_t n = data.size();
  if (n < 4) {
    raise(errc::sample_too_small, "sample_lmoments: need at least 4 points");
  }
  std::vector<double> x(data.begin(), data.end());
  std::sort(x.begin(), x.end());

  const double nd = static_cast<double>(n);
  double b0 = 0.0, b1 = 0.0, b2 = 0.0, b3 = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double id = static_cast<double>(i);
    const double v = x[i - 1];
    b0 += v;
    b1 += (id - 1.0) / (nd - 1.0) * v;
    b2 += (id - 1.0) * (id - 2.0) / ((nd - 1.0) * (nd - 2.0)) * v;
    b3 += (id - 1.0) * (id - 2.0) * (id - 3.0) /
          ((nd - 1.0) * (nd - 2.0) * (nd - 3.0)) * v;
  }
  b0 /= nd;
  b1 /= nd;
  b2 /= nd;
  b3 /= nd;

  LMomentSet m;
  m.l1 = b0;
  m.l2 = 2.0 * b1 - b0;
  m.l3 = 6.0 * b2 - 6.0 * b1 + b0;
  m.l4 = 20.0 * b3 - 30.0 * b2 + 12.0 * b1 - b0;
  if (m.l2 <= 0.0) {
    raise(errc::degenerate_sample, "sample_lmoments: zero L-scale");
  }
  m.tau3 = m.l3 / m.l2;
  m.tau4 = m.l4 / m.l2;
  return m;
}

}  // namespace distsel
