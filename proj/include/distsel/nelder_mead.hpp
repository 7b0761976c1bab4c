#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

// Nelder-Mead downhill simplex with the standard coefficients
// (reflection 1, expansion 2, contraction 0.5, shrink 0.5).
// Nelder & Mead (1965); convergence tests follow the fminsearch convention:
// relative spread of the vertex function values plus simplex diameter.

namespace distsel {

struct NelderMeadOptions {
  int max_iter = 2000;
  double f_tol = 1e-8;  // relative spread of f over the simplex
  double x_tol = 1e-6;  // simplex diameter, relative to coordinate size
};

struct NelderMeadResult {
  std::vector<double> x;
  double fmin = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

template <class F>
NelderMeadResult nelder_mead(F&& f, const std::vector<double>& x0,
                             const NelderMeadOptions& opt = {}) {
  const std::size_t n = x0.size();
  const std::size_t m = n + 1;

  std::vector<std::vector<double>> simplex(m, x0);
  for (std::size_t i = 0; i < n; ++i) {
    double step = 0.05 * std::abs(x0[i]);
    if (step < 1e-8) step = 0.00025;
    simplex[i + 1][i] += step;
  }

  NelderMeadResult res;
  std::vector<double> fv(m);
  for (std::size_t i = 0; i < m; ++i) {
    fv[i] = f(simplex[i]);
    ++res.evaluations;
  }

  std::vector<std::size_t> order(m);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
  };

  auto centroid_excluding = [&](std::size_t worst) {
    std::vector<double> c(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) c[j] += simplex[i][j];
    }
    for (double& v : c) v /= static_cast<double>(n);
    return c;
  };

  for (res.iterations = 0; res.iterations < opt.max_iter; ++res.iterations) {
    sort_simplex();
    const std::size_t best = order[0];
    const std::size_t worst = order[m - 1];
    const std::size_t second_worst = order[m - 2];

    // Convergence: function spread relative to |f_best| and simplex diameter
    // relative to the coordinate magnitudes.
    const double fspread = fv[worst] - fv[best];
    double xdiam = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double rel = std::abs(simplex[i][j] - simplex[best][j]) /
                           (1.0 + std::abs(simplex[best][j]));
        xdiam = std::max(xdiam, rel);
      }
    }
    if (fspread <= opt.f_tol * (std::abs(fv[best]) + opt.f_tol) &&
        xdiam <= opt.x_tol) {
      res.converged = true;
      break;
    }

    const auto c = centroid_excluding(worst);
    auto blend = [&](double t) {
      std::vector<double> p(n);
      for (std::size_t j = 0; j < n; ++j) {
        p[j] = c[j] + t * (c[j] - simplex[worst][j]);
      }
      return p;
    };

    auto reflected = blend(1.0);
    const double fr = f(reflected);
    ++res.evaluations;

    if (fr < fv[best]) {
      auto expanded = blend(2.0);
      const double fe = f(expanded);
      ++res.evaluations;
      if (fe < fr) {
        simplex[worst] = std::move(expanded);
        fv[worst] = fe;
      } else {
        simplex[worst] = std::move(reflected);
        fv[worst] = fr;
      }
    } else if (fr < fv[second_worst]) {
      simplex[worst] = std::move(reflected);
      fv[worst] = fr;
    } else {
      const bool outside = fr < fv[worst];
      auto contracted = blend(outside ? 0.5 : -0.5);
      const double fc = f(contracted);
      ++res.evaluations;
      if (fc < (outside ? fr : fv[worst])) {
        simplex[worst] = std::move(contracted);
        fv[worst] = fc;
      } else {
        // Shrink toward the best vertex.
        for (std::size_t i = 0; i < m; ++i) {
          if (i == best) continue;
          for (std::size_t j = 0; j < n; ++j) {
            simplex[i][j] =
                simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
          }
          fv[i] = f(simplex[i]);
          ++res.evaluations;
        }
      }
    }
  }

  sort_simplex();
  res.x = simplex[order[0]];
  res.fmin = fv[order[0]];
  return res;
}

}  // namespace distsel
