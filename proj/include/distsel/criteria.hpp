#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "distsel/errors.hpp"
#include "distsel/fit.hpp"

// Information criteria. AICc defaults to the standard bias-corrected form
// -2 logL + 2K + 2K(K+1)/(N-K-1); the paper-literal variant drops the +2K
// term and is kept selectable for rank reproduction.

namespace distsel {

inline double aic(double log_l, int k) { return -2.0 * log_l + 2.0 * k; }

// Finite-sample penalty of AICc; kept separate so AICc = AIC + correction
// holds exactly, term by term.
inline double aicc_correction(int k, std::size_t n) {
  if (n <= static_cast<std::size_t>(k) + 1) {
    raise(errc::sample_too_small, "aicc: requires n > k + 1");
  }
  const double kd = static_cast<double>(k);
  return 2.0 * kd * (kd + 1.0) / (static_cast<double>(n) - kd - 1.0);
}

inline double aicc(double log_l, int k, std::size_t n) {
  return aic(log_l, k) + aicc_correction(k, n);
}

// Eq. 8 as printed omits the +2K term, so the literal variant sits exactly
// 2K below the standard one.
inline double aicc_paper_literal(double log_l, int k, std::size_t n) {
  return aicc(log_l, k, n) - 2.0 * static_cast<double>(k);
}

inline double bic(double log_l, int k, std::size_t n) {
  return -2.0 * log_l + static_cast<double>(k) * std::log(static_cast<double>(n));
}

struct CriterionScores {
  double aic = 0.0;
  double aicc = 0.0;
  double bic = 0.0;
  double delta_aicc = 0.0;  // difference from the per-station minimum
  double delta_bic = 0.0;

  bool operator==(const CriterionScores&) const = default;
};

// Scores one station's family fits; the deltas are relative to the
// per-station minimum, so the best model scores exactly zero.
inline std::vector<CriterionScores> score_models(
    const std::vector<FittedModel>& models, bool paper_literal_aicc = false) {
  std::vector<CriterionScores> out;
  out.reserve(models.size());
  for (const auto& m : models) {
    CriterionScores s;
    s.aic = aic(m.log_likelihood, m.k_params);
    s.aicc = paper_literal_aicc
                 ? aicc_paper_literal(m.log_likelihood, m.k_params, m.n)
                 : aicc(m.log_likelihood, m.k_params, m.n);
    s.bic = bic(m.log_likelihood, m.k_params, m.n);
    out.push_back(s);
  }
  if (!out.empty()) {
    double min_aicc = out.front().aicc;
    double min_bic = out.front().bic;
    for (const auto& s : out) {
      min_aicc = std::min(min_aicc, s.aicc);
      min_bic = std::min(min_bic, s.bic);
    }
    for (auto& s : out) {
      s.delta_aicc = s.aicc - min_aicc;
      s.delta_bic = s.bic - min_bic;
    }
  }
  return out;
}

}  // namespace distsel
