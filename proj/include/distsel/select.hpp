#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "distsel/criteria.hpp"
#include "distsel/errors.hpp"
#include "distsel/gof.hpp"
#include "distsel/params.hpp"

// Per-station ranking. Each criterion ranks the ten families (rank 1 best);
// GoF tests rank by descending p-value, information criteria by ascending
// value. Ties break by fewer free parameters, then family name. The winner
// minimizes the cumulative rank over the selected criteria.

namespace distsel {

enum class Criterion { ks, ad, chi2, aicc, bic };

inline constexpr std::array<Criterion, 5> kAllCriteria = {
    Criterion::ks, Criterion::ad, Criterion::chi2, Criterion::aicc,
    Criterion::bic};

inline std::string_view criterion_name(Criterion c) {
  switch (c) {
    case Criterion::ks: return "ks";
    case Criterion::ad: return "ad";
    case Criterion::chi2: return "chi2";
    case Criterion::aicc: return "aicc";
    case Criterion::bic: return "bic";
  }
  return "?";
}

inline Criterion criterion_from_name(std::string_view name) {
  for (Criterion c : kAllCriteria) {
    if (criterion_name(c) == name) return c;
  }
  raise(errc::invalid_params, "unknown criterion: " + std::string(name));
}

struct SelectionOptions {
  std::vector<Criterion> criteria{kAllCriteria.begin(), kAllCriteria.end()};
  bool chi2_rank_by_statistic = false;  // rank by chi2/dof instead of p-value
};

// Rank entries 1..n. `higher_better` selects the sort direction of `score`;
// ties resolve by fewer parameters, then lexicographic family name.
struct RankEntry {
  FamilyId family;
  int k_params;
  double score;
};

inline std::vector<int> rank_scores(const std::vector<RankEntry>& entries,
                                    bool higher_better) {
  std::vector<std::size_t> order(entries.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ea = entries[a];
    const auto& eb = entries[b];
    if (ea.score != eb.score) {
      return higher_better ? ea.score > eb.score : ea.score < eb.score;
    }
    if (ea.k_params != eb.k_params) return ea.k_params < eb.k_params;
    return family_name(ea.family) < family_name(eb.family);
  });
  std::vector<int> ranks(entries.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    ranks[order[pos]] = static_cast<int>(pos) + 1;
  }
  return ranks;
}

struct SelectionTable {
  std::string station;
  std::vector<FamilyId> families;               // row order
  std::vector<Criterion> criteria;              // column order
  std::vector<std::vector<int>> ranks;          // [family][criterion]
  std::vector<FamilyId> per_criterion_best;     // rank-1 family per column
  std::vector<int> cumulative;                  // row sums
  FamilyId winner = FamilyId::normal;

  bool operator==(const SelectionTable&) const = default;
};

inline SelectionTable build_selection(const std::string& station,
                                      const std::vector<FittedModel>& models,
                                      const std::vector<GofResult>& gofs,
                                      const std::vector<CriterionScores>& scores,
                                      const SelectionOptions& opt = {}) {
  const std::size_t nf = models.size();
  if (gofs.size() != nf || scores.size() != nf) {
    raise(errc::invalid_params, "build_selection: mismatched table sizes");
  }
  if (opt.criteria.empty()) {
    raise(errc::invalid_params, "build_selection: no criteria selected");
  }

  SelectionTable table;
  table.station = station;
  table.criteria = opt.criteria;
  table.families.reserve(nf);
  for (const auto& m : models) table.families.push_back(m.family);
  table.ranks.assign(nf, std::vector<int>(opt.criteria.size(), 0));

  for (std::size_t c = 0; c < opt.criteria.size(); ++c) {
    std::vector<RankEntry> entries;
    entries.reserve(nf);
    bool higher_better = true;
    for (std::size_t i = 0; i < nf; ++i) {
      double score = 0.0;
      switch (opt.criteria[c]) {
        case Criterion::ks: score = gofs[i].ks_p; break;
        case Criterion::ad: score = gofs[i].ad_p; break;
        case Criterion::chi2:
          if (opt.chi2_rank_by_statistic) {
            score = gofs[i].chi2 / std::max(gofs[i].chi2_dof, 1);
            higher_better = false;
          } else {
            score = gofs[i].chi2_p;
          }
          break;
        case Criterion::aicc:
          score = scores[i].aicc;
          higher_better = false;
          break;
        case Criterion::bic:
          score = scores[i].bic;
          higher_better = false;
          break;
      }
      entries.push_back({models[i].family, models[i].k_params, score});
    }
    const auto ranks = rank_scores(entries, higher_better);
    for (std::size_t i = 0; i < nf; ++i) table.ranks[i][c] = ranks[i];
    const auto best =
        std::find(ranks.begin(), ranks.end(), 1) - ranks.begin();
    table.per_criterion_best.push_back(models[best].family);
  }

  table.cumulative.resize(nf);
  for (std::size_t i = 0; i < nf; ++i) {
    table.cumulative[i] =
        std::accumulate(table.ranks[i].begin(), table.ranks[i].end(), 0);
  }

  std::size_t win = 0;
  for (std::size_t i = 1; i < nf; ++i) {
    const int ci = table.cumulative[i];
    const int cw = table.cumulative[win];
    if (ci < cw ||
        (ci == cw && (models[i].k_params < models[win].k_params ||
                      (models[i].k_params == models[win].k_params &&
                       family_name(models[i].family) <
                           family_name(models[win].family))))) {
      win = i;
    }
  }
  table.winner = models[win].family;
  return table;
}

}  // namespace distsel
