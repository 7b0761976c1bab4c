#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "distsel/select.hpp"

using namespace distsel;

namespace {

// Builds a synthetic 10-family score table for selection tests.
struct Fixture {
  std::vector<FittedModel> models;
  std::vector<GofResult> gofs;
  std::vector<CriterionScores> scores;
};

Fixture make_fixture(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Fixture fx;
  for (FamilyId fam : kAllFamilies) {
    FittedModel m;
    m.family = fam;
    m.k_params = shape_count(fam) + 2;
    m.n = 500;
    m.log_likelihood = -1000.0 - 100.0 * unif(rng);
    fx.models.push_back(m);
    GofResult g;
    g.ks_p = unif(rng);
    g.ad_p = unif(rng);
    g.chi2_p = unif(rng);
    g.chi2 = 50.0 + 50.0 * unif(rng);
    g.chi2_dof = 96;
    fx.gofs.push_back(g);
    CriterionScores c;
    c.aicc = 2000.0 + 100.0 * unif(rng);
    c.bic = 2000.0 + 100.0 * unif(rng);
    fx.scores.push_back(c);
  }
  return fx;
}

}  // namespace

TEST_CASE("rank by descending p-value", "[select]") {
  std::vector<RankEntry> entries = {
      {FamilyId::normal, 2, 0.9},   // A
      {FamilyId::gamma, 3, 0.1},    // B
      {FamilyId::weibull, 3, 0.5},  // C
  };
  const auto ranks = rank_scores(entries, true);
  CHECK(ranks == std::vector<int>{1, 3, 2});
}

TEST_CASE("ties break by parameter count then name", "[select]") {
  std::vector<RankEntry> entries = {
      {FamilyId::normal, 2, 100.0},
      {FamilyId::gumbel, 2, 100.0},
      {FamilyId::gamma, 3, 100.0},
  };
  const auto ranks = rank_scores(entries, false);
  // gumbel < normal lexicographically; gamma has more parameters.
  CHECK(ranks == std::vector<int>{2, 1, 3});
}

TEST_CASE("ranks are always a permutation", "[select]") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<RankEntry> entries;
    for (FamilyId fam : kAllFamilies) {
      entries.push_back({fam, shape_count(fam) + 2, unif(rng)});
    }
    auto ranks = rank_scores(entries, trial % 2 == 0);
    std::sort(ranks.begin(), ranks.end());
    std::vector<int> expect(10);
    std::iota(expect.begin(), expect.end(), 1);
    CHECK(ranks == expect);
  }
}

TEST_CASE("selection table invariants", "[select]") {
  const auto fx = make_fixture(1);
  const auto table = build_selection("S", fx.models, fx.gofs, fx.scores);
  REQUIRE(table.families.size() == 10);
  REQUIRE(table.criteria.size() == 5);
  REQUIRE(table.per_criterion_best.size() == 5);

  // Winner minimizes the cumulative rank.
  int win_cum = 0;
  for (std::size_t i = 0; i < 10; ++i) {
    if (table.families[i] == table.winner) win_cum = table.cumulative[i];
  }
  for (int c : table.cumulative) CHECK(win_cum <= c);

  // Each criterion's column is a permutation of 1..10.
  for (std::size_t c = 0; c < table.criteria.size(); ++c) {
    std::vector<int> col;
    for (std::size_t i = 0; i < 10; ++i) col.push_back(table.ranks[i][c]);
    std::sort(col.begin(), col.end());
    std::vector<int> expect(10);
    std::iota(expect.begin(), expect.end(), 1);
    CHECK(col == expect);
  }
}

TEST_CASE("a sweep of rank 1s guarantees the win", "[select]") {
  auto fx = make_fixture(2);
  // Make weibull the best under everything.
  for (std::size_t i = 0; i < fx.models.size(); ++i) {
    if (fx.models[i].family == FamilyId::weibull) {
      fx.gofs[i].ks_p = fx.gofs[i].ad_p = fx.gofs[i].chi2_p = 0.999;
      fx.scores[i].aicc = fx.scores[i].bic = 1.0;
    }
  }
  const auto table = build_selection("S", fx.models, fx.gofs, fx.scores);
  CHECK(table.winner == FamilyId::weibull);
  for (std::size_t i = 0; i < 10; ++i) {
    if (table.families[i] == FamilyId::weibull) {
      CHECK(table.cumulative[i] == 5);
    }
  }
}

TEST_CASE("uniform scores fall back to parameters then name", "[select]") {
  auto fx = make_fixture(3);
  for (std::size_t i = 0; i < fx.models.size(); ++i) {
    fx.gofs[i].ks_p = fx.gofs[i].ad_p = fx.gofs[i].chi2_p = 0.5;
    fx.scores[i].aicc = fx.scores[i].bic = 123.0;
  }
  const auto table = build_selection("S", fx.models, fx.gofs, fx.scores);
  // Two 2-parameter families; gumbel beats normal alphabetically.
  CHECK(table.winner == FamilyId::gumbel);
}

TEST_CASE("monotone transforms of the scores leave the table unchanged",
          "[select]") {
  const auto fx = make_fixture(4);
  const auto base = build_selection("S", fx.models, fx.gofs, fx.scores);

  auto cubed = fx;
  for (auto& g : cubed.gofs) {
    g.ks_p = std::pow(g.ks_p, 3.0);
    g.ad_p = std::pow(g.ad_p, 3.0);
    g.chi2_p = std::pow(g.chi2_p, 3.0);
  }
  const auto transformed =
      build_selection("S", cubed.models, cubed.gofs, cubed.scores);
  CHECK(transformed == base);
}

TEST_CASE("winner is stable under input permutation", "[select]") {
  const auto fx = make_fixture(5);
  const auto base = build_selection("S", fx.models, fx.gofs, fx.scores);

  std::vector<std::size_t> perm(10);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(perm.begin(), perm.end(), rng);
    Fixture shuffled;
    for (std::size_t i : perm) {
      shuffled.models.push_back(fx.models[i]);
      shuffled.gofs.push_back(fx.gofs[i]);
      shuffled.scores.push_back(fx.scores[i]);
    }
    const auto table =
        build_selection("S", shuffled.models, shuffled.gofs, shuffled.scores);
    CHECK(table.winner == base.winner);
    CHECK(table.per_criterion_best == base.per_criterion_best);
  }
}

TEST_CASE("criteria subsets drive the aggregation", "[select]") {
  const auto fx = make_fixture(6);
  SelectionOptions opt;
  opt.criteria = {Criterion::ks, Criterion::ad, Criterion::chi2,
                  Criterion::aicc};
  const auto table = build_selection("S", fx.models, fx.gofs, fx.scores, opt);
  CHECK(table.criteria.size() == 4);
  for (const auto& row : table.ranks) CHECK(row.size() == 4);
  const int total =
      std::accumulate(table.cumulative.begin(), table.cumulative.end(), 0);
  CHECK(total == 4 * 55);  // four permutations of 1..10
}

TEST_CASE("chi2 column can rank by statistic", "[select]") {
  auto fx = make_fixture(7);
  SelectionOptions opt;
  opt.criteria = {Criterion::chi2};
  opt.chi2_rank_by_statistic = true;
  const auto table = build_selection("S", fx.models, fx.gofs, fx.scores, opt);
  // Lowest chi2/dof must be rank 1.
  std::size_t best = 0;
  for (std::size_t i = 0; i < 10; ++i) {
    if (fx.gofs[i].chi2 < fx.gofs[best].chi2) best = i;
  }
  CHECK(table.per_criterion_best[0] == fx.models[best].family);
}
