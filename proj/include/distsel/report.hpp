#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "distsel/criteria.hpp"
#include "distsel/errors.hpp"
#include "distsel/fit.hpp"
#include "distsel/gof.hpp"
#include "distsel/histogram.hpp"
#include "distsel/lmoments.hpp"
#include "distsel/select.hpp"
#include "distsel/series.hpp"

// Per-station report assembly plus the CSV/JSON table writers. Four table
// files mirror the summary-statistics, per-criterion winners, best-fit and
// L-moment tables; the JSON report round-trips every field.

namespace distsel {

struct ModelReport {
  FittedModel model;
  GofResult gof;
  CriterionScores criteria;

  bool operator==(const ModelReport&) const = default;
};

struct StationReport {
  std::string station;
  std::size_t n = 0;
  SummaryStats summary;
  std::vector<ModelReport> models;
  SelectionTable selection;
  LMomentSet lmoments;
  Histogram histogram;

  bool operator==(const StationReport&) const = default;
};

// --- JSON serialization -----------------------------------------------

using json = nlohmann::json;

inline void to_json(json& j, const SummaryStats& s) {
  j = json{{"min", s.min},           {"max", s.max},
           {"mean", s.mean},         {"sd", s.sd},
           {"cv", s.cv},             {"skewness", s.skewness},
           {"kurtosis", s.kurtosis}};
}

inline void from_json(const json& j, SummaryStats& s) {
  j.at("min").get_to(s.min);
  j.at("max").get_to(s.max);
  j.at("mean").get_to(s.mean);
  j.at("sd").get_to(s.sd);
  j.at("cv").get_to(s.cv);
  j.at("skewness").get_to(s.skewness);
  j.at("kurtosis").get_to(s.kurtosis);
}

inline void to_json(json& j, const ParamVector& p) {
  j = json{{"shapes", p.shapes}, {"loc", p.loc}, {"scale", p.scale}};
}

inline void from_json(const json& j, ParamVector& p) {
  j.at("shapes").get_to(p.shapes);
  j.at("loc").get_to(p.loc);
  j.at("scale").get_to(p.scale);
}

inline void to_json(json& j, const FittedModel& m) {
  j = json{{"family", family_name(m.family)},
           {"params", m.params},
           {"log_likelihood", m.log_likelihood},
           {"k_params", m.k_params},
           {"n", m.n},
           {"converged", m.converged}};
}

inline void from_json(const json& j, FittedModel& m) {
  m.family = family_from_name(j.at("family").get<std::string>());
  j.at("params").get_to(m.params);
  j.at("log_likelihood").get_to(m.log_likelihood);
  j.at("k_params").get_to(m.k_params);
  j.at("n").get_to(m.n);
  j.at("converged").get_to(m.converged);
}

inline void to_json(json& j, const GofResult& g) {
  j = json{{"ks_d", g.ks_d},
           {"ks_p", g.ks_p},
           {"ad_a2", g.ad_a2},
           {"ad_p", g.ad_p},
           {"chi2", g.chi2},
           {"chi2_dof", g.chi2_dof},
           {"chi2_p", g.chi2_p},
           {"n_bins_used", g.n_bins_used},
           {"p_mode",
            g.p_mode == PValueMode::bootstrap ? "bootstrap" : "asymptotic"}};
}

inline void from_json(const json& j, GofResult& g) {
  j.at("ks_d").get_to(g.ks_d);
  j.at("ks_p").get_to(g.ks_p);
  j.at("ad_a2").get_to(g.ad_a2);
  j.at("ad_p").get_to(g.ad_p);
  j.at("chi2").get_to(g.chi2);
  j.at("chi2_dof").get_to(g.chi2_dof);
  j.at("chi2_p").get_to(g.chi2_p);
  j.at("n_bins_used").get_to(g.n_bins_used);
  g.p_mode = j.at("p_mode").get<std::string>() == "bootstrap"
                 ? PValueMode::bootstrap
                 : PValueMode::asymptotic;
}

inline void to_json(json& j, const CriterionScores& c) {
  j = json{{"aic", c.aic},
           {"aicc", c.aicc},
           {"bic", c.bic},
           {"delta_aicc", c.delta_aicc},
           {"delta_bic", c.delta_bic}};
}

inline void from_json(const json& j, CriterionScores& c) {
  j.at("aic").get_to(c.aic);
  j.at("aicc").get_to(c.aicc);
  j.at("bic").get_to(c.bic);
  j.at("delta_aicc").get_to(c.delta_aicc);
  j.at("delta_bic").get_to(c.delta_bic);
}

inline void to_json(json& j, const SelectionTable& t) {
  json families = json::array();
  for (auto f : t.families) families.push_back(family_name(f));
  json criteria = json::array();
  for (auto c : t.criteria) criteria.push_back(criterion_name(c));
  json best = json::object();
  for (std::size_t c = 0; c < t.criteria.size(); ++c) {
    best[std::string(criterion_name(t.criteria[c]))] =
        family_name(t.per_criterion_best[c]);
  }
  json ranks = json::object();
  json cumulative = json::object();
  for (std::size_t i = 0; i < t.families.size(); ++i) {
    ranks[std::string(family_name(t.families[i]))] = t.ranks[i];
    cumulative[std::string(family_name(t.families[i]))] = t.cumulative[i];
  }
  j = json{{"station", t.station},
           {"families", families},
           {"criteria", criteria},
           {"ranks", ranks},
           {"per_criterion_best", best},
           {"cumulative", cumulative},
           {"winner", family_name(t.winner)}};
}

inline void from_json(const json& j, SelectionTable& t) {
  t.station = j.at("station").get<std::string>();
  t.families.clear();
  for (const auto& f : j.at("families")) {
    t.families.push_back(family_from_name(f.get<std::string>()));
  }
  t.criteria.clear();
  for (const auto& c : j.at("criteria")) {
    t.criteria.push_back(criterion_from_name(c.get<std::string>()));
  }
  t.ranks.clear();
  t.cumulative.clear();
  for (auto f : t.families) {
    const std::string key(family_name(f));
    t.ranks.push_back(j.at("ranks").at(key).get<std::vector<int>>());
    t.cumulative.push_back(j.at("cumulative").at(key).get<int>());
  }
  t.per_criterion_best.clear();
  for (auto c : t.criteria) {
    t.per_criterion_best.push_back(family_from_name(
        j.at("per_criterion_best").at(std::string(criterion_name(c)))
            .get<std::string>()));
  }
  t.winner = family_from_name(j.at("winner").get<std::string>());
}

inline void to_json(json& j, const LMomentSet& m) {
  j = json{{"l1", m.l1},     {"l2", m.l2},     {"l3", m.l3},
           {"l4", m.l4},     {"tau3", m.tau3}, {"tau4", m.tau4}};
}

inline void from_json(const json& j, LMomentSet& m) {
  j.at("l1").get_to(m.l1);
  j.at("l2").get_to(m.l2);
  j.at("l3").get_to(m.l3);
  j.at("l4").get_to(m.l4);
  j.at("tau3").get_to(m.tau3);
  j.at("tau4").get_to(m.tau4);
}

inline void to_json(json& j, const Histogram& h) {
  j = json{{"edges", h.edges}, {"counts", h.counts}, {"density", h.density}};
}

inline void from_json(const json& j, Histogram& h) {
  j.at("edges").get_to(h.edges);
  j.at("counts").get_to(h.counts);
  j.at("density").get_to(h.density);
}

inline void to_json(json& j, const ModelReport& m) {
  j = json{{"model", m.model}, {"gof", m.gof}, {"criteria", m.criteria}};
}

inline void from_json(const json& j, ModelReport& m) {
  j.at("model").get_to(m.model);
  j.at("gof").get_to(m.gof);
  j.at("criteria").get_to(m.criteria);
}

inline void to_json(json& j, const StationReport& r) {
  j = json{{"station", r.station},   {"n", r.n},
           {"summary", r.summary},   {"models", r.models},
           {"selection", r.selection}, {"lmoments", r.lmoments},
           {"histogram", r.histogram}};
}

inline void from_json(const json& j, StationReport& r) {
  j.at("station").get_to(r.station);
  j.at("n").get_to(r.n);
  j.at("summary").get_to(r.summary);
  j.at("models").get_to(r.models);
  j.at("selection").get_to(r.selection);
  j.at("lmoments").get_to(r.lmoments);
  j.at("histogram").get_to(r.histogram);
}

// --- CSV tables ---------------------------------------------------------

namespace detail {

// Scores are printed with 6 significant digits in the CSV tables.
inline std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) raise(errc::io_failure, "cannot write " + p.string());
  return out;
}

}  // namespace detail

// Writes the four station tables into `dir`; rows follow the input order.
inline void render_tables(const std::vector<StationReport>& reports,
                          const std::filesystem::path& dir) {
  if (reports.empty()) {
    raise(errc::empty_sample, "render_tables: no station reports");
  }
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) raise(errc::io_failure, "cannot create " + dir.string());

  {
    auto out = detail::open_out(dir / "table2_summary.csv");
    out << "station,n,min,max,mean,sd,cv,skewness,kurtosis\n";
    for (const auto& r : reports) {
      const auto& s = r.summary;
      out << r.station << ',' << r.n << ',' << detail::fmt6(s.min) << ','
          << detail::fmt6(s.max) << ',' << detail::fmt6(s.mean) << ','
          << detail::fmt6(s.sd) << ',' << detail::fmt6(s.cv) << ','
          << detail::fmt6(s.skewness) << ',' << detail::fmt6(s.kurtosis)
          << '\n';
    }
  }
  {
    auto out = detail::open_out(dir / "table3_criterion_best.csv");
    out << "station";
    for (auto c : reports.front().selection.criteria) {
      out << ',' << criterion_name(c);
    }
    out << '\n';
    for (const auto& r : reports) {
      out << r.station;
      for (auto f : r.selection.per_criterion_best) out << ',' << family_name(f);
      out << '\n';
    }
  }
  {
    auto out = detail::open_out(dir / "table4_best_fit.csv");
    out << "station,best_fit\n";
    for (const auto& r : reports) {
      out << r.station << ',' << family_name(r.selection.winner) << '\n';
    }
  }
  {
    auto out = detail::open_out(dir / "table5_lmoments.csv");
    out << "station,best_fit,l1,l2,l3,l4,tau3,tau4\n";
    for (const auto& r : reports) {
      const auto& m = r.lmoments;
      out << r.station << ',' << family_name(r.selection.winner) << ','
          << detail::fmt6(m.l1) << ',' << detail::fmt6(m.l2) << ','
          << detail::fmt6(m.l3) << ',' << detail::fmt6(m.l4) << ','
          << detail::fmt6(m.tau3) << ',' << detail::fmt6(m.tau4) << '\n';
    }
  }
}

}  // namespace distsel
