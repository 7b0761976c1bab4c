#pragma once

#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "distsel/csv.hpp"
#include "distsel/report.hpp"
#include "distsel/select.hpp"
#include "distsel/svg.hpp"
#include "distsel/version.hpp"

// End-to-end run: ingest -> fit x10 -> gof -> criteria -> select ->
// lmoments -> report, for every station. The (station x family) fits are
// dispatched to a worker pool and merged in deterministic order, so output
// is independent of scheduling. All results are computed before any file is
// written; an input failure therefore leaves no partial output.

namespace distsel {

struct PipelineConfig {
  CsvFormat format = CsvFormat::long_form;
  int n_bins = 100;
  bool equal_width_bins = false;
  std::vector<Criterion> criteria{kAllCriteria.begin(), kAllCriteria.end()};
  bool aicc_paper_literal = false;
  bool chi2_rank_by_statistic = false;
  PValueMode pvalue_mode = PValueMode::asymptotic;
  int bootstrap_b = 200;
  bool ad_stephens = false;
  FitConfig fit;
  std::uint64_t seed = 42;
  int jobs = 0;  // 0 = hardware concurrency
};

namespace detail {

struct FitTask {
  std::size_t station = 0;
  FamilyId family = FamilyId::normal;
};

struct FitOutcome {
  FittedModel model;
  GofResult gof;
};

template <class Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
  unsigned workers = jobs > 0 ? static_cast<unsigned>(jobs)
                              : std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = std::min<unsigned>(workers, static_cast<unsigned>(count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) break;
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {  // rethrow the first failure in task order
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace detail

inline std::vector<StationReport> analyze(
    const std::vector<StationSeries>& stations, const PipelineConfig& config) {
  if (stations.empty()) {
    raise(errc::empty_sample, "analyze: no stations in input");
  }

  std::vector<detail::FitTask> tasks;
  tasks.reserve(stations.size() * kAllFamilies.size());
  for (std::size_t s = 0; s < stations.size(); ++s) {
    for (FamilyId f : kAllFamilies) tasks.push_back({s, f});
  }

  std::vector<std::vector<double>> values(stations.size());
  for (std::size_t s = 0; s < stations.size(); ++s) {
    values[s] = stations[s].values();
  }

  std::vector<detail::FitOutcome> outcomes(tasks.size());
  detail::parallel_for(tasks.size(), config.jobs, [&](std::size_t i) {
    const auto& task = tasks[i];
    const auto& series = stations[task.station];
    const std::span<const double> data(values[task.station]);
    const std::uint64_t task_seed =
        derive_seed(config.seed, hash_tag(series.station),
                    static_cast<std::uint64_t>(task.family));
    try {
      FitConfig fit_cfg = config.fit;
      fit_cfg.seed = derive_seed(task_seed, hash_tag("fit"));
      FittedModel model = fit_mle(task.family, data, fit_cfg);

      GofConfig gof_cfg;
      gof_cfg.n_bins = config.n_bins;
      gof_cfg.equal_width_bins = config.equal_width_bins;
      gof_cfg.pvalue_mode = config.pvalue_mode;
      gof_cfg.bootstrap_b = config.bootstrap_b;
      gof_cfg.ad_stephens = config.ad_stephens;
      gof_cfg.seed = derive_seed(task_seed, hash_tag("gof"));
      gof_cfg.fit = fit_cfg;
      GofResult gof = evaluate_gof(data, model, gof_cfg);
      outcomes[i] = {std::move(model), gof};
    } catch (const Error& e) {
      raise(e.code(), "station " + series.station + ", family " +
                          std::string(family_name(task.family)) + ": " +
                          e.what());
    }
  });

  std::vector<StationReport> reports(stations.size());
  for (std::size_t s = 0; s < stations.size(); ++s) {
    StationReport& rep = reports[s];
    rep.station = stations[s].station;
    rep.n = values[s].size();
    try {
      rep.summary = summarize(std::span<const double>(values[s]));
      rep.lmoments = sample_lmoments(std::span<const double>(values[s]));
    } catch (const Error& e) {
      raise(e.code(), "station " + rep.station + ": " + e.what());
    }
    rep.histogram = compute_histogram(std::span<const double>(values[s]));

    std::vector<FittedModel> models;
    std::vector<GofResult> gofs;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      if (tasks[i].station != s) continue;
      models.push_back(outcomes[i].model);
      gofs.push_back(outcomes[i].gof);
    }
    const auto scores = score_models(models, config.aicc_paper_literal);

    SelectionOptions sel;
    sel.criteria = config.criteria;
    sel.chi2_rank_by_statistic = config.chi2_rank_by_statistic;
    rep.selection = build_selection(rep.station, models, gofs, scores, sel);

    rep.models.reserve(models.size());
    for (std::size_t i = 0; i < models.size(); ++i) {
      rep.models.push_back({models[i], gofs[i], scores[i]});
    }
  }
  return reports;
}

inline json config_to_json(const PipelineConfig& c) {
  json criteria = json::array();
  for (auto crit : c.criteria) criteria.push_back(criterion_name(crit));
  return json{{"format", c.format == CsvFormat::wide_form ? "wide" : "long"},
              {"bins", c.n_bins},
              {"equal_width_bins", c.equal_width_bins},
              {"criteria", criteria},
              {"aicc_paper_literal", c.aicc_paper_literal},
              {"chi2_rank_by_statistic", c.chi2_rank_by_statistic},
              {"pvalue_mode", c.pvalue_mode == PValueMode::bootstrap
                                  ? "bootstrap"
                                  : "asymptotic"},
              {"bootstrap_b", c.bootstrap_b},
              {"ad_stephens", c.ad_stephens},
              {"max_iter", c.fit.max_iter},
              {"tol", c.fit.tol},
              {"raw_support", c.fit.raw_support},
              {"seed", c.seed}};
}

inline std::string sanitize_filename(const std::string& name) {
  std::string out;
  for (char c : name) {
    out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  }
  return out.empty() ? "station" : out;
}

// Writes report.json, manifest.json, the four tables and one SVG per
// station into `dir`.
inline void write_run(const std::vector<StationReport>& reports,
                      const PipelineConfig& config,
                      const std::string& input_name,
                      const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) raise(errc::io_failure, "cannot create " + dir.string());

  {
    json manifest{{"tool", "distsel"},
                  {"version", kVersion},
                  {"input", input_name},
                  {"stations", reports.size()},
                  {"config", config_to_json(config)}};
    auto out = detail::open_out(dir / "manifest.json");
    out << manifest.dump(2) << '\n';
  }
  {
    json j = reports;
    auto out = detail::open_out(dir / "report.json");
    out << j.dump(2) << '\n';
  }
  {
    // Full per-(station, family) score sheet; 6 significant digits.
    auto out = detail::open_out(dir / "scores.csv");
    out << "station,family,k_params,n,converged,log_likelihood,"
           "ks_d,ks_p,ad_a2,ad_p,chi2,chi2_dof,chi2_p,"
           "aic,aicc,bic,delta_aicc,delta_bic\n";
    for (const auto& r : reports) {
      for (const auto& m : r.models) {
        out << r.station << ',' << family_name(m.model.family) << ','
            << m.model.k_params << ',' << m.model.n << ','
            << (m.model.converged ? 1 : 0) << ','
            << detail::fmt6(m.model.log_likelihood) << ','
            << detail::fmt6(m.gof.ks_d) << ',' << detail::fmt6(m.gof.ks_p)
            << ',' << detail::fmt6(m.gof.ad_a2) << ','
            << detail::fmt6(m.gof.ad_p) << ',' << detail::fmt6(m.gof.chi2)
            << ',' << m.gof.chi2_dof << ',' << detail::fmt6(m.gof.chi2_p)
            << ',' << detail::fmt6(m.criteria.aic) << ','
            << detail::fmt6(m.criteria.aicc) << ','
            << detail::fmt6(m.criteria.bic) << ','
            << detail::fmt6(m.criteria.delta_aicc) << ','
            << detail::fmt6(m.criteria.delta_bic) << '\n';
      }
    }
  }
  render_tables(reports, dir);
  for (const auto& r : reports) {
    render_fit_plot(r, dir / (sanitize_filename(r.station) + "_fits.svg"));
  }
}

// CLI entry: returns the process exit code; on failure prints a
// machine-readable error summary to stderr and writes nothing.
inline int run_pipeline(const std::filesystem::path& input,
                        const PipelineConfig& config,
                        const std::filesystem::path& out_dir) {
  try {
    const auto stations = parse_station_csv(input, config.format);
    const auto reports = analyze(stations, config);
    write_run(reports, config, input.filename().string(), out_dir);
    return 0;
  } catch (const Error& e) {
    json err{{"error", {{"code", errc_name(e.code())}, {"message", e.what()}}}};
    std::cerr << err.dump() << '\n';
    return 2;
  } catch (const std::exception& e) {
    json err{{"error", {{"code", "internal"}, {"message", e.what()}}}};
    std::cerr << err.dump() << '\n';
    return 3;
  }
}

}  // namespace distsel
