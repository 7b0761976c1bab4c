#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "distsel/distribution.hpp"
#include "distsel/report.hpp"

// Station fit plot: density-normalized histogram with the fitted PDF of
// every usable model overlaid, written as a standalone SVG.

namespace distsel {

namespace detail {

inline const char* kPalette[10] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

inline constexpr int kCurvePoints = 256;  // per-model PDF polyline resolution

inline void render_fit_plot(const StationReport& report,
                            const std::filesystem::path& path) {
  if (report.histogram.edges.size() < 2) {
    raise(errc::empty_sample, "render_fit_plot: empty histogram");
  }
  const double x_lo = report.histogram.edges.front();
  const double x_hi = report.histogram.edges.back();

  // Sample every model's PDF on a common grid; models whose density cannot
  // be evaluated (degenerate fits) are skipped.
  struct Curve {
    std::string name;
    std::vector<double> y;
  };
  std::vector<Curve> curves;
  std::vector<double> grid(kCurvePoints);
  for (int i = 0; i < kCurvePoints; ++i) {
    grid[i] = x_lo + (x_hi - x_lo) * static_cast<double>(i) /
                         static_cast<double>(kCurvePoints - 1);
  }
  for (const auto& mr : report.models) {
    if (!params_valid(mr.model.family, mr.model.params)) {
      std::cerr << "distsel: skipping degenerate fit " << report.station
                << "/" << family_name(mr.model.family) << " in plot\n";
      continue;
    }
    const Dist dist(mr.model.family, mr.model.params);
    Curve c{std::string(family_name(mr.model.family)), {}};
    c.y.resize(kCurvePoints);
    bool usable = true;
    for (int i = 0; i < kCurvePoints; ++i) {
      c.y[i] = dist.pdf(grid[i]);
      if (!std::isfinite(c.y[i])) usable = false;
    }
    if (!usable) {
      std::cerr << "distsel: skipping degenerate fit " << report.station
                << "/" << family_name(mr.model.family) << " in plot\n";
      continue;
    }
    curves.push_back(std::move(c));
  }

  // Boundary-singular densities (shape < 1) would squash everything else,
  // so the y-range tracks the histogram and the bulk of the curves; spikes
  // are clipped at the top of the plot.
  double y_max = 0.0;
  for (double d : report.histogram.density) y_max = std::max(y_max, d);
  std::vector<double> curve_values;
  for (const auto& c : curves) {
    curve_values.insert(curve_values.end(), c.y.begin(), c.y.end());
  }
  if (!curve_values.empty()) {
    const std::size_t p98 = curve_values.size() * 98 / 100;
    std::nth_element(curve_values.begin(), curve_values.begin() + p98,
                     curve_values.end());
    y_max = std::max(y_max, curve_values[p98]);
  }
  if (y_max <= 0.0) y_max = 1.0;
  y_max *= 1.15;

  const double width = 960, height = 600;
  const double ml = 75, mr = 185, mt = 45, mb = 60;
  const double pw = width - ml - mr, ph = height - mt - mb;
  auto sx = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * pw; };
  auto sy = [&](double y) { return mt + ph - y / y_max * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << ml << "\" y=\"28\" font-family=\"sans-serif\""
      << " font-size=\"18\">" << detail::xml_escape(report.station)
      << " &#8212; fitted distributions</text>\n";

  // Histogram bars.
  const auto& h = report.histogram;
  for (std::size_t j = 0; j + 1 < h.edges.size(); ++j) {
    if (h.density[j] <= 0.0) continue;
    const double x0 = sx(h.edges[j]);
    const double x1 = sx(h.edges[j + 1]);
    const double y0 = sy(h.density[j]);
    svg << "<rect x=\"" << detail::svg_num(x0) << "\" y=\""
        << detail::svg_num(y0) << "\" width=\"" << detail::svg_num(x1 - x0)
        << "\" height=\"" << detail::svg_num(mt + ph - y0)
        << "\" fill=\"#9ecae1\" stroke=\"#3182bd\" stroke-width=\"0.5\"/>\n";
  }

  // Axes with ticks.
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\""
      << ml + pw << "\" y2=\"" << mt + ph
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << mt + ph << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (int tick = 0; tick <= 5; ++tick) {
    const double tx = x_lo + (x_hi - x_lo) * tick / 5.0;
    const double ty = y_max * tick / 5.0;
    char label[32];
    svg << "<line x1=\"" << detail::svg_num(sx(tx)) << "\" y1=\"" << mt + ph
        << "\" x2=\"" << detail::svg_num(sx(tx)) << "\" y2=\"" << mt + ph + 5
        << "\" stroke=\"black\"/>\n";
    std::snprintf(label, sizeof label, "%.4g", tx);
    svg << "<text x=\"" << detail::svg_num(sx(tx)) << "\" y=\"" << mt + ph + 20
        << "\" font-family=\"sans-serif\" font-size=\"11\""
        << " text-anchor=\"middle\">" << label << "</text>\n";
    svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << detail::svg_num(sy(ty))
        << "\" x2=\"" << ml << "\" y2=\"" << detail::svg_num(sy(ty))
        << "\" stroke=\"black\"/>\n";
    std::snprintf(label, sizeof label, "%.3g", ty);
    svg << "<text x=\"" << ml - 8 << "\" y=\"" << detail::svg_num(sy(ty) + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\""
        << " text-anchor=\"end\">" << label << "</text>\n";
  }
  svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 15
      << "\" font-family=\"sans-serif\" font-size=\"13\""
      << " text-anchor=\"middle\">monthly precipitation (mm)</text>\n";
  svg << "<text x=\"20\" y=\"" << mt + ph / 2
      << "\" font-family=\"sans-serif\" font-size=\"13\""
      << " text-anchor=\"middle\" transform=\"rotate(-90 20 " << mt + ph / 2
      << ")\">density</text>\n";

  // PDF curves and legend.
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const char* color = detail::kPalette[k % 10];
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (int i = 0; i < kCurvePoints; ++i) {
      if (i) svg << ' ';
      svg << detail::svg_num(sx(grid[i])) << ','
          << detail::svg_num(sy(std::min(curves[k].y[i], y_max)));
    }
    svg << "\"/>\n";
    const double ly = mt + 14 + 18.0 * static_cast<double>(k);
    svg << "<line x1=\"" << ml + pw + 15 << "\" y1=\"" << ly << "\" x2=\""
        << ml + pw + 40 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << ml + pw + 46 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << curves[k].name
        << "</text>\n";
  }
  svg << "</svg>\n";

  std::ofstream out(path, std::ios::binary);
  if (!out) raise(errc::io_failure, "cannot write " + path.string());
  out << svg.str();
}

}  // namespace distsel
