// Copyright 2026 The nordheim-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "io.hpp"

namespace nordheim::cli {
namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kMargin = 60.0;

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double x) {
    if (!std::isfinite(x)) return;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  // Pads degenerate ranges so single points still map somewhere sensible.
  void settle() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
      const double pad = std::max(1e-3, 0.05 * std::abs(hi));
      lo -= pad;
      hi += pad;
    }
  }
};

std::string num(double x) { return format_number(x, 6); }

// Maps data coordinates into a panel with origin at (x0, y0 + h).
struct Panel {
  double x0, y0, w, h;
  Range xr, yr;
  double px(double x) const { return x0 + (x - xr.lo) / (xr.hi - xr.lo) * w; }
  double py(double y) const { return y0 + h - (y - yr.lo) / (yr.hi - yr.lo) * h; }
};

std::string header(double width, double height) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" +
         num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) +
         "\" font-family=\"sans-serif\" font-size=\"11\">\n"
         "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string axes(const Panel& p, const std::string& xlabel, const std::string& ylabel,
                 bool log_x, bool log_y) {
  std::string s;
  s += "<rect x=\"" + num(p.x0) + "\" y=\"" + num(p.y0) + "\" width=\"" + num(p.w) +
       "\" height=\"" + num(p.h) + "\" fill=\"none\" stroke=\"black\"/>\n";
  auto label = [](double v, bool log) { return log ? "1e" + num(v) : num(v); };
  for (int i = 0; i <= 4; ++i) {
    const double fx = p.xr.lo + (p.xr.hi - p.xr.lo) * i / 4.0;
    const double fy = p.yr.lo + (p.yr.hi - p.yr.lo) * i / 4.0;
    s += "<text x=\"" + num(p.px(fx)) + "\" y=\"" + num(p.y0 + p.h + 14) +
         "\" text-anchor=\"middle\">" + label(fx, log_x) + "</text>\n";
    s += "<text x=\"" + num(p.x0 - 4) + "\" y=\"" + num(p.py(fy) + 4) +
         "\" text-anchor=\"end\">" + label(fy, log_y) + "</text>\n";
  }
  s += "<text x=\"" + num(p.x0 + p.w / 2) + "\" y=\"" + num(p.y0 + p.h + 30) +
       "\" text-anchor=\"middle\">" + xlabel + "</text>\n";
  s += "<text x=\"" + num(p.x0 - 45) + "\" y=\"" + num(p.y0 + p.h / 2) +
       "\" text-anchor=\"middle\" transform=\"rotate(-90 " + num(p.x0 - 45) + " " +
       num(p.y0 + p.h / 2) + ")\">" + ylabel + "</text>\n";
  return s;
}

std::string polyline(const Panel& p, const std::vector<double>& xs, const std::vector<double>& ys,
                     const std::string& color, const std::string& extra = "") {
  std::string pts;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) continue;
    pts += num(p.px(xs[i])) + "," + num(p.py(ys[i])) + " ";
  }
  std::string s = "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" " +
                  extra + " points=\"" + pts + "\"/>\n";
  if (xs.size() == 1) {
    s += "<circle cx=\"" + num(p.px(xs[0])) + "\" cy=\"" + num(p.py(ys[0])) +
         "\" r=\"3\" fill=\"" + color + "\"/>\n";
  }
  return s;
}

std::string legend(double x, double y, const std::vector<std::pair<std::string, std::string>>& items) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const double yy = y + 14.0 * static_cast<double>(i);
    s += "<line x1=\"" + num(x) + "\" y1=\"" + num(yy - 4) + "\" x2=\"" + num(x + 18) +
         "\" y2=\"" + num(yy - 4) + "\" stroke=\"" + items[i].second + "\" stroke-width=\"2\"/>\n";
    s += "<text x=\"" + num(x + 22) + "\" y=\"" + num(yy) + "\">" + items[i].first + "</text>\n";
  }
  return s;
}

}  // namespace

std::string plot_moments(const std::vector<MomentReport>& series) {
  if (series.empty()) throw std::invalid_argument("plot: empty time series");
  std::vector<double> t, m, e, s, sup;
  const auto& first = series.front();
  auto rel = [](double x, double x0) { return x0 != 0.0 ? x / x0 : x; };
  for (const auto& r : series) {
    t.push_back(r.t);
    m.push_back(rel(r.mass, first.mass));
    e.push_back(rel(r.energy, first.energy));
    s.push_back(rel(r.entropy, first.entropy));
    sup.push_back(r.f_sup > 0.0 ? std::log10(r.f_sup) : NAN);
  }
  const double panel_h = (kHeight * 1.6 - 3 * kMargin) / 2;
  Panel top{kMargin, 20, kWidth - 1.5 * kMargin, panel_h, {}, {}};
  for (double x : t) top.xr.add(x);
  for (const auto* v : {&m, &e, &s}) {
    for (double y : *v) top.yr.add(y);
  }
  top.xr.settle();
  top.yr.settle();
  Panel bottom = top;
  bottom.y0 = top.y0 + panel_h + kMargin;
  bottom.yr = Range{};
  for (double y : sup) bottom.yr.add(y);
  bottom.yr.settle();

  std::string svg = header(kWidth, kHeight * 1.6);
  svg += axes(top, "t", "relative to t = 0", false, false);
  svg += polyline(top, t, m, "#1f77b4");
  svg += polyline(top, t, e, "#d62728", "stroke-dasharray=\"6 3\"");
  svg += polyline(top, t, s, "#2ca02c");
  svg += legend(top.x0 + 10, top.y0 + 16, {{"M", "#1f77b4"}, {"E", "#d62728"}, {"S", "#2ca02c"}});
  svg += axes(bottom, "t", "sup f", false, true);
  svg += polyline(bottom, t, sup, "#9467bd");
  svg += "</svg>\n";
  return svg;
}

std::string plot_distribution_loglog(const Distribution& d) {
  std::vector<double> x, y;
  const auto& grid = d.grid();
  for (std::size_t i = 1; i < d.size(); ++i) {
    if (d[i] > 0.0) {
      x.push_back(std::log10(grid.node(i)));
      y.push_back(std::log10(d[i]));
    }
  }
  if (x.empty()) throw std::invalid_argument("plot: distribution has no positive values");
  Panel p{kMargin, 20, kWidth - 1.5 * kMargin, kHeight - 2 * kMargin, {}, {}};
  for (double v : x) p.xr.add(v);
  for (double v : y) p.yr.add(v);
  p.xr.settle();
  p.yr.settle();
  // Guide through the first point with slope -7/6, clipped to the y range.
  const double slope = -7.0 / 6.0;
  std::vector<double> gx{x.front(), p.xr.hi};
  std::vector<double> gy{y.front(), y.front() + slope * (p.xr.hi - x.front())};
  if (gy[1] < p.yr.lo) {
    gx[1] = x.front() + (p.yr.lo - y.front()) / slope;
    gy[1] = p.yr.lo;
  }
  std::string svg = header(kWidth, kHeight);
  svg += axes(p, "energy", "f", true, true);
  svg += polyline(p, x, y, "#1f77b4");
  svg += polyline(p, gx, gy, "#7f7f7f", "stroke-dasharray=\"4 4\" class=\"guide\"");
  svg += legend(p.x0 + p.w - 150, p.y0 + 16, {{"f", "#1f77b4"}, {"slope -7/6", "#7f7f7f"}});
  svg += "</svg>\n";
  return svg;
}

std::string plot_dyadic_mass(const ConcentrationReport& report) {
  if (report.scales.empty()) throw std::invalid_argument("plot: empty concentration report");
  std::vector<double> ell, mass, threshold;
  for (const auto& s : report.scales) {
    ell.push_back(static_cast<double>(s.ell));
    mass.push_back(s.mass > 0.0 ? std::log10(s.mass) : NAN);
    threshold.push_back(s.threshold > 0.0 ? std::log10(s.threshold) : NAN);
  }
  Panel p{kMargin, 20, kWidth - 1.5 * kMargin, kHeight - 2 * kMargin, {}, {}};
  for (double v : ell) p.xr.add(v);
  for (double v : mass) p.yr.add(v);
  for (double v : threshold) p.yr.add(v);
  p.xr.settle();
  p.yr.settle();
  std::string svg = header(kWidth, kHeight);
  svg += axes(p, "level", "mass below 2^-level", false, true);
  svg += polyline(p, ell, mass, "#1f77b4");
  svg += polyline(p, ell, threshold, "#d62728", "stroke-dasharray=\"6 3\"");
  for (std::size_t i = 0; i < ell.size(); ++i) {
    if (!std::isfinite(mass[i])) continue;
    const bool in_b = report.scales[i].in_b;
    svg += "<circle cx=\"" + num(p.px(ell[i])) + "\" cy=\"" + num(p.py(mass[i])) +
           "\" r=\"3\" fill=\"" + (in_b ? "#1f77b4" : "white") + "\" stroke=\"#1f77b4\"/>\n";
  }
  svg += legend(p.x0 + 10, p.y0 + 16, {{"mass", "#1f77b4"}, {"threshold", "#d62728"}});
  svg += "</svg>\n";
  return svg;
}

}  // namespace nordheim::cli
