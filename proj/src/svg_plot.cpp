#include "ufs/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "json.hpp"

#include "ufs/analytics.hpp"

namespace ufs {

namespace {

struct SeriesPoint {
  double x;
  double y;
  double lo = std::nan("");
  double hi = std::nan("");
};

struct Series {
  std::string name;
  std::string color;
  std::string dash;  // SVG stroke-dasharray, empty for solid
  std::vector<SeriesPoint> points;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void collect_column(const CsvData& data, const std::string& name, const std::string& lo_name,
                    const std::string& hi_name, const std::string& color,
                    std::vector<Series>& out) {
  int xi = data.column_index("sweep_value");
  int yi = data.column_index(name);
  int li = lo_name.empty() ? -1 : data.column_index(lo_name);
  int hi = hi_name.empty() ? -1 : data.column_index(hi_name);
  if (yi < 0) return;
  Series s{name, color, "", {}};
  for (const auto& row : data.rows) {
    if (std::isnan(row[yi])) continue;
    SeriesPoint p{row[xi], row[yi]};
    if (li >= 0 && !std::isnan(row[li])) p.lo = row[li];
    if (hi >= 0 && !std::isnan(row[hi])) p.hi = row[hi];
    s.points.push_back(p);
  }
  if (!s.points.empty()) out.push_back(std::move(s));
}

// Analytic miss-probability curves across the sweep axis, from the config
// comment embedded in the CSV.
void add_overlays(const CsvData& data, std::vector<Series>& out) {
  if (data.config_json.empty()) return;
  nlohmann::json j = nlohmann::json::parse(data.config_json, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return;
  if (j.value("scheme", "") != "ufs" || !j.value("attack", false)) return;

  const std::string axis = j.value("sweep_axis", "");
  if (axis != "power_ratio_db" && axis != "phi_max" && axis != "snr_db") return;

  MissBoundInput base;
  base.antennas = j.value("M", 0);
  const int n = j.value("N", 0);
  base.segments = j.value("K", 0);
  if (base.antennas < 1 || base.segments < 1 || n < 1 || n % base.segments != 0) return;
  base.segment_length = n / base.segments;
  base.p_bob = j.value("p_bob", 1.0);
  base.p_eve = j.value("p_eve", 1.0);
  base.noise_var = j.value("noise_var", 0.0);
  base.phi_max = j.value("phi_max", 0.0);

  Series bound{"miss_bound", "#555555", "8,4", {}};
  Series lower{"miss_lower_bound", "#555555", "2,4", {}};
  int xi = data.column_index("sweep_value");
  for (const auto& row : data.rows) {
    MissBoundInput inp = base;
    const double v = row[xi];
    if (axis == "power_ratio_db") inp.p_eve = inp.p_bob * std::pow(10.0, v / 10.0);
    if (axis == "snr_db") inp.noise_var = inp.p_bob / std::pow(10.0, v / 10.0);
    if (axis == "phi_max") inp.phi_max = v;
    if (!(inp.phi_max > 0.0)) continue;
    bound.points.push_back({v, miss_prob_bound(inp).value});
    const double p_th = power_threshold(inp.antennas, inp.segment_length, inp.noise_var);
    lower.points.push_back(
        {v, miss_prob_lower_bound(inp.p_bob, p_th, inp.segment_length, inp.phi_max,
                                  inp.segments)
                .value});
  }
  if (!bound.points.empty()) out.push_back(std::move(bound));
  if (!lower.points.empty()) out.push_back(std::move(lower));
}

}  // namespace

std::string render_sweep_svg(const CsvData& data, const PlotOptions& opts) {
  std::vector<Series> series;
  collect_column(data, "miss_rate", "miss_ci_lo", "miss_ci_hi", "#c0392b", series);
  collect_column(data, "false_alarm_rate", "fa_ci_lo", "fa_ci_hi", "#8e44ad", series);
  collect_column(data, "channel_mse", "", "", "#2471a3", series);
  collect_column(data, "cfo_mse", "", "", "#1e8449", series);
  if (opts.overlay_bound) add_overlays(data, series);
  if (series.empty()) throw std::invalid_argument("render_sweep_svg: no plottable series");

  auto ty = [&](double y) { return opts.log_y ? std::log10(y) : y; };
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (auto& s : series) {
    if (opts.log_y) {
      // log scale cannot show nonpositive values
      std::erase_if(s.points, [](const SeriesPoint& p) { return !(p.y > 0.0); });
      for (auto& p : s.points) {
        if (!(p.lo > 0.0)) p.lo = std::nan("");
        if (!(p.hi > 0.0)) p.hi = std::nan("");
      }
    }
    for (const auto& p : s.points) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, ty(p.y));
      ymax = std::max(ymax, ty(p.y));
      if (!std::isnan(p.lo)) ymin = std::min(ymin, ty(p.lo));
      if (!std::isnan(p.hi)) ymax = std::max(ymax, ty(p.hi));
    }
  }
  std::erase_if(series, [](const Series& s) { return s.points.empty(); });
  if (series.empty()) throw std::invalid_argument("render_sweep_svg: nothing plottable on a log axis");
  if (xmax <= xmin) xmax = xmin + 1.0;
  if (ymax <= ymin) ymax = ymin + 1.0;
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  const double ml = 80, mr = 20, mt = 30, mb = 55;
  const double pw = opts.width - ml - mr, ph = opts.height - mt - mb;
  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return mt + (1.0 - (ty(y) - ymin) / (ymax - ymin)) * ph; };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opts.width) +
         "\" height=\"" + std::to_string(opts.height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<rect x=\"" + num(ml) + "\" y=\"" + num(mt) + "\" width=\"" + num(pw) +
         "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

  // Ticks and grid.
  for (int i = 0; i <= 5; ++i) {
    const double fx = xmin + i * (xmax - xmin) / 5.0;
    const double gx = px(fx);
    svg += "<line x1=\"" + num(gx) + "\" y1=\"" + num(mt) + "\" x2=\"" + num(gx) + "\" y2=\"" +
           num(mt + ph) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + num(gx) + "\" y=\"" + num(mt + ph + 18) +
           "\" font-size=\"11\" text-anchor=\"middle\">" + num(fx) + "</text>\n";
    const double fy = ymin + i * (ymax - ymin) / 5.0;
    const double gy = mt + (1.0 - static_cast<double>(i) / 5.0) * ph;
    svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(gy) + "\" x2=\"" + num(ml + pw) +
           "\" y2=\"" + num(gy) + "\" stroke=\"#dddddd\"/>\n";
    const double label = opts.log_y ? std::pow(10.0, fy) : fy;
    svg += "<text x=\"" + num(ml - 6) + "\" y=\"" + num(gy + 4) +
           "\" font-size=\"11\" text-anchor=\"end\">" + num(label) + "</text>\n";
  }
  svg += "<text x=\"" + num(ml + pw / 2) + "\" y=\"" + num(mt + ph + 40) +
         "\" font-size=\"13\" text-anchor=\"middle\">sweep_value</text>\n";

  int legend_row = 0;
  for (const auto& s : series) {
    std::string pts;
    for (const auto& p : s.points)
      pts += num(px(p.x)) + "," + num(py(p.y)) + " ";
    svg += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.6\"";
    if (!s.dash.empty()) svg += " stroke-dasharray=\"" + s.dash + "\"";
    svg += " points=\"" + pts + "\"/>\n";
    for (const auto& p : s.points) {
      svg += "<circle cx=\"" + num(px(p.x)) + "\" cy=\"" + num(py(p.y)) +
             "\" r=\"2.5\" fill=\"" + s.color + "\"/>\n";
      if (!std::isnan(p.lo) && !std::isnan(p.hi)) {
        const double cx = px(p.x);
        svg += "<line x1=\"" + num(cx) + "\" y1=\"" + num(py(p.lo)) + "\" x2=\"" + num(cx) +
               "\" y2=\"" + num(py(p.hi)) + "\" stroke=\"" + s.color + "\"/>\n";
        svg += "<line x1=\"" + num(cx - 3) + "\" y1=\"" + num(py(p.lo)) + "\" x2=\"" +
               num(cx + 3) + "\" y2=\"" + num(py(p.lo)) + "\" stroke=\"" + s.color + "\"/>\n";
        svg += "<line x1=\"" + num(cx - 3) + "\" y1=\"" + num(py(p.hi)) + "\" x2=\"" +
               num(cx + 3) + "\" y2=\"" + num(py(p.hi)) + "\" stroke=\"" + s.color + "\"/>\n";
      }
    }
    const double lx = ml + 10, ly = mt + 16 + 16 * legend_row++;
    svg += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(lx + 24) +
           "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + s.color + "\" stroke-width=\"1.6\"";
    if (!s.dash.empty()) svg += " stroke-dasharray=\"" + s.dash + "\"";
    svg += "/>\n";
    svg += "<text x=\"" + num(lx + 30) + "\" y=\"" + num(ly) + "\" font-size=\"12\">" + s.name +
           "</text>\n";
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace ufs
