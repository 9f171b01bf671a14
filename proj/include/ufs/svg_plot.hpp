#pragma once

#include <string>

#include "ufs/csv.hpp"

namespace ufs {

struct PlotOptions {
  bool log_y = false;
  bool overlay_bound = false;  // dashed analytic bound curves when available
  int width = 820;
  int height = 560;
};

// Renders a sweep CSV as a self-contained SVG line chart with CI whiskers.
// Plots the miss-rate series when present, otherwise the false-alarm series,
// plus MSE series when present. With overlay_bound set and a parsable config
// comment, the analytic miss-probability bound (dashed) and its large-P_E
// lower bound (dotted) are evaluated across the sweep axis.
std::string render_sweep_svg(const CsvData& data, const PlotOptions& opts);

}  // namespace ufs
