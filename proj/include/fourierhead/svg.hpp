#pragma once

#include <string>
#include <vector>

#include "fourierhead/tensor.hpp"

namespace fourierhead {

// Self-contained SVG charts, generated directly (no plotting dependency).

struct LineSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct ChartOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
};

std::string line_chart_svg(const std::vector<LineSeries>& series, const ChartOptions& options);

// Cell (i, j) of `values` is drawn at row i (top to bottom), column j.
// Cells are colored by value on a fixed ramp; the maximum value maps to
// heat_color(1.0).
std::string heatmap_svg(const Tensor& values, const ChartOptions& options);

// Color ramp used by heatmap_svg; `normalized` is clamped to [0, 1].
// Returns "#rrggbb".
std::string heat_color(double normalized);

} // namespace fourierhead
