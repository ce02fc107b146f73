#include "fourierhead/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "fourierhead/errors.hpp"

namespace fourierhead {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 480;
constexpr double kMarginLeft = 72;
constexpr double kMarginRight = 24;
constexpr double kMarginTop = 48;
constexpr double kMarginBottom = 56;

const char* kSeriesColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                               "#8c564b", "#17becf", "#7f7f7f", "#bcbd22", "#e377c2"};

std::string escape_xml(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Range {
    double lo = 0.0;
    double hi = 1.0;
};

Range pad_range(double lo, double hi) {
    if (!(hi > lo)) {
        const double bump = lo == 0.0 ? 1.0 : std::abs(lo) * 0.5;
        return Range{lo - bump, hi + bump};
    }
    const double pad = (hi - lo) * 0.05;
    return Range{lo - pad, hi + pad};
}

// 1-2-5 tick spacing
std::vector<double> linear_ticks(const Range& r) {
    const double span = r.hi - r.lo;
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= m * mag) {
            step = m * mag;
            break;
        }
    }
    std::vector<double> ticks;
    double t = std::ceil(r.lo / step) * step;
    for (; t <= r.hi + step * 1e-9; t += step) {
        ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
    }
    return ticks;
}

std::vector<double> decade_ticks(const Range& log_range) {
    std::vector<double> ticks;
    for (double k = std::ceil(log_range.lo); k <= std::floor(log_range.hi) + 1e-9; k += 1.0) {
        ticks.push_back(k);
    }
    return ticks;
}

std::string decade_label(double exponent) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "1e%+d", static_cast<int>(std::lround(exponent)));
    return buf;
}

void open_svg(std::ostringstream& out, double width, double height) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
        << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\"" << num(height)
        << "\" fill=\"white\"/>\n";
}

void draw_title(std::ostringstream& out, const std::string& title) {
    if (title.empty()) return;
    out << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << escape_xml(title) << "</text>\n";
}

void draw_axis_labels(std::ostringstream& out, const ChartOptions& options) {
    if (!options.x_label.empty()) {
        out << "<text x=\"" << num((kMarginLeft + kWidth - kMarginRight) / 2) << "\" y=\""
            << num(kHeight - 12) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
            << "font-size=\"13\">" << escape_xml(options.x_label) << "</text>\n";
    }
    if (!options.y_label.empty()) {
        const double cy = (kMarginTop + kHeight - kMarginBottom) / 2;
        out << "<text x=\"18\" y=\"" << num(cy) << "\" text-anchor=\"middle\" "
            << "font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 " << num(cy)
            << ")\">" << escape_xml(options.y_label) << "</text>\n";
    }
}

} // namespace

std::string line_chart_svg(const std::vector<LineSeries>& series, const ChartOptions& options) {
    if (series.empty()) {
        throw ConfigError("line_chart_svg: no series to plot");
    }

    double x_lo = std::numeric_limits<double>::infinity();
    double x_hi = -x_lo;
    double y_lo = x_lo;
    double y_hi = -x_lo;
    double min_positive = std::numeric_limits<double>::infinity();
    for (const LineSeries& s : series) {
        if (s.x.size() != s.y.size()) {
            throw ShapeError("line_chart_svg: series '" + s.label + "' has " +
                             std::to_string(s.x.size()) + " x values but " +
                             std::to_string(s.y.size()) + " y values");
        }
        for (double v : s.x) {
            x_lo = std::min(x_lo, v);
            x_hi = std::max(x_hi, v);
        }
        for (double v : s.y) {
            y_lo = std::min(y_lo, v);
            y_hi = std::max(y_hi, v);
            if (v > 0.0) min_positive = std::min(min_positive, v);
        }
    }
    if (!std::isfinite(x_lo) || !std::isfinite(y_lo)) {
        throw ConfigError("line_chart_svg: series contain no finite points");
    }

    const bool log_y = options.log_y && std::isfinite(min_positive);
    auto transform_y = [&](double v) {
        if (!log_y) return v;
        return std::log10(std::max(v, min_positive)); // non-positive values clamp to the floor
    };

    const Range xr = pad_range(x_lo, x_hi);
    const Range yr = pad_range(transform_y(log_y ? min_positive : y_lo), transform_y(y_hi));

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto px = [&](double v) { return kMarginLeft + (v - xr.lo) / (xr.hi - xr.lo) * plot_w; };
    auto py = [&](double v) {
        return kMarginTop + (yr.hi - transform_y(v)) / (yr.hi - yr.lo) * plot_h;
    };

    std::ostringstream out;
    open_svg(out, kWidth, kHeight);
    draw_title(out, options.title);

    // gridlines and ticks
    const std::vector<double> xticks = linear_ticks(xr);
    const std::vector<double> yticks = log_y ? decade_ticks(yr) : linear_ticks(yr);
    for (double t : xticks) {
        const double x = px(t);
        out << "<line x1=\"" << num(x) << "\" y1=\"" << num(kMarginTop) << "\" x2=\"" << num(x)
            << "\" y2=\"" << num(kHeight - kMarginBottom) << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << num(x) << "\" y=\"" << num(kHeight - kMarginBottom + 18)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << num(t)
            << "</text>\n";
    }
    for (double t : yticks) {
        const double y = kMarginTop + (yr.hi - t) / (yr.hi - yr.lo) * plot_h;
        out << "<line x1=\"" << num(kMarginLeft) << "\" y1=\"" << num(y) << "\" x2=\""
            << num(kWidth - kMarginRight) << "\" y2=\"" << num(y) << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << num(kMarginLeft - 6) << "\" y=\"" << num(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << (log_y ? decade_label(t) : num(t)) << "</text>\n";
    }

    // frame
    out << "<rect x=\"" << num(kMarginLeft) << "\" y=\"" << num(kMarginTop) << "\" width=\""
        << num(plot_w) << "\" height=\"" << num(plot_h)
        << "\" fill=\"none\" stroke=\"#333333\"/>\n";

    // series
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kSeriesColors[s % (sizeof kSeriesColors / sizeof kSeriesColors[0])];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < series[s].x.size(); ++i) {
            if (i > 0) out << ' ';
            out << num(px(series[s].x[i])) << ',' << num(py(series[s].y[i]));
        }
        out << "\"/>\n";
    }

    // legend
    double ly = kMarginTop + 14;
    for (std::size_t s = 0; s < series.size(); ++s) {
        if (series[s].label.empty()) continue;
        const char* color = kSeriesColors[s % (sizeof kSeriesColors / sizeof kSeriesColors[0])];
        const double lx = kWidth - kMarginRight - 130;
        out << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(lx + 22)
            << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << num(lx + 28) << "\" y=\"" << num(ly)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape_xml(series[s].label)
            << "</text>\n";
        ly += 16;
    }

    draw_axis_labels(out, options);
    out << "</svg>\n";
    return out.str();
}

std::string heat_color(double normalized) {
    const double v = std::clamp(normalized, 0.0, 1.0);
    // compact viridis-like ramp
    static const int stops[][3] = {
        {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
    constexpr int n_stops = 5;
    const double scaled = v * (n_stops - 1);
    const int k = std::min(static_cast<int>(scaled), n_stops - 2);
    const double f = scaled - k;
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                  static_cast<int>(std::lround(stops[k][0] + f * (stops[k + 1][0] - stops[k][0]))),
                  static_cast<int>(std::lround(stops[k][1] + f * (stops[k + 1][1] - stops[k][1]))),
                  static_cast<int>(std::lround(stops[k][2] + f * (stops[k + 1][2] - stops[k][2]))));
    return buf;
}

std::string heatmap_svg(const Tensor& values, const ChartOptions& options) {
    if (values.rows < 1 || values.cols < 1) {
        throw ShapeError("heatmap_svg: empty matrix " + values.shape_str());
    }
    double lo = values.data[0];
    double hi = values.data[0];
    for (double v : values.data) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!(hi > lo)) hi = lo + 1.0;

    const double legend_w = 64;
    const double plot_w = kWidth - kMarginLeft - kMarginRight - legend_w;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const double cell_w = plot_w / values.cols;
    const double cell_h = plot_h / values.rows;

    std::ostringstream out;
    open_svg(out, kWidth, kHeight);
    draw_title(out, options.title);

    for (int i = 0; i < values.rows; ++i) {
        for (int j = 0; j < values.cols; ++j) {
            const double x = kMarginLeft + j * cell_w;
            const double y = kMarginTop + i * cell_h;
            const std::string color = heat_color((values.at(i, j) - lo) / (hi - lo));
            out << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\""
                << num(cell_w + 0.5) << "\" height=\"" << num(cell_h + 0.5) << "\" fill=\"" << color
                << "\"/>\n";
        }
    }
    out << "<rect x=\"" << num(kMarginLeft) << "\" y=\"" << num(kMarginTop) << "\" width=\""
        << num(plot_w) << "\" height=\"" << num(plot_h)
        << "\" fill=\"none\" stroke=\"#333333\"/>\n";

    // row/column indices
    for (int j = 0; j < values.cols; ++j) {
        out << "<text x=\"" << num(kMarginLeft + (j + 0.5) * cell_w) << "\" y=\""
            << num(kHeight - kMarginBottom + 16)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << j
            << "</text>\n";
    }
    for (int i = 0; i < values.rows; ++i) {
        out << "<text x=\"" << num(kMarginLeft - 6) << "\" y=\""
            << num(kMarginTop + (i + 0.5) * cell_h + 3)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << i
            << "</text>\n";
    }

    // color scale
    const double bar_x = kWidth - kMarginRight - legend_w + 18;
    constexpr int bar_steps = 32;
    const double bar_h = plot_h / bar_steps;
    for (int k = 0; k < bar_steps; ++k) {
        const double frac = 1.0 - (k + 0.5) / bar_steps;
        out << "<rect x=\"" << num(bar_x) << "\" y=\"" << num(kMarginTop + k * bar_h)
            << "\" width=\"14\" height=\"" << num(bar_h + 0.5) << "\" fill=\"" << heat_color(frac)
            << "\"/>\n";
    }
    out << "<text x=\"" << num(bar_x + 18) << "\" y=\"" << num(kMarginTop + 10)
        << "\" font-family=\"sans-serif\" font-size=\"10\">" << num(hi) << "</text>\n";
    out << "<text x=\"" << num(bar_x + 18) << "\" y=\"" << num(kMarginTop + plot_h)
        << "\" font-family=\"sans-serif\" font-size=\"10\">" << num(lo) << "</text>\n";

    draw_axis_labels(out, options);
    out << "</svg>\n";
    return out.str();
}

} // namespace fourierhead
