#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vho/coverage.hpp"
#include "vho/geometry.hpp"
#include "vho/io.hpp"
#include "vho/math.hpp"

namespace vho {

namespace detail {

inline constexpr std::array<std::string_view, 5> kPlotPalette = {
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

inline std::string escape_xml(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (const char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string plot_label(double value) {
    return format_number(value, 6);
}

/// Largest 1/2/5 decade step not exceeding the raw spacing.
inline double nice_tick_step(double range, int max_ticks) {
    const double raw = range / std::max(max_ticks, 1);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (const double m : {5.0, 2.0, 1.0}) {
        if (m * mag <= raw) {
            return m * mag;
        }
    }
    return mag;
}

}  // namespace detail

/// Minimal multi-series line chart rendered as a standalone SVG document.
class LinePlot {
  public:
    LinePlot(std::string title, std::string x_label, std::string y_label)
        : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

    void add_series(std::string label, std::vector<std::pair<double, double>> points) {
        series_.push_back({std::move(label), std::move(points)});
    }

    std::string render(int width = 720, int height = 480) const {
        constexpr double left = 72.0, right = 24.0, top = 44.0, bottom = 56.0;
        const double plot_w = width - left - right;
        const double plot_h = height - top - bottom;

        double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
        bool first = true;
        for (const auto& s : series_) {
            for (const auto& [x, y] : s.points) {
                if (first) {
                    x_min = x_max = x;
                    y_min = y_max = y;
                    first = false;
                } else {
                    x_min = std::min(x_min, x);
                    x_max = std::max(x_max, x);
                    y_min = std::min(y_min, y);
                    y_max = std::max(y_max, y);
                }
            }
        }
        if (x_max == x_min) {
            x_min -= 1.0;
            x_max += 1.0;
        }
        if (y_max == y_min) {
            y_min -= 1.0;
            y_max += 1.0;
        }
        const double y_pad = 0.06 * (y_max - y_min);
        y_min -= y_pad;
        y_max += y_pad;

        const auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
        const auto py = [&](double y) {
            return top + plot_h - (y - y_min) / (y_max - y_min) * plot_h;
        };

        std::ostringstream svg;
        svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
            << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
            << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
            << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
               "font-family=\"sans-serif\" font-size=\"15\">"
            << detail::escape_xml(title_) << "</text>\n";

        svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
        const double x_step = detail::nice_tick_step(x_max - x_min, 6);
        for (double t = std::ceil(x_min / x_step) * x_step; t <= x_max + 1e-12 * x_step;
             t += x_step) {
            const double x = px(t);
            svg << "<line x1=\"" << x << "\" y1=\"" << top << "\" x2=\"" << x << "\" y2=\""
                << top + plot_h << "\" stroke=\"#ddd\"/>\n"
                << "<text x=\"" << x << "\" y=\"" << top + plot_h + 16
                << "\" text-anchor=\"middle\">" << detail::plot_label(t) << "</text>\n";
        }
        const double y_step = detail::nice_tick_step(y_max - y_min, 6);
        for (double t = std::ceil(y_min / y_step) * y_step; t <= y_max + 1e-12 * y_step;
             t += y_step) {
            const double y = py(t);
            svg << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\"" << left + plot_w
                << "\" y2=\"" << y << "\" stroke=\"#ddd\"/>\n"
                << "<text x=\"" << left - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">"
                << detail::plot_label(t) << "</text>\n";
        }
        svg << "</g>\n";

        svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w
            << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#333\"/>\n";

        for (std::size_t i = 0; i < series_.size(); ++i) {
            const auto color = detail::kPlotPalette[i % detail::kPlotPalette.size()];
            svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" "
                   "points=\"";
            for (const auto& [x, y] : series_[i].points) {
                svg << px(x) << ',' << py(y) << ' ';
            }
            svg << "\"/>\n";
        }

        double legend_y = top + 14.0;
        for (std::size_t i = 0; i < series_.size(); ++i) {
            const auto color = detail::kPlotPalette[i % detail::kPlotPalette.size()];
            const double lx = left + plot_w - 150.0;
            svg << "<line x1=\"" << lx << "\" y1=\"" << legend_y - 4 << "\" x2=\"" << lx + 22
                << "\" y2=\"" << legend_y - 4 << "\" stroke=\"" << color
                << "\" stroke-width=\"1.8\"/>\n"
                << "<text x=\"" << lx + 28 << "\" y=\"" << legend_y
                << "\" font-family=\"sans-serif\" font-size=\"12\">"
                << detail::escape_xml(series_[i].label) << "</text>\n";
            legend_y += 16.0;
        }

        svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 12
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
            << detail::escape_xml(x_label_) << "</text>\n"
            << "<text x=\"18\" y=\"" << top + plot_h / 2
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
               "transform=\"rotate(-90 18 "
            << top + plot_h / 2 << ")\">" << detail::escape_xml(y_label_) << "</text>\n</svg>\n";
        return svg.str();
    }

  private:
    struct Series {
        std::string label;
        std::vector<std::pair<double, double>> points;
    };

    std::string title_;
    std::string x_label_;
    std::string y_label_;
    std::vector<Series> series_;
};

/// Cell boundary polygon with reliability contours, axes in meters, equal
/// aspect, rendered as a standalone SVG document.
inline std::string render_cell_plot(std::string_view title,
                                    std::span<const BoundaryPoint> boundary,
                                    std::span<const ContourPoint> contours, int size = 560) {
    const double cx = size / 2.0;
    const double cy = size / 2.0;
    double r_max = 0.0;
    for (const BoundaryPoint& b : boundary) {
        r_max = std::max(r_max, b.radius_m);
    }
    for (const ContourPoint& c : contours) {
        r_max = std::max(r_max, c.radius_m);
    }
    if (r_max <= 0.0) {
        r_max = 1.0;
    }
    const double scale = (size / 2.0 - 46.0) / r_max;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
        << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << cx << "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">"
        << detail::escape_xml(title) << "</text>\n";

    if (!boundary.empty()) {
        svg << "<polygon fill=\"#1f77b422\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
        for (const BoundaryPoint& b : boundary) {
            svg << cx + scale * b.radius_m * std::cos(b.angle_rad) << ','
                << cy - scale * b.radius_m * std::sin(b.angle_rad) << ' ';
        }
        svg << "\"/>\n";
    }

    for (std::size_t i = 0; i < contours.size(); ++i) {
        const auto color = detail::kPlotPalette[(i + 1) % detail::kPlotPalette.size()];
        const double r = scale * contours[i].radius_m;
        svg << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << r
            << "\" fill=\"none\" stroke=\"" << color << "\" stroke-dasharray=\"6 4\"/>\n"
            << "<text x=\"" << cx + r * std::cos(0.25 * kPi) + 4 << "\" y=\""
            << cy - r * std::sin(0.25 * kPi) - 4
            << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << color << "\">p="
            << detail::plot_label(contours[i].p) << "</text>\n";
    }

    svg << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"3\" fill=\"#333\"/>\n"
        << "<text x=\"" << cx + 8 << "\" y=\"" << cy + 4
        << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">AP</text>\n</svg>\n";
    return svg.str();
}

}  // namespace vho
