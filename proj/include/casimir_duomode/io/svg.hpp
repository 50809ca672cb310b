#pragma once
// Self-contained SVG line plots and region maps. Coordinates are printed with
// fixed precision so output is deterministic.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace casimir_duomode::io {

struct Series {
    std::string name;
    std::vector<double> x, y;
    std::string color = "#1f77b4";
    bool dashed = false;
    bool stems = false;  ///< vertical bars from y = 0 (distributions)
};

struct PlotFrame {
    std::string title, xlabel, ylabel;
    double width = 720, height = 480;
    double margin_left = 70, margin_right = 20, margin_top = 40, margin_bottom = 55;
    // Fixed ranges; NaN means fit to data.
    double xmin = std::nan(""), xmax = std::nan(""), ymin = std::nan(""), ymax = std::nan("");
};

namespace detail {

inline std::string fx(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

inline std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

inline double nice_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    return mag * (r < 1.5 ? 1.0 : r < 3.0 ? 2.0 : r < 7.0 ? 5.0 : 10.0);
}

struct Mapper {
    PlotFrame f;
    double x0, x1, y0, y1;
    double px(double x) const {
        return f.margin_left + (x - x0) / (x1 - x0) * (f.width - f.margin_left - f.margin_right);
    }
    double py(double y) const {
        return f.height - f.margin_bottom - (y - y0) / (y1 - y0) * (f.height - f.margin_top - f.margin_bottom);
    }
};

inline void open_svg(std::ostringstream& os, const Mapper& m) {
    const auto& f = m.f;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fx(f.width) << "\" height=\"" << fx(f.height)
       << "\" viewBox=\"0 0 " << fx(f.width) << ' ' << fx(f.height) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<defs><clipPath id=\"plot\"><rect x=\"" << fx(f.margin_left) << "\" y=\"" << fx(f.margin_top)
       << "\" width=\"" << fx(f.width - f.margin_left - f.margin_right) << "\" height=\""
       << fx(f.height - f.margin_top - f.margin_bottom) << "\"/></clipPath></defs>\n";
}

inline void axes(std::ostringstream& os, const Mapper& m) {
    const auto& f = m.f;
    const double left = f.margin_left, right = f.width - f.margin_right;
    const double top = f.margin_top, bottom = f.height - f.margin_bottom;
    os << "<rect x=\"" << fx(left) << "\" y=\"" << fx(top) << "\" width=\"" << fx(right - left) << "\" height=\""
       << fx(bottom - top) << "\" fill=\"none\" stroke=\"black\"/>\n";
    const double sx = nice_step(m.x1 - m.x0, 6);
    for (double t = std::ceil(m.x0 / sx) * sx; t <= m.x1 + 1e-9 * sx; t += sx) {
        const double x = m.px(t);
        os << "<line x1=\"" << fx(x) << "\" y1=\"" << fx(bottom) << "\" x2=\"" << fx(x) << "\" y2=\"" << fx(bottom + 5)
           << "\" stroke=\"black\"/><text x=\"" << fx(x) << "\" y=\"" << fx(bottom + 18)
           << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
    }
    const double sy = nice_step(m.y1 - m.y0, 6);
    for (double t = std::ceil(m.y0 / sy) * sy; t <= m.y1 + 1e-9 * sy; t += sy) {
        const double y = m.py(t);
        os << "<line x1=\"" << fx(left - 5) << "\" y1=\"" << fx(y) << "\" x2=\"" << fx(left) << "\" y2=\"" << fx(y)
           << "\" stroke=\"black\"/><text x=\"" << fx(left - 8) << "\" y=\"" << fx(y + 4)
           << "\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
    }
    os << "<text x=\"" << fx(0.5 * (left + right)) << "\" y=\"" << fx(f.height - 12) << "\" text-anchor=\"middle\">"
       << escape(f.xlabel) << "</text>\n";
    os << "<text x=\"16\" y=\"" << fx(0.5 * (top + bottom)) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << fx(0.5 * (top + bottom)) << ")\">" << escape(f.ylabel) << "</text>\n";
    os << "<text x=\"" << fx(0.5 * (left + right)) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
       << escape(f.title) << "</text>\n";
}

inline void draw_series(std::ostringstream& os, const Mapper& m, const Series& s) {
    if (s.stems) {
        os << "<g clip-path=\"url(#plot)\" stroke=\"" << s.color << "\" stroke-width=\"1.5\">\n";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.y[i])) continue;
            os << "<line x1=\"" << fx(m.px(s.x[i])) << "\" y1=\"" << fx(m.py(0.0)) << "\" x2=\"" << fx(m.px(s.x[i]))
               << "\" y2=\"" << fx(m.py(s.y[i])) << "\"/>\n";
        }
        os << "</g>\n";
        return;
    }
    // Break the polyline at non-finite values.
    std::vector<std::string> runs;
    std::string cur;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
            if (!cur.empty()) runs.push_back(cur), cur.clear();
            continue;
        }
        cur += fx(m.px(s.x[i])) + "," + fx(m.py(s.y[i])) + " ";
    }
    if (!cur.empty()) runs.push_back(cur);
    for (const auto& r : runs) {
        os << "<polyline clip-path=\"url(#plot)\" fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\""
           << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"" << r << "\"/>\n";
    }
}

inline void legend(std::ostringstream& os, const Mapper& m, const std::vector<Series>& series) {
    double y = m.f.margin_top + 14;
    const double x = m.f.width - m.f.margin_right - 170;
    for (const auto& s : series) {
        if (s.name.empty()) continue;
        os << "<line x1=\"" << fx(x) << "\" y1=\"" << fx(y - 4) << "\" x2=\"" << fx(x + 24) << "\" y2=\"" << fx(y - 4)
           << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"" << (s.dashed ? " stroke-dasharray=\"6,4\"" : "")
           << "/><text x=\"" << fx(x + 30) << "\" y=\"" << fx(y) << "\">" << escape(s.name) << "</text>\n";
        y += 16;
    }
}

inline Mapper fit(const PlotFrame& f, const std::vector<Series>& series) {
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            x0 = std::min(x0, s.x[i]), x1 = std::max(x1, s.x[i]);
            y0 = std::min(y0, s.y[i]), y1 = std::max(y1, s.y[i]);
        }
        if (s.stems) y0 = std::min(y0, 0.0);
    }
    if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (!std::isnan(f.xmin)) x0 = f.xmin;
    if (!std::isnan(f.xmax)) x1 = f.xmax;
    if (!std::isnan(f.ymin)) y0 = f.ymin;
    if (!std::isnan(f.ymax)) y1 = f.ymax;
    if (x1 <= x0) x1 = x0 + 1;
    if (y1 <= y0) y1 = y0 + 1;
    if (std::isnan(f.ymax)) y1 += 0.05 * (y1 - y0);
    return {f, x0, x1, y0, y1};
}

}  // namespace detail

inline std::string render_line_plot(const PlotFrame& frame, const std::vector<Series>& series) {
    const auto m = detail::fit(frame, series);
    std::ostringstream os;
    detail::open_svg(os, m);
    for (const auto& s : series) detail::draw_series(os, m, s);
    detail::axes(os, m);
    detail::legend(os, m, series);
    os << "</svg>\n";
    return os.str();
}

/// Filled cell map. cell_class(r, c) picks an index into fills (negative = blank);
/// rows run bottom to top in y. Overlays are drawn on top, clipped to the frame.
struct CellMap {
    double x0, x1, y0, y1;
    std::size_t rows, cols;
    std::vector<int> classes;  ///< row-major, row 0 at y0
    std::vector<std::string> fills;
    std::vector<std::string> fill_names;
};

inline std::string render_region_plot(const PlotFrame& frame, const CellMap& map, const std::vector<Series>& overlays) {
    PlotFrame f = frame;
    f.xmin = map.x0, f.xmax = map.x1, f.ymin = map.y0, f.ymax = map.y1;
    const auto m = detail::fit(f, {});
    std::ostringstream os;
    detail::open_svg(os, m);
    const double dx = (map.x1 - map.x0) / static_cast<double>(map.cols - 1);
    const double dy = (map.y1 - map.y0) / static_cast<double>(map.rows - 1);
    os << "<g clip-path=\"url(#plot)\" shape-rendering=\"crispEdges\">\n";
    for (std::size_t r = 0; r < map.rows; ++r) {
        const double yc = map.y0 + dy * static_cast<double>(r);
        std::size_t c = 0;
        while (c < map.cols) {
            const int k = map.classes[r * map.cols + c];
            std::size_t e = c;
            while (e + 1 < map.cols && map.classes[r * map.cols + e + 1] == k) ++e;
            if (k >= 0) {
                const double xa = m.px(map.x0 + dx * (static_cast<double>(c) - 0.5));
                const double xb = m.px(map.x0 + dx * (static_cast<double>(e) + 0.5));
                const double ya = m.py(yc + 0.5 * dy), yb = m.py(yc - 0.5 * dy);
                os << "<rect x=\"" << detail::fx(xa) << "\" y=\"" << detail::fx(ya) << "\" width=\""
                   << detail::fx(xb - xa) << "\" height=\"" << detail::fx(yb - ya) << "\" fill=\""
                   << map.fills[static_cast<std::size_t>(k)] << "\"/>\n";
            }
            c = e + 1;
        }
    }
    os << "</g>\n";
    for (const auto& s : overlays) detail::draw_series(os, m, s);
    detail::axes(os, m);
    std::vector<Series> keys;
    for (std::size_t k = 0; k < map.fills.size(); ++k) keys.push_back({map.fill_names[k], {}, {}, map.fills[k]});
    for (const auto& s : overlays) keys.push_back(s);
    detail::legend(os, m, keys);
    os << "</svg>\n";
    return os.str();
}

}  // namespace casimir_duomode::io
