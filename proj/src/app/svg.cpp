#include "resinet/app/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace resinet::app {

namespace {

constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 30.0;
constexpr double kMarginBottom = 45.0;
constexpr double kLegendRow = 18.0;

std::string esc(const std::string& s) {
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

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

std::string tick_label(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

double nice_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    const double nice = norm < 1.5 ? 1.0 : norm < 3.0 ? 2.0 : norm < 7.0 ? 5.0 : 10.0;
    return nice * mag;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void finish() {
        if (!std::isfinite(lo)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi - lo < 1e-12) {
            const double pad = std::max(std::abs(lo) * 0.1, 0.5);
            lo -= pad;
            hi += pad;
        }
    }
};

void render_panel(std::ostringstream& out, const Panel& p, double ox, double oy, double w, double h) {
    Range xr;
    Range yr;
    for (const Line& l : p.lines) {
        for (double x : l.x) xr.add(x);
        for (double y : l.y) yr.add(y);
    }
    for (const Band& b : p.bands) {
        for (double x : b.x) xr.add(x);
        for (double y : b.lo) yr.add(y);
        for (double y : b.hi) yr.add(y);
    }
    xr.finish();
    yr.finish();

    const double px = ox + kMarginLeft;
    const double py = oy + kMarginTop;
    const double pw = w - kMarginLeft - kMarginRight;
    const double ph = h - kMarginTop - kMarginBottom;
    auto sx = [&](double x) { return px + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto sy = [&](double y) { return py + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

    out << "<g class=\"panel\">\n";
    out << "<text x=\"" << num(px + pw / 2) << "\" y=\"" << num(oy + 18)
        << "\" text-anchor=\"middle\" font-size=\"14\">" << esc(p.title) << "</text>\n";
    out << "<rect x=\"" << num(px) << "\" y=\"" << num(py) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
        << "\" fill=\"none\" stroke=\"#333\"/>\n";

    const double ystep = nice_step(yr.hi - yr.lo, 5);
    for (double t = std::ceil(yr.lo / ystep) * ystep; t <= yr.hi + 1e-9 * ystep; t += ystep) {
        out << "<line x1=\"" << num(px) << "\" x2=\"" << num(px + pw) << "\" y1=\"" << num(sy(t)) << "\" y2=\""
            << num(sy(t)) << "\" stroke=\"#ddd\"/>\n";
        out << "<text x=\"" << num(px - 6) << "\" y=\"" << num(sy(t) + 4)
            << "\" text-anchor=\"end\" font-size=\"11\">" << tick_label(t) << "</text>\n";
    }
    const double xstep = nice_step(xr.hi - xr.lo, 6);
    for (double t = std::ceil(xr.lo / xstep) * xstep; t <= xr.hi + 1e-9 * xstep; t += xstep) {
        out << "<text x=\"" << num(sx(t)) << "\" y=\"" << num(py + ph + 16)
            << "\" text-anchor=\"middle\" font-size=\"11\">" << tick_label(t) << "</text>\n";
    }
    out << "<text x=\"" << num(px + pw / 2) << "\" y=\"" << num(py + ph + 34)
        << "\" text-anchor=\"middle\" font-size=\"12\">" << esc(p.x_label) << "</text>\n";
    out << "<text transform=\"translate(" << num(ox + 16) << ',' << num(py + ph / 2)
        << ") rotate(-90)\" text-anchor=\"middle\" font-size=\"12\">" << esc(p.y_label) << "</text>\n";

    for (const Band& b : p.bands) {
        out << "<polygon fill=\"" << b.color << "\" fill-opacity=\"0.25\" stroke=\"none\" points=\"";
        for (std::size_t k = 0; k < b.x.size(); ++k) out << num(sx(b.x[k])) << ',' << num(sy(b.hi[k])) << ' ';
        for (std::size_t k = b.x.size(); k-- > 0;) out << num(sx(b.x[k])) << ',' << num(sy(b.lo[k])) << ' ';
        out << "\"/>\n";
    }
    for (const Line& l : p.lines) {
        out << "<polyline class=\"series\" fill=\"none\" stroke=\"" << l.color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < l.x.size(); ++k) {
            if (!std::isfinite(l.y[k])) continue;
            out << num(sx(l.x[k])) << ',' << num(sy(l.y[k])) << ' ';
        }
        out << "\"/>\n";
    }
    out << "</g>\n";
}

}  // namespace

const std::string& palette(std::size_t index) {
    static const std::vector<std::string> colors = {"#2ca02c", "#1f77b4", "#ff7f0e", "#9467bd",
                                                    "#8c564b", "#e377c2", "#17becf", "#bcbd22"};
    return colors[index % colors.size()];
}

std::string render_svg(const Figure& fig) {
    // Distinct legend labels in first-seen order.
    std::vector<std::pair<std::string, std::string>> legend;
    auto add_legend = [&](const std::string& label, const std::string& color) {
        if (label.empty()) return;
        for (const auto& [l, c] : legend)
            if (l == label) return;
        legend.emplace_back(label, color);
    };
    for (const Panel& p : fig.panels) {
        for (const Band& b : p.bands) add_legend(b.label, b.color);
        for (const Line& l : p.lines) add_legend(l.label, l.color);
    }

    const int cols = std::max(1, fig.columns);
    const int rows = static_cast<int>((fig.panels.size() + cols - 1) / cols);
    const double header = 30.0 + kLegendRow * static_cast<double>(legend.size());
    const double width = fig.panel_width * cols;
    const double height = header + fig.panel_height * std::max(rows, 1);

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
        << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\" font-family=\"sans-serif\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << num(width / 2) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"16\">" << esc(fig.title)
        << "</text>\n";
    out << "<g class=\"legend\">\n";
    for (std::size_t k = 0; k < legend.size(); ++k) {
        const double y = 30.0 + kLegendRow * static_cast<double>(k);
        out << "<g class=\"legend-entry\"><rect x=\"" << num(kMarginLeft) << "\" y=\"" << num(y + 3)
            << "\" width=\"14\" height=\"10\" fill=\"" << legend[k].second << "\"/><text x=\"" << num(kMarginLeft + 20)
            << "\" y=\"" << num(y + 12) << "\" font-size=\"12\">" << esc(legend[k].first) << "</text></g>\n";
    }
    out << "</g>\n";
    for (std::size_t k = 0; k < fig.panels.size(); ++k) {
        const double ox = fig.panel_width * static_cast<double>(static_cast<int>(k) % cols);
        const double oy = header + fig.panel_height * static_cast<double>(static_cast<int>(k) / cols);
        render_panel(out, fig.panels[k], ox, oy, fig.panel_width, fig.panel_height);
    }
    out << "</svg>\n";
    return out.str();
}

void write_svg(const std::string& path, const Figure& figure) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << render_svg(figure);
}

}  // namespace resinet::app
