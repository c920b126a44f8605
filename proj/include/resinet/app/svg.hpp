#pragma once

#include <string>
#include <vector>

namespace resinet::app {

struct Line {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f77b4";
};

/// Shaded region between lo and hi.
struct Band {
    std::string label;
    std::vector<double> x;
    std::vector<double> lo;
    std::vector<double> hi;
    std::string color = "#d62728";
};

struct Panel {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Band> bands;
    std::vector<Line> lines;
};

/// Panels laid out row-major in `columns` columns, with one legend entry per
/// distinct label across all panels.
struct Figure {
    std::string title;
    std::vector<Panel> panels;
    int columns = 1;
    double panel_width = 560.0;
    double panel_height = 240.0;
};

std::string render_svg(const Figure& figure);
void write_svg(const std::string& path, const Figure& figure);

/// Qualitative palette, cycled.
const std::string& palette(std::size_t index);

}  // namespace resinet::app
