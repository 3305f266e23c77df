#pragma once

#include <string>
#include <vector>

namespace hfc {

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct SvgPlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    int width = 860;
    int height = 480;
    std::vector<SvgSeries> series;
};

/// Self-contained SVG line plot (axes, ticks, legend); no external deps.
std::string render_svg(const SvgPlotSpec& spec);
void write_svg(const SvgPlotSpec& spec, const std::string& path);

}  // namespace hfc
