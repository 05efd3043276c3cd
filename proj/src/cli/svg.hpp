#pragma once

#include <string>
#include <vector>

namespace rotorbath::cli {

struct ChartSeries {
    std::string label;
    std::vector<double> x, y;
    bool dashed = false;
    bool markers = false;
};

struct LineChart {
    std::string title, x_label, y_label;
    bool log_x = false;
    std::vector<ChartSeries> series;
};

// Standalone SVG document. Non-finite points and, on a log axis, x <= 0 are skipped.
std::string render_svg(const LineChart& chart);

} // namespace rotorbath::cli
