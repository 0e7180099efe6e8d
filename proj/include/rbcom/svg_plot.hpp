#pragma once

// Minimal line-plot renderer for experiment outputs. Deterministic output so
// reruns produce byte-identical files.

#include <string>
#include <vector>

namespace rbcom {

struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
    bool markers = false;
};

struct Plot {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    std::vector<PlotSeries> series;

    std::string to_svg(int width = 720, int height = 480) const;
};

}  // namespace rbcom
