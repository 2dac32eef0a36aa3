#pragma once

#include <string>
#include <vector>

namespace twinfocal::cli {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

// Static line plot: frame, tick labels, one polyline per series, legend.
std::string line_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                      const std::vector<Series>& series);

// Grey-scale raster of a row-major nx * ny image (row 0 at the bottom),
// values scaled to the image maximum.
std::string heatmap(const std::string& title, std::size_t nx, std::size_t ny, const std::vector<double>& values,
                    double x_min, double x_max, double y_min, double y_max);

}  // namespace twinfocal::cli
