#pragma once

#include <map>
#include <string>
#include <vector>

namespace taskvec::report {

// Static SVG charts, written without a plotting dependency. Layout is simple
// and fixed: these are run artifacts for eyeballing, not publication figures.

struct Series {
    std::string name;
    std::vector<double> values;  // one per x position
};

// Lines over a shared integer x axis (layer curves and the like).
std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<int>& xs,
                           const std::vector<Series>& series, double y_min, double y_max);

// Scatter with per-point labels (boost/deficit plane).
struct ScatterPoint {
    double x = 0.0;
    double y = 0.0;
    std::string group;  // picks the color
};
std::string scatter_svg(const std::string& title, const std::string& x_label,
                        const std::string& y_label, const std::vector<ScatterPoint>& points,
                        double x_min, double x_max, double y_min, double y_max);

// Binary heatmap with row and column labels (influence grid).
std::string heatmap_svg(const std::string& title, const std::vector<std::string>& row_labels,
                        const std::vector<std::string>& col_labels,
                        const std::vector<std::vector<int>>& cells);

// Grouped vertical bars: one cluster per group, one bar per series name.
std::string grouped_bars_svg(const std::string& title, const std::vector<std::string>& groups,
                             const std::vector<Series>& series, double y_max);

}  // namespace taskvec::report
