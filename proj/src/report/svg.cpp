#include "taskvec/report/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace taskvec::report {

namespace {

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
constexpr size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string esc(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\n': out += "\\n"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

struct Canvas {
    std::ostringstream body;
    int width, height;
    Canvas(int w, int h) : width(w), height(h) {}

    void line(double x1, double y1, double x2, double y2, const std::string& color,
              double stroke = 1.0) {
        body << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2)
             << "\" y2=\"" << num(y2) << "\" stroke=\"" << color << "\" stroke-width=\""
             << num(stroke) << "\"/>\n";
    }
    void rect(double x, double y, double w, double h, const std::string& fill,
              const std::string& stroke = "none") {
        body << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w)
             << "\" height=\"" << num(h) << "\" fill=\"" << fill << "\" stroke=\"" << stroke
             << "\"/>\n";
    }
    void circle(double x, double y, double r, const std::string& fill) {
        body << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(r)
             << "\" fill=\"" << fill << "\"/>\n";
    }
    void text(double x, double y, const std::string& s, int size = 11,
              const std::string& anchor = "start", const std::string& color = "#222") {
        body << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\"" << size
             << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor << "\" fill=\"" << color
             << "\">" << esc(s) << "</text>\n";
    }
    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color) {
        body << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : pts) body << num(x) << "," << num(y) << " ";
        body << "\"/>\n";
    }
    std::string render() const {
        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
            << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
            << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
            << body.str() << "</svg>\n";
        return out.str();
    }
};

struct Frame {
    double left, top, right, bottom;  // plot area in canvas coordinates
    double x_min, x_max, y_min, y_max;
    double x(double v) const {
        double span = x_max - x_min;
        if (span == 0) return (left + right) / 2;
        return left + (v - x_min) / span * (right - left);
    }
    double y(double v) const {
        double span = y_max - y_min;
        if (span == 0) return (top + bottom) / 2;
        return bottom - (v - y_min) / span * (bottom - top);
    }
};

void draw_axes(Canvas& c, const Frame& f, const std::string& x_label,
               const std::string& y_label) {
    c.line(f.left, f.bottom, f.right, f.bottom, "#444");
    c.line(f.left, f.top, f.left, f.bottom, "#444");
    c.text((f.left + f.right) / 2, f.bottom + 32, x_label, 11, "middle");
    c.text(f.left - 36, f.top - 8, y_label, 11, "start");
}

}  // namespace

std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<int>& xs,
                           const std::vector<Series>& series, double y_min, double y_max) {
    Canvas c(640, 420);
    Frame f{60, 40, 620, 360, xs.empty() ? 0.0 : static_cast<double>(xs.front()),
            xs.empty() ? 1.0 : static_cast<double>(xs.back()), y_min, y_max};
    c.text(320, 22, title, 13, "middle");
    draw_axes(c, f, x_label, y_label);

    for (int x : xs) {
        c.line(f.x(x), f.bottom, f.x(x), f.bottom + 4, "#444");
        c.text(f.x(x), f.bottom + 16, std::to_string(x), 10, "middle");
    }
    for (int t = 0; t <= 4; ++t) {
        double v = y_min + (y_max - y_min) * t / 4.0;
        c.line(f.left - 4, f.y(v), f.left, f.y(v), "#444");
        c.text(f.left - 8, f.y(v) + 4, num(v), 10, "end");
    }

    for (size_t s = 0; s < series.size(); ++s) {
        const std::string color = kPalette[s % kPaletteSize];
        std::vector<std::pair<double, double>> pts;
        for (size_t i = 0; i < xs.size() && i < series[s].values.size(); ++i)
            pts.emplace_back(f.x(xs[i]), f.y(series[s].values[i]));
        c.polyline(pts, color);
        for (const auto& [px, py] : pts) c.circle(px, py, 2.5, color);
        c.text(f.right - 150, f.top + 14 + 14 * static_cast<double>(s), series[s].name, 10,
               "start", color);
    }
    return c.render();
}

std::string scatter_svg(const std::string& title, const std::string& x_label,
                        const std::string& y_label, const std::vector<ScatterPoint>& points,
                        double x_min, double x_max, double y_min, double y_max) {
    Canvas c(560, 460);
    Frame f{60, 40, 520, 400, x_min, x_max, y_min, y_max};
    c.text(280, 22, title, 13, "middle");
    draw_axes(c, f, x_label, y_label);

    for (int t = 0; t <= 4; ++t) {
        double xv = x_min + (x_max - x_min) * t / 4.0;
        double yv = y_min + (y_max - y_min) * t / 4.0;
        c.text(f.x(xv), f.bottom + 16, num(xv), 10, "middle");
        c.text(f.left - 8, f.y(yv) + 4, num(yv), 10, "end");
    }

    std::vector<std::string> groups;
    for (const auto& p : points)
        if (std::find(groups.begin(), groups.end(), p.group) == groups.end())
            groups.push_back(p.group);
    for (const auto& p : points) {
        size_t gi = static_cast<size_t>(
            std::find(groups.begin(), groups.end(), p.group) - groups.begin());
        c.circle(f.x(p.x), f.y(p.y), 4, kPalette[gi % kPaletteSize]);
    }
    for (size_t gi = 0; gi < groups.size(); ++gi)
        c.text(f.right - 140, f.top + 14 + 14 * static_cast<double>(gi),
               groups[gi].empty() ? "(none)" : groups[gi], 10, "start",
               kPalette[gi % kPaletteSize]);
    return c.render();
}

std::string heatmap_svg(const std::string& title, const std::vector<std::string>& row_labels,
                        const std::vector<std::string>& col_labels,
                        const std::vector<std::vector<int>>& cells) {
    const double cell = 26.0;
    const double left = 120.0, top = 110.0;
    int width = static_cast<int>(left + cell * static_cast<double>(col_labels.size()) + 40);
    int height = static_cast<int>(top + cell * static_cast<double>(row_labels.size()) + 40);
    Canvas c(width, height);
    c.text(static_cast<double>(width) / 2, 22, title, 13, "middle");

    for (size_t j = 0; j < col_labels.size(); ++j) {
        double x = left + cell * static_cast<double>(j) + cell / 2;
        c.body << "<text x=\"" << x << "\" y=\"" << top - 8 << "\" font-size=\"9\""
               << " font-family=\"monospace\" text-anchor=\"start\""
               << " transform=\"rotate(-60 " << x << " " << top - 8 << ")\">"
               << esc(col_labels[j]) << "</text>\n";
    }
    for (size_t i = 0; i < row_labels.size(); ++i)
        c.text(left - 6, top + cell * static_cast<double>(i) + cell * 0.7, row_labels[i], 10,
               "end");

    for (size_t i = 0; i < cells.size(); ++i) {
        for (size_t j = 0; j < cells[i].size(); ++j) {
            const char* fill = cells[i][j] ? "#2ca02c" : "#eeeeee";
            c.rect(left + cell * static_cast<double>(j), top + cell * static_cast<double>(i),
                   cell - 2, cell - 2, fill, "#999");
        }
    }
    return c.render();
}

std::string grouped_bars_svg(const std::string& title, const std::vector<std::string>& groups,
                             const std::vector<Series>& series, double y_max) {
    Canvas c(680, 420);
    Frame f{60, 40, 640, 360, 0, 1, 0, y_max <= 0 ? 1.0 : y_max};
    c.text(340, 22, title, 13, "middle");
    c.line(f.left, f.bottom, f.right, f.bottom, "#444");
    c.line(f.left, f.top, f.left, f.bottom, "#444");
    for (int t = 0; t <= 4; ++t) {
        double v = f.y_max * t / 4.0;
        c.line(f.left - 4, f.y(v), f.left, f.y(v), "#444");
        c.text(f.left - 8, f.y(v) + 4, num(v), 10, "end");
    }

    const double plot_w = f.right - f.left;
    const double group_w = groups.empty() ? plot_w : plot_w / static_cast<double>(groups.size());
    const double bar_w =
        series.empty() ? group_w : group_w * 0.8 / static_cast<double>(series.size());

    for (size_t g = 0; g < groups.size(); ++g) {
        double gx = f.left + group_w * static_cast<double>(g);
        for (size_t s = 0; s < series.size(); ++s) {
            double v = g < series[s].values.size() ? series[s].values[g] : 0.0;
            double h = (f.bottom - f.top) * (v / f.y_max);
            c.rect(gx + group_w * 0.1 + bar_w * static_cast<double>(s), f.bottom - h, bar_w - 1,
                   h, kPalette[s % kPaletteSize]);
        }
        c.text(gx + group_w / 2, f.bottom + 16, groups[g], 10, "middle");
    }
    for (size_t s = 0; s < series.size(); ++s)
        c.text(f.right - 140, f.top + 14 + 14 * static_cast<double>(s), series[s].name, 10,
               "start", kPalette[s % kPaletteSize]);
    return c.render();
}

}  // namespace taskvec::report
