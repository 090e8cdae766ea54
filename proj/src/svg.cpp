#include "adapilot/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "adapilot/error.hpp"

namespace adapilot::svg {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 460.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 160.0;  // leaves room for the legend
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;
constexpr double kLogFloor = 1e-7;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                          "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

void write_chart(const Chart& chart, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open chart file: " + path);
    }

    double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
    bool any = false;
    for (const auto& s : chart.series) {
        for (const auto& p : s.points) {
            const double y = chart.log_y ? std::max(p.y, kLogFloor) : p.y;
            if (!any) {
                x_min = x_max = p.x;
                y_min = y_max = y;
                any = true;
            } else {
                x_min = std::min(x_min, p.x);
                x_max = std::max(x_max, p.x);
                y_min = std::min(y_min, y);
                y_max = std::max(y_max, y);
            }
        }
    }
    if (!any) {
        throw ConfigError("write_chart: no data points");
    }
    if (x_max == x_min) {
        x_max = x_min + 1.0;
    }
    if (chart.log_y) {
        y_min = std::pow(10.0, std::floor(std::log10(y_min)));
        y_max = std::pow(10.0, std::ceil(std::log10(y_max)));
        if (y_max == y_min) {
            y_max = y_min * 10.0;
        }
    } else {
        if (y_max == y_min) {
            y_max = y_min + 1.0;
        }
        const double pad = 0.05 * (y_max - y_min);
        y_min = std::max(0.0, y_min - pad);
        y_max += pad;
    }

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    const auto to_x = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
    const auto to_y = [&](double y) {
        const double v = chart.log_y ? std::log10(std::max(y, kLogFloor)) : y;
        const double lo = chart.log_y ? std::log10(y_min) : y_min;
        const double hi = chart.log_y ? std::log10(y_max) : y_max;
        return kTop + plot_h - (v - lo) / (hi - lo) * plot_h;
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"22\" text-anchor=\"middle\" "
        << "font-size=\"15\">" << chart.title << "</text>\n";

    // Frame.
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\""
        << plot_h << "\" fill=\"none\" stroke=\"#333\"/>\n";

    // X ticks.
    const int x_ticks = 6;
    for (int i = 0; i <= x_ticks; ++i) {
        const double x = x_min + (x_max - x_min) * i / x_ticks;
        const double px = to_x(x);
        out << "<line x1=\"" << px << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << px << "\" y2=\""
            << kTop + plot_h + 5 << "\" stroke=\"#333\"/>\n";
        out << "<text x=\"" << px << "\" y=\"" << kTop + plot_h + 20
            << "\" text-anchor=\"middle\">" << fmt(x) << "</text>\n";
    }
    out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 10
        << "\" text-anchor=\"middle\">" << chart.x_label << "</text>\n";

    // Y ticks.
    if (chart.log_y) {
        for (double v = y_min; v <= y_max * 1.0001; v *= 10.0) {
            const double py = to_y(v);
            out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py << "\" x2=\"" << kLeft
                << "\" y2=\"" << py << "\" stroke=\"#333\"/>\n";
            out << "<line x1=\"" << kLeft << "\" y1=\"" << py << "\" x2=\"" << kLeft + plot_w
                << "\" y2=\"" << py << "\" stroke=\"#eee\"/>\n";
            out << "<text x=\"" << kLeft - 8 << "\" y=\"" << py + 4
                << "\" text-anchor=\"end\">" << fmt(v) << "</text>\n";
        }
    } else {
        const int y_ticks = 5;
        for (int i = 0; i <= y_ticks; ++i) {
            const double v = y_min + (y_max - y_min) * i / y_ticks;
            const double py = to_y(v);
            out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py << "\" x2=\"" << kLeft
                << "\" y2=\"" << py << "\" stroke=\"#333\"/>\n";
            out << "<line x1=\"" << kLeft << "\" y1=\"" << py << "\" x2=\"" << kLeft + plot_w
                << "\" y2=\"" << py << "\" stroke=\"#eee\"/>\n";
            out << "<text x=\"" << kLeft - 8 << "\" y=\"" << py + 4
                << "\" text-anchor=\"end\">" << fmt(v) << "</text>\n";
        }
    }
    out << "<text x=\"18\" y=\"" << kTop + plot_h / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << kTop + plot_h / 2 << ")\">"
        << chart.y_label << "</text>\n";

    // Curves plus legend.
    for (std::size_t s = 0; s < chart.series.size(); ++s) {
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        const auto& series = chart.series[s];
        if (!series.points.empty()) {
            out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\"";
            for (const auto& p : series.points) {
                out << to_x(p.x) << ',' << to_y(chart.log_y ? std::max(p.y, kLogFloor) : p.y) << ' ';
            }
            out << "\"/>\n";
            for (const auto& p : series.points) {
                out << "<circle cx=\"" << to_x(p.x) << "\" cy=\""
                    << to_y(chart.log_y ? std::max(p.y, kLogFloor) : p.y)
                    << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
            }
        }
        const double ly = kTop + 14 + 18.0 * s;
        out << "<line x1=\"" << kWidth - kRight + 12 << "\" y1=\"" << ly << "\" x2=\""
            << kWidth - kRight + 34 << "\" y2=\"" << ly << "\" stroke=\"" << color
            << "\" stroke-width=\"1.8\"/>\n";
        out << "<text x=\"" << kWidth - kRight + 40 << "\" y=\"" << ly + 4 << "\">" << series.label
            << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace adapilot::svg
