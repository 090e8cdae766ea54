#pragma once

#include <string>
#include <vector>

namespace adapilot::svg {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct Series {
    std::string label;
    std::vector<Point> points;  // sorted by x
};

struct Chart {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    std::vector<Series> series;
};

// Static line chart; log-scale charts floor non-positive values at 1e-7.
void write_chart(const Chart& chart, const std::string& path);

}  // namespace adapilot::svg
