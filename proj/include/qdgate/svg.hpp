#pragma once

#include <string>
#include <vector>

namespace qdgate {

// Static, dependency-free SVG charts. These are a convenience layer only;
// all quantitative output goes through CSV.

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

std::string svg_line_chart(const std::vector<SvgSeries>& series,
                           const std::string& x_label,
                           const std::string& y_label,
                           const std::string& title);

// values[iy][ix], drawn with a blue -> yellow -> red colormap.
std::string svg_heatmap(const std::vector<std::vector<double>>& values,
                        const std::vector<double>& x,
                        const std::vector<double>& y,
                        const std::string& x_label,
                        const std::string& y_label, const std::string& title,
                        bool log_color = false);

}  // namespace qdgate
