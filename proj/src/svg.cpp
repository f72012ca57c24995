#include "qdgate/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "qdgate/csv.hpp"

namespace qdgate {

namespace {

constexpr int kW = 640, kH = 420;
constexpr int kL = 70, kR = 20, kT = 34, kB = 50;

const char* kPalette[8] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                           "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

void minmax(const std::vector<double>& v, double& lo, double& hi) {
  for (double x : v) {
    if (!std::isfinite(x)) continue;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
}

std::string num(double v) { return format_double(v); }

std::string axes_frame(double x0, double x1, double y0, double y1,
                       const std::string& x_label,
                       const std::string& y_label,
                       const std::string& title) {
  std::string s;
  s += "<rect x='" + std::to_string(kL) + "' y='" + std::to_string(kT) +
       "' width='" + std::to_string(kW - kL - kR) + "' height='" +
       std::to_string(kH - kT - kB) +
       "' fill='none' stroke='#444' stroke-width='1'/>\n";
  s += "<text x='" + std::to_string(kW / 2) +
       "' y='20' text-anchor='middle' font-size='14'>" + title + "</text>\n";
  s += "<text x='" + std::to_string(kW / 2) + "' y='" +
       std::to_string(kH - 12) + "' text-anchor='middle' font-size='12'>" +
       x_label + "</text>\n";
  s += "<text x='16' y='" + std::to_string(kH / 2) +
       "' text-anchor='middle' font-size='12' transform='rotate(-90 16 " +
       std::to_string(kH / 2) + ")'>" + y_label + "</text>\n";
  s += "<text x='" + std::to_string(kL) + "' y='" + std::to_string(kH - 32) +
       "' font-size='10'>" + num(x0) + "</text>\n";
  s += "<text x='" + std::to_string(kW - kR) + "' y='" +
       std::to_string(kH - 32) + "' text-anchor='end' font-size='10'>" +
       num(x1) + "</text>\n";
  s += "<text x='" + std::to_string(kL - 4) + "' y='" +
       std::to_string(kH - kB) + "' text-anchor='end' font-size='10'>" +
       num(y0) + "</text>\n";
  s += "<text x='" + std::to_string(kL - 4) + "' y='" +
       std::to_string(kT + 10) + "' text-anchor='end' font-size='10'>" +
       num(y1) + "</text>\n";
  return s;
}

}  // namespace

std::string svg_line_chart(const std::vector<SvgSeries>& series,
                           const std::string& x_label,
                           const std::string& y_label,
                           const std::string& title) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
  double y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    minmax(s.x, x0, x1);
    minmax(s.y, y0, y1);
  }
  if (!(x1 > x0)) x1 = x0 + 1.0;
  if (!(y1 > y0)) y1 = y0 + 1.0;

  auto px = [&](double x) {
    return kL + (x - x0) / (x1 - x0) * (kW - kL - kR);
  };
  auto py = [&](double y) {
    return kH - kB - (y - y0) / (y1 - y0) * (kH - kT - kB);
  };

  std::string svg = "<svg xmlns='http://www.w3.org/2000/svg' width='" +
                    std::to_string(kW) + "' height='" + std::to_string(kH) +
                    "'>\n";
  svg += axes_frame(x0, x1, y0, y1, x_label, y_label, title);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    std::string pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      pts += num(px(s.x[i])) + "," + num(py(s.y[i])) + " ";
    }
    svg += "<polyline fill='none' stroke='" +
           std::string(kPalette[k % 8]) + "' stroke-width='1.5' points='" +
           pts + "'/>\n";
    svg += "<text x='" + std::to_string(kW - kR - 4) + "' y='" +
           std::to_string(kT + 16 + 14 * static_cast<int>(k)) +
           "' text-anchor='end' font-size='11' fill='" + kPalette[k % 8] +
           "'>" + s.label + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string svg_heatmap(const std::vector<std::vector<double>>& values,
                        const std::vector<double>& x,
                        const std::vector<double>& y,
                        const std::string& x_label,
                        const std::string& y_label, const std::string& title,
                        bool log_color) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& row : values) minmax(row, lo, hi);
  if (log_color) {
    lo = lo > 0 ? std::log10(lo) : -12.0;
    hi = hi > 0 ? std::log10(hi) : 0.0;
  }
  if (!(hi > lo)) hi = lo + 1.0;

  const std::size_t ny = values.size();
  const std::size_t nx = ny ? values[0].size() : 0;
  const double cw = double(kW - kL - kR) / std::max<std::size_t>(nx, 1);
  const double ch = double(kH - kT - kB) / std::max<std::size_t>(ny, 1);

  auto color = [&](double v) {
    if (log_color) v = v > 0 ? std::log10(v) : lo;
    double u = std::clamp((v - lo) / (hi - lo), 0.0, 1.0);
    // blue (low) -> yellow -> red (high)
    int r, g, b;
    if (u < 0.5) {
      const double w = u / 0.5;
      r = int(31 + w * (255 - 31));
      g = int(119 + w * (221 - 119));
      b = int(180 - w * 180);
    } else {
      const double w = (u - 0.5) / 0.5;
      r = 255;
      g = int(221 - w * 221);
      b = int(w * 40);
    }
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return std::string(buf);
  };

  std::string svg = "<svg xmlns='http://www.w3.org/2000/svg' width='" +
                    std::to_string(kW) + "' height='" + std::to_string(kH) +
                    "'>\n";
  const double x0 = x.empty() ? 0 : x.front(), x1 = x.empty() ? 1 : x.back();
  const double y0 = y.empty() ? 0 : y.front(), y1 = y.empty() ? 1 : y.back();
  svg += axes_frame(x0, x1, y0, y1, x_label, y_label, title);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const double v = values[iy][ix];
      if (!std::isfinite(v)) continue;
      const double px = kL + cw * ix;
      const double py = kH - kB - ch * (iy + 1);
      svg += "<rect x='" + num(px) + "' y='" + num(py) + "' width='" +
             num(cw + 0.5) + "' height='" + num(ch + 0.5) + "' fill='" +
             color(v) + "'/>\n";
    }
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace qdgate
