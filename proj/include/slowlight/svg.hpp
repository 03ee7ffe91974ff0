#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "slowlight/csv.hpp"

namespace slowlight {

/// Minimal self-contained SVG line chart; CSV stays the authoritative output.
inline void write_svg_line_chart(const std::filesystem::path& path,
                                 const std::string& title,
                                 const std::string& x_label,
                                 const std::string& y_label,
                                 const std::vector<double>& xs,
                                 const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("chart needs at least two points");

  const double width = 860, height = 540, ml = 90, mr = 30, mt = 50, mb = 70;
  double xmin = xs[0], xmax = xs[0], ymin = ys[0], ymax = ys[0];
  for (std::size_t i = 1; i < xs.size(); ++i) {
    xmin = std::min(xmin, xs[i]);
    xmax = std::max(xmax, xs[i]);
    ymin = std::min(ymin, ys[i]);
    ymax = std::max(ymax, ys[i]);
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) {
    ymax += std::abs(ymax) * 0.5 + 1.0;
    ymin -= std::abs(ymin) * 0.5 + 1.0;
  }
  const double pw = width - ml - mr, ph = height - mt - mb;
  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return mt + ph - (y - ymin) / (ymax - ymin) * ph; };
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return std::string(buf);
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) +
         "\" height=\"" + fmt(height) + "\" viewBox=\"0 0 " + fmt(width) +
         " " + fmt(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fmt(width / 2) + "\" y=\"28\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"17\">" + title + "</text>\n";

  // frame
  svg += "<rect x=\"" + fmt(ml) + "\" y=\"" + fmt(mt) + "\" width=\"" +
         fmt(pw) + "\" height=\"" + fmt(ph) +
         "\" fill=\"none\" stroke=\"black\"/>\n";

  // ticks
  for (int i = 0; i <= 5; ++i) {
    const double xv = xmin + (xmax - xmin) * i / 5.0;
    const double yv = ymin + (ymax - ymin) * i / 5.0;
    svg += "<line x1=\"" + fmt(px(xv)) + "\" y1=\"" + fmt(mt + ph) +
           "\" x2=\"" + fmt(px(xv)) + "\" y2=\"" + fmt(mt + ph + 6) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(px(xv)) + "\" y=\"" + fmt(mt + ph + 22) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">" + fmt(xv) + "</text>\n";
    svg += "<line x1=\"" + fmt(ml - 6) + "\" y1=\"" + fmt(py(yv)) +
           "\" x2=\"" + fmt(ml) + "\" y2=\"" + fmt(py(yv)) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(ml - 10) + "\" y=\"" + fmt(py(yv) + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"12\">" + fmt(yv) + "</text>\n";
  }

  svg += "<text x=\"" + fmt(ml + pw / 2) + "\" y=\"" + fmt(height - 18) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">" + x_label + "</text>\n";
  svg += "<text x=\"22\" y=\"" + fmt(mt + ph / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\" transform=\"rotate(-90 22 " + fmt(mt + ph / 2) +
         ")\">" + y_label + "</text>\n";

  svg += "<polyline fill=\"none\" stroke=\"#155fa8\" stroke-width=\"1.6\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) svg += ' ';
    svg += fmt(px(xs[i])) + "," + fmt(py(ys[i]));
  }
  svg += "\"/>\n</svg>\n";

  write_file_atomic(path, svg);
}

} // namespace slowlight
