// Copyright 2026 The QSL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsl/cli/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace qsl::cli {

namespace {

constexpr double kLeft = 80.0;
constexpr double kRight = 30.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 70.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Round the span up to 1, 2 or 5 times a power of ten.
double nice_step(double span, int target_ticks) {
  if (!(span > 0.0)) return 1.0;
  const double raw = span / target_ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

struct Frame {
  double x0, x1, y0, y1;

  double px(double x) const {
    const double w = SvgPlot::kWidth - kLeft - kRight;
    return kLeft + (x - x0) / (x1 - x0) * w;
  }
  double py(double y) const {
    const double h = SvgPlot::kHeight - kTop - kBottom;
    return SvgPlot::kHeight - kBottom - (y - y0) / (y1 - y0) * h;
  }
};

}  // namespace

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void SvgPlot::add(Series series) { series_.push_back(std::move(series)); }

std::string SvgPlot::render() const {
  Frame f{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
          0.0, -std::numeric_limits<double>::infinity()};
  for (const auto& s : series_) {
    for (const auto& p : s.points) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
      f.x0 = std::min(f.x0, p.x);
      f.x1 = std::max(f.x1, p.x);
      f.y1 = std::max(f.y1, p.y);
    }
  }
  if (!std::isfinite(f.x0)) {
    f.x0 = 0.0;
    f.x1 = 1.0;
  }
  if (f.x1 <= f.x0) f.x1 = f.x0 + 1.0;
  if (!(f.y1 > 0.0)) f.y1 = 1.0;
  const double ystep = nice_step(f.y1, 6);
  f.y1 = std::ceil(f.y1 / ystep) * ystep;
  const double xstep = nice_step(f.x1 - f.x0, 8);

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"30\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">"
      << escape(title_) << "</text>\n";

  // Shaded regions go first so lines and markers sit on top.
  for (const auto& s : series_) {
    if (s.style != SeriesStyle::ShadedBelow || s.points.empty()) continue;
    out << "<polygon fill=\"#cccccc\" fill-opacity=\"0.6\" stroke=\"none\" points=\"";
    out << num(f.px(s.points.front().x)) << ',' << num(f.py(0.0));
    for (const auto& p : s.points) out << ' ' << num(f.px(p.x)) << ',' << num(f.py(p.y));
    out << ' ' << num(f.px(s.points.back().x)) << ',' << num(f.py(0.0)) << "\"/>\n";
  }

  // Axes and ticks.
  out << "<g stroke=\"black\" stroke-width=\"1\">\n";
  out << "<line x1=\"" << num(f.px(f.x0)) << "\" y1=\"" << num(f.py(0.0)) << "\" x2=\""
      << num(f.px(f.x1)) << "\" y2=\"" << num(f.py(0.0)) << "\"/>\n";
  out << "<line x1=\"" << num(f.px(f.x0)) << "\" y1=\"" << num(f.py(0.0)) << "\" x2=\""
      << num(f.px(f.x0)) << "\" y2=\"" << num(f.py(f.y1)) << "\"/>\n";
  out << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (double x = std::ceil(f.x0 / xstep) * xstep; x <= f.x1 + 1e-9 * xstep; x += xstep) {
    out << "<line x1=\"" << num(f.px(x)) << "\" y1=\"" << num(f.py(0.0)) << "\" x2=\""
        << num(f.px(x)) << "\" y2=\"" << num(f.py(0.0) + 5) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(f.px(x)) << "\" y=\"" << num(f.py(0.0) + 20)
        << "\" text-anchor=\"middle\">" << tick_label(x) << "</text>\n";
  }
  for (double y = 0.0; y <= f.y1 + 1e-9 * ystep; y += ystep) {
    out << "<line x1=\"" << num(f.px(f.x0) - 5) << "\" y1=\"" << num(f.py(y)) << "\" x2=\""
        << num(f.px(f.x0)) << "\" y2=\"" << num(f.py(y)) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(f.px(f.x0) - 8) << "\" y=\"" << num(f.py(y) + 4)
        << "\" text-anchor=\"end\">" << tick_label(y) << "</text>\n";
  }
  out << "<text x=\"" << num(kLeft + (kWidth - kLeft - kRight) / 2) << "\" y=\""
      << kHeight - 25 << "\" text-anchor=\"middle\">" << escape(x_label_) << "</text>\n";
  out << "<text x=\"20\" y=\"" << num(kTop + (kHeight - kTop - kBottom) / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << num(kTop + (kHeight - kTop - kBottom) / 2) << ")\">" << escape(y_label_)
      << "</text>\n</g>\n";

  int legend_row = 0;
  for (const auto& s : series_) {
    const double ly = kTop + 15.0 * legend_row++;
    const double lx = kWidth - kRight - 170.0;
    switch (s.style) {
      case SeriesStyle::DashedLine: {
        out << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" "
               "stroke-dasharray=\"6,4\" points=\"";
        for (std::size_t i = 0; i < s.points.size(); ++i) {
          if (i) out << ' ';
          out << num(f.px(s.points[i].x)) << ',' << num(f.py(s.points[i].y));
        }
        out << "\"/>\n";
        out << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 25)
            << "\" y2=\"" << num(ly) << "\" stroke=\"#1f4e9c\" stroke-dasharray=\"6,4\"/>\n";
        break;
      }
      case SeriesStyle::Asterisks: {
        out << "<g stroke=\"#b22222\" stroke-width=\"1.2\">\n";
        for (const auto& p : s.points) {
          if (!std::isfinite(p.y)) continue;
          const double cx = f.px(p.x);
          const double cy = f.py(p.y);
          out << "<path d=\"M" << num(cx - 4) << ' ' << num(cy) << "H" << num(cx + 4) << "M"
              << num(cx - 3) << ' ' << num(cy - 3) << "L" << num(cx + 3) << ' ' << num(cy + 3)
              << "M" << num(cx - 3) << ' ' << num(cy + 3) << "L" << num(cx + 3) << ' '
              << num(cy - 3) << "\"/>\n";
        }
        out << "</g>\n";
        out << "<text x=\"" << num(lx + 12) << "\" y=\"" << num(ly + 4)
            << "\" text-anchor=\"middle\" fill=\"#b22222\" font-size=\"16\">*</text>\n";
        break;
      }
      case SeriesStyle::ShadedBelow:
        out << "<rect x=\"" << num(lx) << "\" y=\"" << num(ly - 5)
            << "\" width=\"25\" height=\"10\" fill=\"#cccccc\"/>\n";
        break;
    }
    out << "<text x=\"" << num(lx + 32) << "\" y=\"" << num(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(s.label)
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace qsl::cli
