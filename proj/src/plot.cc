// Copyright 2026 The Truthbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "truthbench/plot.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "truthbench/errors.h"

namespace truthbench {
namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 400;
constexpr double kLeft = 70;
constexpr double kRight = 150;
constexpr double kTop = 40;
constexpr double kBottom = 50;

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string Tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string Escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame {
  double x0, x1, y0, y1;

  double X(double x) const {
    return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight);
  }
  double Y(double y) const {
    return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom);
  }
};

void Header(std::ostringstream& os, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
     << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\" "
     << "font-size=\"11\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << Num(kWidth / 2) << "\" y=\"20\" "
     << "text-anchor=\"middle\" font-size=\"14\">" << Escape(title)
     << "</text>\n";
}

void Axes(std::ostringstream& os, const Frame& f, const std::string& x_label,
          const std::string& y_label, bool x_ticks) {
  const double bottom = kHeight - kBottom;
  const double right = kWidth - kRight;
  os << "<line x1=\"" << Num(kLeft) << "\" y1=\"" << Num(bottom) << "\" x2=\""
     << Num(right) << "\" y2=\"" << Num(bottom) << "\" stroke=\"black\"/>\n"
     << "<line x1=\"" << Num(kLeft) << "\" y1=\"" << Num(kTop) << "\" x2=\""
     << Num(kLeft) << "\" y2=\"" << Num(bottom) << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = f.y0 + (f.y1 - f.y0) * i / 4;
    os << "<text x=\"" << Num(kLeft - 6) << "\" y=\"" << Num(f.Y(v) + 4)
       << "\" text-anchor=\"end\">" << Tick(v) << "</text>\n";
    if (x_ticks) {
      const double u = f.x0 + (f.x1 - f.x0) * i / 4;
      os << "<text x=\"" << Num(f.X(u)) << "\" y=\"" << Num(bottom + 16)
         << "\" text-anchor=\"middle\">" << Tick(u) << "</text>\n";
    }
  }
  os << "<text x=\"" << Num((kLeft + right) / 2) << "\" y=\""
     << Num(kHeight - 10) << "\" text-anchor=\"middle\">" << Escape(x_label)
     << "</text>\n"
     << "<text x=\"16\" y=\"" << Num((kTop + bottom) / 2)
     << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << Num((kTop + bottom) / 2) << ")\">" << Escape(y_label) << "</text>\n";
}

}  // namespace

std::string RenderLineChart(const LineChart& chart) {
  if (chart.series.empty()) throw InputError("line chart without series");
  double x0 = INFINITY, x1 = -INFINITY, y0 = 0, y1 = -INFINITY;
  for (const Series& s : chart.series) {
    if (s.x.empty() || s.x.size() != s.y.size()) {
      throw InputError("series '" + s.label + "' has mismatched data");
    }
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
        throw InputError("series '" + s.label + "' has non-finite data");
      }
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (x1 <= x0) x1 = x0 + 1;
  if (y1 <= y0) y1 = y0 + 1;
  y1 += (y1 - y0) * 0.05;
  const Frame f{x0, x1, y0, y1};

  std::ostringstream os;
  Header(os, chart.title);
  Axes(os, f, chart.x_label, chart.y_label, true);
  for (size_t k = 0; k < chart.series.size(); ++k) {
    const Series& s = chart.series[k];
    os << "<polyline fill=\"none\" stroke=\"" << Escape(s.color)
       << "\" stroke-width=\"1.5\"";
    if (s.dashed) os << " stroke-dasharray=\"5,4\"";
    os << " points=\"";
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (i) os << ' ';
      os << Num(f.X(s.x[i])) << ',' << Num(f.Y(s.y[i]));
    }
    os << "\"/>\n";
    const double ly = kTop + 14 + 18 * static_cast<double>(k);
    const double lx = kWidth - kRight + 10;
    os << "<line x1=\"" << Num(lx) << "\" y1=\"" << Num(ly) << "\" x2=\""
       << Num(lx + 20) << "\" y2=\"" << Num(ly) << "\" stroke=\""
       << Escape(s.color) << "\" stroke-width=\"1.5\""
       << (s.dashed ? " stroke-dasharray=\"5,4\"" : "") << "/>\n"
       << "<text x=\"" << Num(lx + 26) << "\" y=\"" << Num(ly + 4) << "\">"
       << Escape(s.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string RenderBarChart(const BarChart& chart) {
  if (chart.values.empty() || chart.labels.size() != chart.values.size()) {
    throw InputError("bar chart needs one label per value");
  }
  double y1 = 0;
  for (double v : chart.values) {
    if (!std::isfinite(v) || v < 0) {
      throw InputError("bar chart values must be finite and nonnegative");
    }
    y1 = std::max(y1, v);
  }
  if (y1 == 0) y1 = 1;
  const double n = static_cast<double>(chart.values.size());
  const Frame f{0, n, 0, y1 * 1.05};

  std::ostringstream os;
  Header(os, chart.title);
  Axes(os, f, chart.x_label, chart.y_label, false);
  const double slot = (kWidth - kLeft - kRight) / n;
  for (size_t i = 0; i < chart.values.size(); ++i) {
    const double x = f.X(static_cast<double>(i)) + slot * 0.1;
    const double top = f.Y(chart.values[i]);
    os << "<rect x=\"" << Num(x) << "\" y=\"" << Num(top) << "\" width=\""
       << Num(slot * 0.8) << "\" height=\"" << Num(kHeight - kBottom - top)
       << "\" fill=\"#1f77b4\"/>\n"
       << "<text x=\"" << Num(x + slot * 0.4) << "\" y=\""
       << Num(kHeight - kBottom + 16) << "\" text-anchor=\"middle\">"
       << Escape(chart.labels[i]) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace truthbench
