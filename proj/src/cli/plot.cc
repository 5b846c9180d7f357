// Copyright 2026 The QAEval Toolkit Authors.
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

#include "qaeval/cli/plot.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace qaeval::cli {

namespace {

constexpr double kWidth = 480.0;
constexpr double kHeight = 320.0;
constexpr double kLeft = 60.0;
constexpr double kRight = 20.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 50.0;

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
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

}  // namespace

std::string CurveSvg(const std::vector<CurvePoint>& curve,
                     const std::string& title, const std::string& x_label,
                     const std::string& y_label) {
  double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
  if (!curve.empty()) {
    x_min = x_max = curve.front().size;
    y_min = curve.front().ci_low;
    y_max = curve.front().ci_high;
    for (const auto& p : curve) {
      x_min = std::min<double>(x_min, p.size);
      x_max = std::max<double>(x_max, p.size);
      y_min = std::min(y_min, p.ci_low);
      y_max = std::max(y_max, p.ci_high);
    }
  }
  if (x_max == x_min) { x_min -= 1; x_max += 1; }
  if (y_max - y_min < 1e-6) { y_min -= 0.05; y_max += 0.05; }
  const double pad = 0.05 * (y_max - y_min);
  y_min -= pad;
  y_max += pad;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto sy = [&](double y) { return kTop + (y_max - y) / (y_max - y_min) * plot_h; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + Num(kWidth) +
         "\" height=\"" + Num(kHeight) + "\" font-family=\"sans-serif\" "
         "font-size=\"11\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + Num(kWidth / 2) + "\" y=\"18\" text-anchor=\"middle\">" +
         Escape(title) + "</text>\n";
  // Axes.
  svg += "<line x1=\"" + Num(kLeft) + "\" y1=\"" + Num(kTop + plot_h) +
         "\" x2=\"" + Num(kLeft + plot_w) + "\" y2=\"" + Num(kTop + plot_h) +
         "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + Num(kLeft) + "\" y1=\"" + Num(kTop) + "\" x2=\"" +
         Num(kLeft) + "\" y2=\"" + Num(kTop + plot_h) +
         "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double y = y_min + (y_max - y_min) * t / 4.0;
    svg += "<text x=\"" + Num(kLeft - 6) + "\" y=\"" + Num(sy(y) + 4) +
           "\" text-anchor=\"end\">" + Num(y) + "</text>\n";
  }
  for (const auto& p : curve) {
    svg += "<text x=\"" + Num(sx(p.size)) + "\" y=\"" +
           Num(kTop + plot_h + 16) + "\" text-anchor=\"middle\">" +
           std::to_string(p.size) + "</text>\n";
  }
  svg += "<text x=\"" + Num(kLeft + plot_w / 2) + "\" y=\"" +
         Num(kHeight - 10) + "\" text-anchor=\"middle\">" + Escape(x_label) +
         "</text>\n";
  svg += "<text transform=\"translate(14," + Num(kTop + plot_h / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">" + Escape(y_label) +
         "</text>\n";

  // Error bars, then the mean line.
  for (const auto& p : curve) {
    svg += "<line x1=\"" + Num(sx(p.size)) + "\" y1=\"" + Num(sy(p.ci_low)) +
           "\" x2=\"" + Num(sx(p.size)) + "\" y2=\"" + Num(sy(p.ci_high)) +
           "\" stroke=\"steelblue\"/>\n";
  }
  if (!curve.empty()) {
    svg += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" "
           "points=\"";
    for (std::size_t i = 0; i < curve.size(); ++i) {
      if (i) svg += ' ';
      svg += Num(sx(curve[i].size)) + "," + Num(sy(curve[i].mean));
    }
    svg += "\"/>\n";
  }
  for (const auto& p : curve) {
    svg += "<circle cx=\"" + Num(sx(p.size)) + "\" cy=\"" + Num(sy(p.mean)) +
           "\" r=\"3\" fill=\"steelblue\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace qaeval::cli
