/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The rsri Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/core.h>

#include "rsri/harness.hpp"

namespace rsri {

namespace {

constexpr double kWidth = 800, kHeight = 600;
constexpr double kLeft = 90, kRight = 170, kTop = 50, kBottom = 70;
constexpr std::array<const char*, 6> kColors = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string escape(std::string_view s) {
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

bool usable(double x, double y) { return x > 0.0 && y > 0.0 && std::isfinite(x) && std::isfinite(y); }

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void widen(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  // Snap to whole decades, at least one wide.
  void finish() {
    if (!(lo <= hi)) lo = hi = 0.0;
    lo = std::floor(lo);
    hi = std::ceil(hi);
    if (hi <= lo) hi = lo + 1.0;
  }
};

}  // namespace

std::string loglog_svg(std::string_view title, std::string_view x_label, std::string_view y_label,
                       std::span<const PlotSeries> series) {
  Range rx, ry;
  for (const PlotSeries& s : series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!usable(s.x[i], s.y[i])) continue;
      rx.widen(std::log10(s.x[i]));
      ry.widen(std::log10(s.y[i]));
    }
  }
  rx.finish();
  ry.finish();
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double lx) { return kLeft + (lx - rx.lo) / (rx.hi - rx.lo) * pw; };
  auto py = [&](double ly) { return kTop + (ry.hi - ly) / (ry.hi - ry.lo) * ph; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\">\n",
      kWidth, kHeight);
  out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", kWidth, kHeight);
  out += fmt::format("<text x=\"{}\" y=\"28\" font-family=\"sans-serif\" font-size=\"18\" text-anchor=\"middle\">{}</text>\n",
                     kLeft + pw / 2, escape(title));
  out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", kLeft,
                     kTop, pw, ph);

  for (double d = rx.lo; d <= rx.hi + 0.5; d += 1.0) {
    const double x = px(d);
    out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1}\" x2=\"{0:.2f}\" y2=\"{2}\" stroke=\"#dddddd\"/>\n", x, kTop,
                       kTop + ph);
    out += fmt::format(
        "<text x=\"{:.2f}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">1e{}</text>\n",
        x, kTop + ph + 18, static_cast<int>(d));
  }
  for (double d = ry.lo; d <= ry.hi + 0.5; d += 1.0) {
    const double y = py(d);
    out += fmt::format("<line x1=\"{1}\" y1=\"{0:.2f}\" x2=\"{2}\" y2=\"{0:.2f}\" stroke=\"#dddddd\"/>\n", y, kLeft,
                       kLeft + pw);
    out += fmt::format(
        "<text x=\"{}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">1e{}</text>\n",
        kLeft - 6, y + 4, static_cast<int>(d));
  }
  out += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">{}</text>\n",
                     kLeft + pw / 2, kHeight - 20, escape(x_label));
  out += fmt::format(
      "<text x=\"24\" y=\"{0}\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\" "
      "transform=\"rotate(-90 24 {0})\">{1}</text>\n",
      kTop + ph / 2, escape(y_label));

  for (std::size_t k = 0; k < series.size(); ++k) {
    const PlotSeries& s = series[k];
    const char* color = kColors[k % kColors.size()];
    std::string points;
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!usable(s.x[i], s.y[i])) continue;
      if (!points.empty()) points += ' ';
      points += fmt::format("{:.2f},{:.2f}", px(std::log10(s.x[i])), py(std::log10(s.y[i])));
    }
    out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"/>\n", color, points);
    const double ly = kTop + 20 + 22 * static_cast<double>(k);
    out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\" stroke-width=\"2\"/>\n",
                       kLeft + pw + 15, ly, kLeft + pw + 45, color);
    out += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
                       kLeft + pw + 52, ly + 4, escape(s.name));
  }
  out += "</svg>\n";
  return out;
}

}  // namespace rsri
