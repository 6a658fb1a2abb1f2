/*
 * Copyright 2026 The irssec Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

namespace irssec::tools {

namespace {

constexpr double kW = 640, kH = 420, kLeft = 70, kRight = 150, kTop = 30, kBottom = 50;
const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

}  // namespace

std::string aggregate_svg(const std::vector<AggregateRow>& rows) {
  std::vector<std::string> methods;
  std::map<std::string, std::vector<std::pair<double, double>>> lines;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& r : rows) {
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) methods.push_back(r.method);
    if (!std::isfinite(r.mean_power_dbm)) continue;
    lines[r.method].emplace_back(r.sweep_value, r.mean_power_dbm);
    x0 = std::min(x0, r.sweep_value);
    x1 = std::max(x1, r.sweep_value);
    y0 = std::min(y0, r.mean_power_dbm);
    y1 = std::max(y1, r.mean_power_dbm);
  }
  if (!(x0 < x1)) x0 -= 1, x1 += 1;
  if (!(y0 < y1)) y0 -= 1, y1 += 1;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  const double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;
  auto X = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  auto Y = [&](double y) { return kTop + (y1 - y) / (y1 - y0) * ph; };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4, yv = y0 + (y1 - y0) * i / 4;
    s << "<text x=\"" << X(xv) << "\" y=\"" << kH - kBottom + 18 << "\" text-anchor=\"middle\">" << num(xv)
      << "</text>\n";
    s << "<text x=\"" << kLeft - 6 << "\" y=\"" << Y(yv) + 4 << "\" text-anchor=\"end\">" << num(yv) << "</text>\n";
  }
  const std::string var = rows.empty() ? "" : rows.front().sweep_var;
  s << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kH - 10 << "\" text-anchor=\"middle\">" << var << "</text>\n";
  s << "<text x=\"16\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << kTop + ph / 2 << ")\">mean transmit power (dBm)</text>\n";
  for (std::size_t m = 0; m < methods.size(); ++m) {
    const char* c = kColors[m % std::size(kColors)];
    auto pts = lines[methods[m]];
    std::sort(pts.begin(), pts.end());
    s << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"2\" points=\"";
    for (const auto& [x, y] : pts) s << X(x) << ',' << Y(y) << ' ';
    s << "\"/>\n";
    for (const auto& [x, y] : pts) s << "<circle cx=\"" << X(x) << "\" cy=\"" << Y(y) << "\" r=\"3\" fill=\"" << c << "\"/>\n";
    const double ly = kTop + 14 + 18 * static_cast<double>(m);
    s << "<line x1=\"" << kW - kRight + 12 << "\" y1=\"" << ly - 4 << "\" x2=\"" << kW - kRight + 32 << "\" y2=\""
      << ly - 4 << "\" stroke=\"" << c << "\" stroke-width=\"2\"/>\n";
    s << "<text x=\"" << kW - kRight + 38 << "\" y=\"" << ly << "\">" << methods[m] << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace irssec::tools
