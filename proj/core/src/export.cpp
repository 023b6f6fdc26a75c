// Copyright 2026 The iacloop Authors.
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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "iacloop/bench_harness.hpp"

namespace iacloop::bench {

namespace {

// Fixed six decimals with trailing zeros (and a bare point) trimmed.
std::string decimal(double v) {
  if (std::abs(v) < 5e-7) v = 0.0;  // avoid "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  return s;
}

constexpr double kWidth = 800;
constexpr double kHeight = 500;
constexpr double kLeft = 70;
constexpr double kRight = 20;
constexpr double kTop = 30;
constexpr double kBottom = 60;

double nice_ceiling(double v) {
  if (v <= 0) return 1;
  const double mag = std::pow(10.0, std::floor(std::log10(v)));
  for (double step : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (step * mag >= v) return step * mag;
  }
  return 10 * mag;
}

}  // namespace

std::string stats_to_csv(const AggregateStats& stats) {
  std::string out = "iteration,mean_errors,std_errors,mean_warnings,std_warnings\n";
  for (std::size_t i = 0; i < stats.iterations.size(); ++i) {
    const IterationStats& s = stats.iterations[i];
    out += std::to_string(i) + ',' + decimal(s.mean_errors) + ',' + decimal(s.std_errors) + ',' +
           decimal(s.mean_warnings) + ',' + decimal(s.std_warnings) + '\n';
  }
  return out;
}

std::string stats_to_svg(const AggregateStats& stats, const SvgOptions& options) {
  const std::size_t first = options.skip_initial && !stats.iterations.empty() ? 1 : 0;
  const std::size_t n = stats.iterations.size() - first;

  double top = 0;
  for (std::size_t i = first; i < stats.iterations.size(); ++i) {
    const IterationStats& s = stats.iterations[i];
    top = std::max(top, s.mean_errors + s.std_errors);
  }
  const double y_max = nice_ceiling(top);
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const double base_y = kTop + plot_h;
  const double slot = n ? plot_w / static_cast<double>(n) : plot_w;
  const double bar_w = slot * 0.7;
  auto y_of = [&](double v) { return base_y - plot_h * std::clamp(v, 0.0, y_max) / y_max; };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
         "viewBox=\"0 0 800 500\">\n";
  svg += "  <rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n";
  svg += "  <line class=\"axis\" x1=\"" + decimal(kLeft) + "\" y1=\"" + decimal(base_y) +
         "\" x2=\"" + decimal(kWidth - kRight) + "\" y2=\"" + decimal(base_y) +
         "\" stroke=\"black\"/>\n";
  svg += "  <line class=\"axis\" x1=\"" + decimal(kLeft) + "\" y1=\"" + decimal(kTop) +
         "\" x2=\"" + decimal(kLeft) + "\" y2=\"" + decimal(base_y) + "\" stroke=\"black\"/>\n";

  for (int tick = 0; tick <= 5; ++tick) {
    const double v = y_max * tick / 5.0;
    const double y = y_of(v);
    svg += "  <text class=\"tick\" x=\"" + decimal(kLeft - 6) + "\" y=\"" + decimal(y + 4) +
           "\" font-size=\"11\" text-anchor=\"end\">" + decimal(v) + "</text>\n";
  }

  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = first + k;
    const IterationStats& s = stats.iterations[i];
    const double cx = kLeft + slot * (static_cast<double>(k) + 0.5);
    const double y = y_of(s.mean_errors);
    const double h = base_y - y;
    svg += "  <rect class=\"bar\" x=\"" + decimal(cx - bar_w / 2) + "\" y=\"" + decimal(y) +
           "\" width=\"" + decimal(bar_w) + "\" height=\"" + decimal(h) +
           "\" fill=\"steelblue\"/>\n";
    if (s.std_errors > 0) {
      const double lo = y_of(s.mean_errors - s.std_errors);
      const double hi = y_of(s.mean_errors + s.std_errors);
      const double cap = bar_w / 4;
      svg += "  <g class=\"whisker\" stroke=\"black\">";
      svg += "<line x1=\"" + decimal(cx) + "\" y1=\"" + decimal(lo) + "\" x2=\"" + decimal(cx) +
             "\" y2=\"" + decimal(hi) + "\"/>";
      svg += "<line x1=\"" + decimal(cx - cap) + "\" y1=\"" + decimal(hi) + "\" x2=\"" +
             decimal(cx + cap) + "\" y2=\"" + decimal(hi) + "\"/>";
      svg += "<line x1=\"" + decimal(cx - cap) + "\" y1=\"" + decimal(lo) + "\" x2=\"" +
             decimal(cx + cap) + "\" y2=\"" + decimal(lo) + "\"/>";
      svg += "</g>\n";
    }
    svg += "  <text class=\"tick\" x=\"" + decimal(cx) + "\" y=\"" + decimal(base_y + 16) +
           "\" font-size=\"11\" text-anchor=\"middle\">" + std::to_string(i) + "</text>\n";
  }

  svg += "  <text class=\"label\" x=\"" + decimal(kLeft + plot_w / 2) + "\" y=\"" +
         decimal(kHeight - 15) + "\" font-size=\"14\" text-anchor=\"middle\">Iteration</text>\n";
  svg += "  <text class=\"label\" x=\"18\" y=\"" + decimal(kTop + plot_h / 2) +
         "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         decimal(kTop + plot_h / 2) + ")\">Total errors</text>\n";
  svg += "</svg>\n";
  return svg;
}

void export_stats(const AggregateStats& stats, ExportFormat format,
                  const std::filesystem::path& out_path, const SvgOptions& svg) {
  switch (format) {
    case ExportFormat::kCsv:
      write_text_file(out_path, stats_to_csv(stats));
      return;
    case ExportFormat::kJson:
      write_text_file(out_path, stats_to_json(stats) + "\n");
      return;
    case ExportFormat::kSvg:
      write_text_file(out_path, stats_to_svg(stats, svg));
      return;
  }
}

}  // namespace iacloop::bench
