// Copyright 2026 The OSL Authors.
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

#include "plot.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "osl/errors.h"
#include "osl/logit_io.h"

namespace osl::cli {
namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 400;
constexpr double kMargin = 50;

double Quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::string Num(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

std::string SvgHeader(const std::string& title) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
      << title << "</text>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
      << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
      << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n";
  return out.str();
}

}  // namespace

BoxStats ComputeBoxStats(std::vector<double> values) {
  if (values.empty()) throw InvalidInputError("boxplot of an empty group");
  std::sort(values.begin(), values.end());
  BoxStats s;
  s.count = values.size();
  s.min = values.front();
  s.max = values.back();
  s.lower_quartile = Quantile(values, 0.25);
  s.median = Quantile(values, 0.5);
  s.upper_quartile = Quantile(values, 0.75);
  const double iqr = s.upper_quartile - s.lower_quartile;
  const double lo_fence = s.lower_quartile - 1.5 * iqr;
  const double hi_fence = s.upper_quartile + 1.5 * iqr;
  s.whisker_low = s.max;
  s.whisker_high = s.min;
  for (double v : values) {
    if (v < lo_fence || v > hi_fence) {
      ++s.outliers;
      continue;
    }
    s.whisker_low = std::min(s.whisker_low, v);
    s.whisker_high = std::max(s.whisker_high, v);
  }
  return s;
}

std::string BoxplotCsv(std::span<const BoxGroup> groups) {
  std::ostringstream out;
  out << "group,count,min,q1,median,q3,max,whisker_low,whisker_high,outliers\n";
  for (const BoxGroup& g : groups) {
    const BoxStats& s = g.stats;
    out << g.name << ',' << s.count << ',' << FormatDouble(s.min) << ','
        << FormatDouble(s.lower_quartile) << ',' << FormatDouble(s.median) << ','
        << FormatDouble(s.upper_quartile) << ',' << FormatDouble(s.max) << ','
        << FormatDouble(s.whisker_low) << ',' << FormatDouble(s.whisker_high) << ','
        << s.outliers << '\n';
  }
  return out.str();
}

std::string BoxplotSvg(std::span<const BoxGroup> groups, const std::string& title) {
  std::ostringstream out;
  out << SvgHeader(title);
  if (groups.empty()) {
    out << "</svg>\n";
    return out.str();
  }
  double lo = groups.front().stats.whisker_low;
  double hi = groups.front().stats.whisker_high;
  for (const BoxGroup& g : groups) {
    lo = std::min(lo, g.stats.whisker_low);
    hi = std::max(hi, g.stats.whisker_high);
  }
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double plot_h = kHeight - 2 * kMargin;
  auto y = [&](double v) { return kHeight - kMargin - (v - lo) / (hi - lo) * plot_h; };
  const double slot = (kWidth - 2 * kMargin) / static_cast<double>(groups.size());
  out << "<text x=\"5\" y=\"" << kMargin << "\">" << Num(hi) << "</text>\n"
      << "<text x=\"5\" y=\"" << kHeight - kMargin << "\">" << Num(lo) << "</text>\n";
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const BoxStats& s = groups[i].stats;
    const double cx = kMargin + slot * (static_cast<double>(i) + 0.5);
    const double half = slot * 0.25;
    out << "<line x1=\"" << cx << "\" y1=\"" << y(s.whisker_low) << "\" x2=\"" << cx
        << "\" y2=\"" << y(s.lower_quartile) << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << cx << "\" y1=\"" << y(s.upper_quartile) << "\" x2=\"" << cx
        << "\" y2=\"" << y(s.whisker_high) << "\" stroke=\"black\"/>\n"
        << "<rect x=\"" << cx - half << "\" y=\"" << y(s.upper_quartile) << "\" width=\""
        << 2 * half << "\" height=\"" << y(s.lower_quartile) - y(s.upper_quartile)
        << "\" fill=\"#9ecae1\" stroke=\"black\"/>\n"
        << "<line x1=\"" << cx - half << "\" y1=\"" << y(s.median) << "\" x2=\""
        << cx + half << "\" y2=\"" << y(s.median) << "\" stroke=\"black\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << cx << "\" y=\"" << kHeight - kMargin + 15
        << "\" text-anchor=\"middle\">" << groups[i].name << " (n=" << s.count
        << ")</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string PrCurveCsv(std::span<const PrPoint> points) {
  std::ostringstream out;
  out << "threshold,recall,precision\n";
  for (const PrPoint& p : points) {
    out << FormatDouble(p.threshold) << ',' << FormatDouble(p.recall) << ','
        << FormatDouble(p.precision) << '\n';
  }
  return out.str();
}

std::string PrCurveSvg(std::span<const PrSeries> series, const std::string& title) {
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  std::ostringstream out;
  out << SvgHeader(title);
  const double plot_w = kWidth - 2 * kMargin;
  const double plot_h = kHeight - 2 * kMargin;
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\">recall</text>\n"
      << "<text x=\"10\" y=\"" << kHeight / 2 << "\">precision</text>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kColors[s % 4];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
    for (const PrPoint& p : series[s].points) {
      out << kMargin + p.recall * plot_w << ',' << kHeight - kMargin - p.precision * plot_h
          << ' ';
    }
    out << "\"/>\n<text x=\"" << kWidth - kMargin - 150 << "\" y=\""
        << kMargin + 15 * static_cast<double>(s) << "\" fill=\"" << color << "\">"
        << series[s].name << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace osl::cli
