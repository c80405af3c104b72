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

#ifndef OSL_TOOLS_CLI_PLOT_H_
#define OSL_TOOLS_CLI_PLOT_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "osl/metrics.h"

namespace osl::cli {

// Tukey boxplot summary. Quartiles use linear interpolation between order
// statistics; whiskers reach the most extreme values within 1.5 IQR of the
// box.
struct BoxStats {
  std::size_t count = 0;
  double min = 0.0;
  double lower_quartile = 0.0;
  double median = 0.0;
  double upper_quartile = 0.0;
  double max = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
  std::size_t outliers = 0;
};

// Throws InvalidInputError for an empty sample.
BoxStats ComputeBoxStats(std::vector<double> values);

struct BoxGroup {
  std::string name;
  BoxStats stats;
};

std::string BoxplotCsv(std::span<const BoxGroup> groups);
std::string BoxplotSvg(std::span<const BoxGroup> groups, const std::string& title);

struct PrSeries {
  std::string name;
  std::vector<PrPoint> points;
};

std::string PrCurveCsv(std::span<const PrPoint> points);
std::string PrCurveSvg(std::span<const PrSeries> series, const std::string& title);

}  // namespace osl::cli

#endif  // OSL_TOOLS_CLI_PLOT_H_
