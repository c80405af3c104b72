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

#ifndef OSL_TOOLS_CLI_CLI_H_
#define OSL_TOOLS_CLI_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace osl::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitFit = 3;

// Runs the command line `args` (without the program name). Human-readable
// output goes to `out`, diagnostics and warnings to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

// One row of a score dump written by `evaluate`.
struct ScoreRow {
  std::string sample_id;
  int truth = 0;
  double score = 0.0;
  int predicted_label = 0;
  int argmax_label = 0;
};

std::vector<ScoreRow> ReadScoreCsvFile(const std::string& path);

}  // namespace osl::cli

#endif  // OSL_TOOLS_CLI_CLI_H_
