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

#ifndef OSL_LOGIT_IO_H_
#define OSL_LOGIT_IO_H_

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "osl/core.h"

namespace osl {

// Renders a double with 17 significant digits; parses back bit-identically.
std::string FormatDouble(double value);

// Tables of the form "sample_id,truth,<prefix>_0,...,<prefix>_{n-1}" with
// truth coded 1..K (domestic), 0 (foreign), -1 (fooling). Logit files use the
// prefix "logit", feature dumps "feature". Readers throw InvalidInputError
// with the offending line number.
void WriteLogitCsv(std::ostream& out, std::span<const LogitRecord> records);
std::vector<LogitRecord> ReadLogitCsv(std::istream& in);
void WriteFeatureCsv(std::ostream& out, std::span<const InputRecord> records);
std::vector<InputRecord> ReadFeatureCsv(std::istream& in);

void WriteLogitCsvFile(const std::string& path,
                       std::span<const LogitRecord> records);
std::vector<LogitRecord> ReadLogitCsvFile(const std::string& path);
void WriteFeatureCsvFile(const std::string& path,
                         std::span<const InputRecord> records);
std::vector<InputRecord> ReadFeatureCsvFile(const std::string& path);

// Reads a whole file; throws InvalidInputError if it cannot be opened.
std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, std::string_view contents);

}  // namespace osl

#endif  // OSL_LOGIT_IO_H_
