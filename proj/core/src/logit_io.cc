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

#include "osl/logit_io.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>

#include "osl/errors.h"

namespace osl {
namespace {

struct Row {
  std::string sample_id;
  int truth_code = 0;
  std::vector<double> values;
};

std::vector<std::string_view> SplitCommas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string LineError(std::size_t line_no, const std::string& what) {
  return "line " + std::to_string(line_no) + ": " + what;
}

double ParseDouble(std::string_view text, std::size_t line_no) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidInputError(
        LineError(line_no, "cannot parse number '" + std::string(text) + "'"));
  }
  return value;
}

int ParseInt(std::string_view text, std::size_t line_no) {
  int value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidInputError(
        LineError(line_no, "cannot parse truth '" + std::string(text) + "'"));
  }
  return value;
}

void WriteRows(std::ostream& out, std::span<const Row> rows,
               std::string_view prefix) {
  const std::size_t width = rows.empty() ? 0 : rows.front().values.size();
  out << "sample_id,truth";
  for (std::size_t i = 0; i < width; ++i) out << ',' << prefix << '_' << i;
  out << '\n';
  for (const Row& row : rows) {
    if (row.sample_id.find_first_of(",\n\r") != std::string::npos) {
      throw InvalidInputError("sample id '" + row.sample_id +
                              "' contains a separator");
    }
    if (row.values.size() != width) {
      throw InvalidInputError("row '" + row.sample_id + "' has " +
                              std::to_string(row.values.size()) +
                              " values, expected " + std::to_string(width));
    }
    out << row.sample_id << ',' << row.truth_code;
    for (double v : row.values) out << ',' << FormatDouble(v);
    out << '\n';
  }
}

std::vector<Row> ReadRows(std::istream& in, std::string_view prefix) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidInputError("missing CSV header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = SplitCommas(line);
  if (header.size() < 2 || header[0] != "sample_id" || header[1] != "truth") {
    throw InvalidInputError(
        LineError(1, "header must start with 'sample_id,truth'"));
  }
  for (std::size_t i = 2; i < header.size(); ++i) {
    const std::string expected =
        std::string(prefix) + "_" + std::to_string(i - 2);
    if (header[i] != expected) {
      throw InvalidInputError(LineError(1, "expected column '" + expected +
                                               "', found '" +
                                               std::string(header[i]) + "'"));
    }
  }
  const std::size_t width = header.size() - 2;

  std::vector<Row> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = SplitCommas(line);
    if (fields.size() != width + 2) {
      throw InvalidInputError(LineError(
          line_no, "expected " + std::to_string(width + 2) + " fields, found " +
                       std::to_string(fields.size())));
    }
    Row row;
    row.sample_id = std::string(fields[0]);
    row.truth_code = ParseInt(fields[1], line_no);
    row.values.reserve(width);
    for (std::size_t i = 0; i < width; ++i) {
      row.values.push_back(ParseDouble(fields[i + 2], line_no));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

GroundTruth TruthAt(int code, std::size_t index) {
  try {
    return GroundTruth::FromCode(code);
  } catch (const InvalidInputError& e) {
    throw InvalidInputError(LineError(index + 2, e.what()));
  }
}

std::ofstream OpenForWrite(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInputError("cannot open '" + path + "' for writing");
  return out;
}

std::ifstream OpenForRead(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInputError("cannot open '" + path + "'");
  return in;
}

}  // namespace

std::string FormatDouble(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                       std::chars_format::general, 17);
  return std::string(buffer, ptr);
}

void WriteLogitCsv(std::ostream& out, std::span<const LogitRecord> records) {
  std::vector<Row> rows;
  rows.reserve(records.size());
  for (const LogitRecord& r : records) {
    rows.push_back({r.sample_id, r.truth.code(), r.logits});
  }
  WriteRows(out, rows, "logit");
}

std::vector<LogitRecord> ReadLogitCsv(std::istream& in) {
  std::vector<Row> rows = ReadRows(in, "logit");
  std::vector<LogitRecord> records;
  records.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    records.push_back({std::move(rows[i].sample_id), std::move(rows[i].values),
                       TruthAt(rows[i].truth_code, i)});
  }
  ValidateRecords(records);
  return records;
}

void WriteFeatureCsv(std::ostream& out, std::span<const InputRecord> records) {
  std::vector<Row> rows;
  rows.reserve(records.size());
  for (const InputRecord& r : records) {
    rows.push_back({r.sample_id, r.truth.code(), r.features});
  }
  WriteRows(out, rows, "feature");
}

std::vector<InputRecord> ReadFeatureCsv(std::istream& in) {
  std::vector<Row> rows = ReadRows(in, "feature");
  std::vector<InputRecord> records;
  records.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    RequireFinite(rows[i].values, ("row '" + rows[i].sample_id + "'").c_str());
    records.push_back({std::move(rows[i].sample_id), std::move(rows[i].values),
                       TruthAt(rows[i].truth_code, i)});
  }
  return records;
}

void WriteLogitCsvFile(const std::string& path,
                       std::span<const LogitRecord> records) {
  std::ofstream out = OpenForWrite(path);
  WriteLogitCsv(out, records);
}

std::vector<LogitRecord> ReadLogitCsvFile(const std::string& path) {
  std::ifstream in = OpenForRead(path);
  try {
    return ReadLogitCsv(in);
  } catch (const InvalidInputError& e) {
    throw InvalidInputError(path + ": " + e.what());
  }
}

void WriteFeatureCsvFile(const std::string& path,
                         std::span<const InputRecord> records) {
  std::ofstream out = OpenForWrite(path);
  WriteFeatureCsv(out, records);
}

std::vector<InputRecord> ReadFeatureCsvFile(const std::string& path) {
  std::ifstream in = OpenForRead(path);
  try {
    return ReadFeatureCsv(in);
  } catch (const InvalidInputError& e) {
    throw InvalidInputError(path + ": " + e.what());
  }
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in = OpenForRead(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteTextFile(const std::string& path, std::string_view contents) {
  std::ofstream out = OpenForWrite(path);
  out << contents;
}

}  // namespace osl
