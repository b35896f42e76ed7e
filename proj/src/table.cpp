// Copyright 2026 The pacfair Authors.
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

#include "pacfair/table.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pacfair/error.hpp"

#ifndef PACFAIR_DEFAULT_DATA_DIR
#define PACFAIR_DEFAULT_DATA_DIR "data"
#endif

namespace pacfair {
namespace {

std::string_view Trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

std::vector<std::string> SplitAdult(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    out.emplace_back(Trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::string> SplitWhitespace(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(std::move(tok));
  return out;
}

// Splits one CSV record. Quoted fields may contain commas and doubled
// quotes; embedded newlines are not supported.
std::vector<std::string> SplitCsv(std::string_view line, std::size_t line_no) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  if (quoted) {
    throw ParseError("line " + std::to_string(line_no) + ": unterminated quoted field");
  }
  out.push_back(std::move(field));
  return out;
}

}  // namespace

TableFormat ParseTableFormat(std::string_view tag) {
  if (tag == "csv") return TableFormat::kCsv;
  if (tag == "uci-adult") return TableFormat::kUciAdult;
  if (tag == "uci-german") return TableFormat::kUciGerman;
  throw ValidationError("unknown table format '" + std::string(tag) +
                        "' (expected csv, uci-adult or uci-german)");
}

std::string_view ToString(TableFormat format) {
  switch (format) {
    case TableFormat::kCsv:
      return "csv";
    case TableFormat::kUciAdult:
      return "uci-adult";
    case TableFormat::kUciGerman:
      return "uci-german";
  }
  return "unknown";
}

std::optional<std::size_t> RawTable::ColumnIndex(std::string_view name) const {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) return std::nullopt;
  return static_cast<std::size_t>(it - header.begin());
}

const std::vector<std::string>& AdultHeader() {
  static const std::vector<std::string> kHeader = {
      "age",          "workclass",    "fnlwgt",         "education",
      "education-num", "marital-status", "occupation",  "relationship",
      "race",         "sex",          "capital-gain",   "capital-loss",
      "hours-per-week", "native-country", "income"};
  return kHeader;
}

const std::vector<std::string>& GermanHeader() {
  static const std::vector<std::string> kHeader = {
      "checking_status",  "duration",         "credit_history",
      "purpose",          "credit_amount",    "savings",
      "employment_since", "installment_rate", "personal_status_sex",
      "other_debtors",    "residence_since",  "property",
      "age",              "other_installment_plans", "housing",
      "existing_credits", "job",              "people_liable",
      "telephone",        "foreign_worker",   "credit_risk"};
  return kHeader;
}

std::filesystem::path DataDirectory() {
  if (const char* env = std::getenv("PACFAIR_DATA_DIR"); env && *env) return env;
  return PACFAIR_DEFAULT_DATA_DIR;
}

std::filesystem::path ResolveSource(std::string_view source) {
  constexpr std::string_view kPrefix = "builtin:";
  if (source.starts_with(kPrefix)) {
    auto id = source.substr(kPrefix.size());
    if (id == "adult") return DataDirectory() / "adult.data";
    if (id == "german") return DataDirectory() / "german.data";
    throw ValidationError("unknown builtin dataset '" + std::string(id) +
                          "' (expected adult or german)");
  }
  return std::filesystem::path(source);
}

RawTable ParseTable(std::string_view source, TableFormat format) {
  auto path = ResolveSource(source);
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  RawTable table = ParseTable(in, format, path.string());
  if (in.bad()) throw IoError("read error on '" + path.string() + "'");
  return table;
}

RawTable ParseTable(std::istream& in, TableFormat format, std::string source_name) {
  RawTable table;
  table.source = std::move(source_name);
  switch (format) {
    case TableFormat::kUciAdult:
      table.header = AdultHeader();
      break;
    case TableFormat::kUciGerman:
      table.header = GermanHeader();
      break;
    case TableFormat::kCsv:
      break;
  }

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view trimmed = Trim(line);
    if (trimmed.empty()) continue;

    std::vector<std::string> fields;
    switch (format) {
      case TableFormat::kCsv:
        fields = SplitCsv(line, line_no);
        if (table.header.empty()) {
          table.header = std::move(fields);
          continue;
        }
        break;
      case TableFormat::kUciAdult:
        if (trimmed == "." || trimmed.front() == '|') continue;
        fields = SplitAdult(trimmed);
        if (!fields.empty() && fields.back().ends_with('.')) fields.back().pop_back();
        break;
      case TableFormat::kUciGerman:
        fields = SplitWhitespace(trimmed);
        break;
    }

    if (fields.size() != table.header.size()) {
      throw ParseError(table.source + ": line " + std::to_string(line_no) + " has " +
                       std::to_string(fields.size()) + " fields, expected " +
                       std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  if (table.rows.empty()) throw ParseError(table.source + ": no data rows");
  return table;
}

}  // namespace pacfair
