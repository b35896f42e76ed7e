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

#ifndef PACFAIR_TABLE_HPP_
#define PACFAIR_TABLE_HPP_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pacfair {

enum class TableFormat {
  kCsv,        // comma separated, first line is the header, RFC 4180 quoting
  kUciAdult,   // adult.data / adult.test: ", " separated, no header
  kUciGerman,  // german.data: whitespace separated coded values, no header
};

TableFormat ParseTableFormat(std::string_view tag);
std::string_view ToString(TableFormat format);

// Untyped table exactly as read from disk.
struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string source;

  std::size_t num_rows() const { return rows.size(); }
  // Position of `name` in the header, if present.
  std::optional<std::size_t> ColumnIndex(std::string_view name) const;
};

// Column names the UCI files lack; these are the names the builtin schemas
// refer to.
const std::vector<std::string>& AdultHeader();
const std::vector<std::string>& GermanHeader();

// Directory holding adult.data / german.data. $PACFAIR_DATA_DIR when set,
// otherwise the data/ directory of the source tree.
std::filesystem::path DataDirectory();

// Resolves a source argument. "builtin:adult" and "builtin:german" map to
// files in DataDirectory(); anything else is treated as a path.
std::filesystem::path ResolveSource(std::string_view source);

// Reads a table. Blank lines are skipped; for kUciAdult, lines that are only
// "." or start with "|" (the adult.test preamble) are skipped and a trailing
// "." on the label is dropped. Throws IoError, ParseError (wrong field
// count, with the 1-based line number; no data rows) or ValidationError.
RawTable ParseTable(std::string_view source, TableFormat format);
RawTable ParseTable(std::istream& in, TableFormat format, std::string source_name);

}  // namespace pacfair

#endif  // PACFAIR_TABLE_HPP_
