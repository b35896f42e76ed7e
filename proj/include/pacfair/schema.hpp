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

#ifndef PACFAIR_SCHEMA_HPP_
#define PACFAIR_SCHEMA_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pacfair/table.hpp"

namespace pacfair {

enum class ColumnKind { kNumeric, kCategorical };

enum class Normalization {
  kMinMax,  // (v - min) / (max - min), every coordinate in [0, 1]
  kZScore,  // (v - mean) / stddev; coordinates are no longer bounded
};

struct ColumnSpec {
  std::string name;
  ColumnKind kind = ColumnKind::kCategorical;
  // Declared levels of a categorical column, in display order. Empty means
  // "whatever the data contains". When non-empty, any other raw value
  // (except the missing token) is rejected by Encode.
  std::vector<std::string> domain;
  // Human-readable names for levels, used in reports (e.g. A92 ->
  // "Female/Separated-Married").
  std::map<std::string, std::string> labels;
};

// Raw value -> merged value. Values without an entry map to `fallback` when
// set and are otherwise kept.
struct ValueMap {
  std::map<std::string, std::string> entries;
  std::optional<std::string> fallback;
  // Order of the merged levels for subgroup enumeration. Empty means the
  // image of the column's declared domain, in first-seen order.
  std::vector<std::string> levels;

  std::string Apply(const std::string& raw) const;
};

struct Schema {
  std::string id;
  std::vector<ColumnSpec> columns;  // feature columns; the target is separate
  std::string target;
  std::string positive_label;
  std::vector<std::string> sensitive;
  // Applied before one-hot encoding.
  std::map<std::string, ValueMap> value_maps;
  // Applied only when forming subgroup keys. Lets a report group race as
  // White / non-White while the features keep every level.
  std::map<std::string, ValueMap> group_maps;
  std::string missing_token = "?";
  Normalization normalization = Normalization::kMinMax;

  const ColumnSpec* Find(std::string_view name) const;

  // Throws ValidationError when the target is sensitive, a map refers to an
  // undeclared or numeric column, a sensitive column is undeclared or
  // numeric, or column names repeat. `require_sensitive` additionally
  // demands a non-empty sensitive list (needed for audits).
  void Validate(bool require_sensitive = false) const;
};

// Label the encoder gives to the missing token.
inline constexpr std::string_view kUnknownLevel = "Unknown";

// Frozen schemas reproducing the two reference setups.
//   adult:  14 feature columns, target income = ">50K", sensitive sex + race
//           (race grouped White / non-White).
//   german: 20 feature columns, target credit_risk = "1" (good), sensitive
//           is the compound personal_status_sex column (A91..A95).
Schema BuiltinSchema(std::string_view id);

// Table format matching each builtin id.
TableFormat BuiltinFormat(std::string_view id);

// JSON schema files; the layout is documented in docs/schema.md.
Schema LoadSchema(const std::filesystem::path& path);
Schema SchemaFromJson(std::string_view text);
std::string SchemaToJson(const Schema& schema);

// "builtin:<id>" or a path to a JSON schema file.
Schema ResolveSchema(std::string_view name);

}  // namespace pacfair

#endif  // PACFAIR_SCHEMA_HPP_
