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

#include "pacfair/schema.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "pacfair/error.hpp"

namespace pacfair {
namespace {

using nlohmann::json;

ColumnSpec Numeric(std::string name) { return {std::move(name), ColumnKind::kNumeric, {}, {}}; }

ColumnSpec Categorical(std::string name, std::vector<std::string> domain = {},
                       std::map<std::string, std::string> labels = {}) {
  return {std::move(name), ColumnKind::kCategorical, std::move(domain), std::move(labels)};
}

std::vector<std::string> Codes(std::string_view prefix, int first, int last) {
  std::vector<std::string> out;
  for (int i = first; i <= last; ++i) out.push_back(std::string(prefix) + std::to_string(i));
  return out;
}

Schema AdultSchema() {
  Schema s;
  s.id = "adult";
  s.columns = {
      Numeric("age"),
      Categorical("workclass"),
      Numeric("fnlwgt"),
      Categorical("education"),
      Numeric("education-num"),
      Categorical("marital-status"),
      Categorical("occupation"),
      Categorical("relationship"),
      Categorical("race", {"Amer-Indian-Eskimo", "Asian-Pac-Islander", "Black", "Other", "White"}),
      Categorical("sex", {"Female", "Male"}),
      Numeric("capital-gain"),
      Numeric("capital-loss"),
      Numeric("hours-per-week"),
      Categorical("native-country"),
  };
  s.target = "income";
  s.positive_label = ">50K";
  s.sensitive = {"sex", "race"};
  s.group_maps["race"] = ValueMap{{{"White", "White"}}, "non-White", {"non-White", "White"}};
  s.missing_token = "?";
  return s;
}

Schema GermanSchema() {
  Schema s;
  s.id = "german";
  std::vector<std::string> purpose = Codes("A4", 0, 9);
  purpose.push_back("A410");
  s.columns = {
      Categorical("checking_status", Codes("A1", 1, 4)),
      Numeric("duration"),
      Categorical("credit_history", Codes("A3", 0, 4)),
      Categorical("purpose", purpose),
      Numeric("credit_amount"),
      Categorical("savings", Codes("A6", 1, 5)),
      Categorical("employment_since", Codes("A7", 1, 5)),
      Numeric("installment_rate"),
      Categorical("personal_status_sex", Codes("A9", 1, 5),
                  {{"A91", "Male/Separated"},
                   {"A92", "Female/Separated-Married"},
                   {"A93", "Male/Single"},
                   {"A94", "Male/Married"},
                   {"A95", "Female/Single"}}),
      Categorical("other_debtors", Codes("A10", 1, 3)),
      Numeric("residence_since"),
      Categorical("property", Codes("A12", 1, 4)),
      Numeric("age"),
      Categorical("other_installment_plans", Codes("A14", 1, 3)),
      Categorical("housing", Codes("A15", 1, 3)),
      Numeric("existing_credits"),
      Categorical("job", Codes("A17", 1, 4)),
      Numeric("people_liable"),
      Categorical("telephone", Codes("A19", 1, 2)),
      Categorical("foreign_worker", Codes("A20", 1, 2)),
  };
  s.target = "credit_risk";
  s.positive_label = "1";
  s.sensitive = {"personal_status_sex"};
  s.missing_token = "?";
  return s;
}

std::string_view ToString(ColumnKind kind) {
  return kind == ColumnKind::kNumeric ? "numeric" : "categorical";
}

std::string_view ToString(Normalization n) {
  return n == Normalization::kMinMax ? "minmax" : "zscore";
}

json ValueMapToJson(const ValueMap& m) {
  json j;
  j["map"] = m.entries;
  if (m.fallback) j["default"] = *m.fallback;
  if (!m.levels.empty()) j["levels"] = m.levels;
  return j;
}

ValueMap ValueMapFromJson(const json& j) {
  ValueMap m;
  if (j.contains("map")) m.entries = j.at("map").get<std::map<std::string, std::string>>();
  if (j.contains("default")) m.fallback = j.at("default").get<std::string>();
  if (j.contains("levels")) m.levels = j.at("levels").get<std::vector<std::string>>();
  return m;
}

}  // namespace

std::string ValueMap::Apply(const std::string& raw) const {
  if (auto it = entries.find(raw); it != entries.end()) return it->second;
  if (fallback) return *fallback;
  return raw;
}

const ColumnSpec* Schema::Find(std::string_view name) const {
  for (const auto& c : columns) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void Schema::Validate(bool require_sensitive) const {
  std::set<std::string> seen;
  for (const auto& c : columns) {
    if (!seen.insert(c.name).second) throw ValidationError("duplicate column '" + c.name + "'");
    if (c.kind == ColumnKind::kNumeric && !c.domain.empty()) {
      throw ValidationError("numeric column '" + c.name + "' cannot declare a domain");
    }
  }
  if (target.empty()) throw ValidationError("schema has no target column");
  if (seen.contains(target)) {
    throw ValidationError("target '" + target + "' must not also be a feature column");
  }
  if (std::find(sensitive.begin(), sensitive.end(), target) != sensitive.end()) {
    throw ValidationError("target '" + target + "' cannot be a sensitive attribute");
  }
  std::set<std::string> sensitive_seen;
  for (const auto& name : sensitive) {
    const ColumnSpec* col = Find(name);
    if (!col) throw ValidationError("sensitive column '" + name + "' is not declared");
    if (col->kind != ColumnKind::kCategorical) {
      throw ValidationError("sensitive column '" + name + "' must be categorical");
    }
    if (!sensitive_seen.insert(name).second) {
      throw ValidationError("sensitive column '" + name + "' listed twice");
    }
  }
  if (require_sensitive && sensitive.empty()) {
    throw ValidationError("schema declares no sensitive attributes");
  }
  auto check_maps = [&](const std::map<std::string, ValueMap>& maps, std::string_view what) {
    for (const auto& [name, m] : maps) {
      const ColumnSpec* col = Find(name);
      if (!col || col->kind != ColumnKind::kCategorical) {
        throw ValidationError(std::string(what) + " refers to '" + name +
                              "', which is not a declared categorical column");
      }
    }
  };
  check_maps(value_maps, "value_maps");
  check_maps(group_maps, "group_maps");
  for (const auto& [name, m] : group_maps) {
    if (std::find(sensitive.begin(), sensitive.end(), name) == sensitive.end()) {
      throw ValidationError("group_maps entry '" + name + "' is not a sensitive column");
    }
  }
}

Schema BuiltinSchema(std::string_view id) {
  if (id == "adult") return AdultSchema();
  if (id == "german") return GermanSchema();
  throw ValidationError("unknown builtin schema '" + std::string(id) +
                        "' (expected adult or german)");
}

TableFormat BuiltinFormat(std::string_view id) {
  if (id == "adult") return TableFormat::kUciAdult;
  if (id == "german") return TableFormat::kUciGerman;
  throw ValidationError("unknown builtin dataset '" + std::string(id) + "'");
}

Schema SchemaFromJson(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("schema: ") + e.what());
  }
  Schema s;
  try {
    s.id = j.value("id", "custom");
    for (const auto& c : j.at("columns")) {
      ColumnSpec col;
      col.name = c.at("name").get<std::string>();
      auto kind = c.value("kind", "categorical");
      if (kind == "numeric") {
        col.kind = ColumnKind::kNumeric;
      } else if (kind == "categorical") {
        col.kind = ColumnKind::kCategorical;
      } else {
        throw ValidationError("column '" + col.name + "': unknown kind '" + kind + "'");
      }
      if (c.contains("domain")) col.domain = c.at("domain").get<std::vector<std::string>>();
      if (c.contains("labels")) {
        col.labels = c.at("labels").get<std::map<std::string, std::string>>();
      }
      s.columns.push_back(std::move(col));
    }
    const auto& target = j.at("target");
    s.target = target.at("column").get<std::string>();
    s.positive_label = target.at("positive").get<std::string>();
    if (j.contains("sensitive")) s.sensitive = j.at("sensitive").get<std::vector<std::string>>();
    if (j.contains("value_maps")) {
      for (const auto& [name, m] : j.at("value_maps").items()) s.value_maps[name] = ValueMapFromJson(m);
    }
    if (j.contains("group_maps")) {
      for (const auto& [name, m] : j.at("group_maps").items()) s.group_maps[name] = ValueMapFromJson(m);
    }
    s.missing_token = j.value("missing_token", "?");
    auto norm = j.value("normalization", "minmax");
    if (norm == "minmax") {
      s.normalization = Normalization::kMinMax;
    } else if (norm == "zscore") {
      s.normalization = Normalization::kZScore;
    } else {
      throw ValidationError("unknown normalization '" + norm + "'");
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("schema: ") + e.what());
  }
  s.Validate();
  return s;
}

std::string SchemaToJson(const Schema& schema) {
  json j;
  j["id"] = schema.id;
  json cols = json::array();
  for (const auto& c : schema.columns) {
    json col;
    col["name"] = c.name;
    col["kind"] = ToString(c.kind);
    if (!c.domain.empty()) col["domain"] = c.domain;
    if (!c.labels.empty()) col["labels"] = c.labels;
    cols.push_back(std::move(col));
  }
  j["columns"] = std::move(cols);
  j["target"] = {{"column", schema.target}, {"positive", schema.positive_label}};
  j["sensitive"] = schema.sensitive;
  if (!schema.value_maps.empty()) {
    for (const auto& [name, m] : schema.value_maps) j["value_maps"][name] = ValueMapToJson(m);
  }
  if (!schema.group_maps.empty()) {
    for (const auto& [name, m] : schema.group_maps) j["group_maps"][name] = ValueMapToJson(m);
  }
  j["missing_token"] = schema.missing_token;
  j["normalization"] = ToString(schema.normalization);
  return j.dump(2);
}

Schema LoadSchema(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open schema '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return SchemaFromJson(buf.str());
}

Schema ResolveSchema(std::string_view name) {
  constexpr std::string_view kPrefix = "builtin:";
  if (name.starts_with(kPrefix)) return BuiltinSchema(name.substr(kPrefix.size()));
  return LoadSchema(std::filesystem::path(name));
}

}  // namespace pacfair
