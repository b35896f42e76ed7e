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

#include "pacfair/encode.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>

#include "pacfair/error.hpp"

namespace pacfair {
namespace {

std::size_t RequireColumn(const RawTable& table, const std::string& name) {
  auto idx = table.ColumnIndex(name);
  if (!idx) {
    throw ValidationError("column '" + name + "' is not in the header of " + table.source);
  }
  return *idx;
}

double ParseNumber(const std::string& text, const std::string& column, std::size_t row) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && last[-1] == ' ') --last;
  if (first < last && *first == '+') ++first;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last || !std::isfinite(value)) {
    throw ParseError("column '" + column + "', row " + std::to_string(row + 1) +
                     ": cannot parse '" + text + "' as a number");
  }
  return value;
}

// Level after missing-token substitution, domain check and value_maps.
std::string CanonicalLevel(const std::string& raw, const ColumnSpec& col, const Schema& schema,
                           std::size_t row) {
  if (raw == schema.missing_token) return std::string(kUnknownLevel);
  if (!col.domain.empty() &&
      std::find(col.domain.begin(), col.domain.end(), raw) == col.domain.end()) {
    throw ParseError("column '" + col.name + "', row " + std::to_string(row + 1) +
                     ": value '" + raw + "' is not in the declared domain");
  }
  if (auto it = schema.value_maps.find(col.name); it != schema.value_maps.end()) {
    return it->second.Apply(raw);
  }
  return raw;
}

// Declared order first (deduplicated), then remaining observed levels sorted.
std::vector<std::string> OrderLevels(const std::vector<std::string>& declared,
                                     const std::set<std::string>& observed,
                                     bool keep_unobserved) {
  std::vector<std::string> out;
  std::set<std::string> placed;
  for (const auto& level : declared) {
    if (placed.contains(level)) continue;
    if (!keep_unobserved && !observed.contains(level)) continue;
    out.push_back(level);
    placed.insert(level);
  }
  for (const auto& level : observed) {
    if (!placed.contains(level)) out.push_back(level);
  }
  return out;
}

std::vector<std::string> MappedDomain(const ColumnSpec& col, const Schema& schema) {
  std::vector<std::string> out;
  for (const auto& raw : col.domain) {
    std::string v = raw;
    if (auto it = schema.value_maps.find(col.name); it != schema.value_maps.end()) {
      v = it->second.Apply(v);
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

EncodedDataset Encode(const RawTable& table, const Schema& schema) {
  schema.Validate();
  const std::size_t m = table.num_rows();
  const std::size_t target_idx = RequireColumn(table, schema.target);
  std::set<std::string> sensitive(schema.sensitive.begin(), schema.sensitive.end());

  struct Block {
    std::vector<double> numeric;          // numeric columns
    std::vector<std::string> levels;      // categorical columns
    std::vector<std::size_t> level_of_row;
  };
  std::vector<Block> blocks(schema.columns.size());
  std::vector<std::string> warnings;
  std::size_t d = 0;

  for (std::size_t c = 0; c < schema.columns.size(); ++c) {
    const ColumnSpec& col = schema.columns[c];
    const std::size_t src = RequireColumn(table, col.name);
    Block& block = blocks[c];
    if (col.kind == ColumnKind::kNumeric) {
      block.numeric.resize(m);
      for (std::size_t r = 0; r < m; ++r) {
        block.numeric[r] = ParseNumber(table.rows[r][src], col.name, r);
      }
      d += 1;
      continue;
    }
    std::vector<std::string> canonical(m);
    std::set<std::string> observed;
    for (std::size_t r = 0; r < m; ++r) {
      canonical[r] = CanonicalLevel(table.rows[r][src], col, schema, r);
      observed.insert(canonical[r]);
    }
    block.levels = OrderLevels(MappedDomain(col, schema), observed, /*keep_unobserved=*/false);
    std::map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < block.levels.size(); ++i) position[block.levels[i]] = i;
    block.level_of_row.resize(m);
    for (std::size_t r = 0; r < m; ++r) block.level_of_row[r] = position.at(canonical[r]);
    d += block.levels.size();
  }

  EncodedDataset ds;
  ds.x = Matrix(m, d);
  ds.y.resize(m);
  ds.row_origin.resize(m);
  std::size_t offset = 0;
  for (std::size_t c = 0; c < schema.columns.size(); ++c) {
    const ColumnSpec& col = schema.columns[c];
    const Block& block = blocks[c];
    const bool is_sensitive = sensitive.contains(col.name);
    if (col.kind == ColumnKind::kNumeric) {
      const auto [lo_it, hi_it] = std::minmax_element(block.numeric.begin(), block.numeric.end());
      const double lo = *lo_it;
      const double hi = *hi_it;
      double center = lo;
      double scale = hi - lo;
      if (schema.normalization == Normalization::kZScore) {
        double mean = 0.0;
        for (double v : block.numeric) mean += v;
        mean /= static_cast<double>(m);
        double var = 0.0;
        for (double v : block.numeric) var += (v - mean) * (v - mean);
        center = mean;
        scale = std::sqrt(var / static_cast<double>(m));
      }
      if (!(scale > 0.0)) {
        warnings.push_back("numeric column '" + col.name + "' is constant; encoded as 0");
      }
      for (std::size_t r = 0; r < m; ++r) {
        ds.x(r, offset) = scale > 0.0 ? (block.numeric[r] - center) / scale : 0.0;
      }
      ds.feature_names.push_back(col.name);
      ds.non_sensitive_mask.push_back(!is_sensitive);
      ds.feature_source.push_back(c);
      offset += 1;
      continue;
    }
    for (std::size_t r = 0; r < m; ++r) ds.x(r, offset + block.level_of_row[r]) = 1.0;
    for (const auto& level : block.levels) {
      ds.feature_names.push_back(col.name + "=" + level);
      ds.non_sensitive_mask.push_back(!is_sensitive);
      ds.feature_source.push_back(c);
    }
    offset += block.levels.size();
  }

  for (std::size_t r = 0; r < m; ++r) {
    ds.y[r] = table.rows[r][target_idx] == schema.positive_label ? 1 : 0;
    ds.row_origin[r] = r;
  }
  ds.warnings = std::move(warnings);
  return ds;
}

std::vector<Subgroup> ExtractSubgroups(const EncodedDataset& ds, const RawTable& table,
                                       const Schema& schema) {
  schema.Validate(/*require_sensitive=*/true);
  const std::size_t k = schema.sensitive.size();

  struct Attribute {
    const ColumnSpec* col;
    std::size_t src;
    const ValueMap* group_map;
    std::vector<std::string> levels;
  };
  std::vector<Attribute> attrs;
  std::vector<std::vector<std::string>> row_keys(ds.m(), std::vector<std::string>(k));
  for (std::size_t a = 0; a < k; ++a) {
    Attribute attr;
    attr.col = schema.Find(schema.sensitive[a]);
    attr.src = RequireColumn(table, attr.col->name);
    auto gm = schema.group_maps.find(attr.col->name);
    attr.group_map = gm == schema.group_maps.end() ? nullptr : &gm->second;

    std::set<std::string> observed;
    for (std::size_t i = 0; i < ds.m(); ++i) {
      const std::size_t r = ds.row_origin[i];
      std::string level = CanonicalLevel(table.rows.at(r)[attr.src], *attr.col, schema, r);
      if (attr.group_map) level = attr.group_map->Apply(level);
      observed.insert(level);
      row_keys[i][a] = std::move(level);
    }
    std::vector<std::string> declared;
    if (attr.group_map && !attr.group_map->levels.empty()) {
      declared = attr.group_map->levels;
    } else {
      declared = MappedDomain(*attr.col, schema);
      if (attr.group_map) {
        for (auto& v : declared) v = attr.group_map->Apply(v);
      }
    }
    attr.levels = OrderLevels(declared, observed, /*keep_unobserved=*/true);
    attrs.push_back(std::move(attr));
  }

  // Mixed-radix position of each key in the cartesian product.
  std::vector<std::map<std::string, std::size_t>> position(k);
  std::size_t combos = 1;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t i = 0; i < attrs[a].levels.size(); ++i) position[a][attrs[a].levels[i]] = i;
    combos *= attrs[a].levels.size();
  }

  std::vector<Subgroup> groups(combos);
  for (std::size_t g = 0; g < combos; ++g) {
    std::size_t rest = g;
    std::vector<std::size_t> digits(k);
    for (std::size_t a = k; a-- > 0;) {
      digits[a] = rest % attrs[a].levels.size();
      rest /= attrs[a].levels.size();
    }
    std::string label;
    for (std::size_t a = 0; a < k; ++a) {
      const std::string& level = attrs[a].levels[digits[a]];
      groups[g].key.emplace_back(attrs[a].col->name, level);
      auto lab = attrs[a].col->labels.find(level);
      if (a > 0) label += "/";
      label += lab == attrs[a].col->labels.end() ? level : lab->second;
    }
    groups[g].label = std::move(label);
  }
  for (std::size_t i = 0; i < ds.m(); ++i) {
    std::size_t g = 0;
    for (std::size_t a = 0; a < k; ++a) {
      g = g * attrs[a].levels.size() + position[a].at(row_keys[i][a]);
    }
    groups[g].indices.push_back(i);
  }
  return groups;
}

}  // namespace pacfair
