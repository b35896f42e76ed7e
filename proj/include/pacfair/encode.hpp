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

#ifndef PACFAIR_ENCODE_HPP_
#define PACFAIR_ENCODE_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pacfair/matrix.hpp"
#include "pacfair/schema.hpp"
#include "pacfair/table.hpp"

namespace pacfair {

// Numeric view of a RawTable under a Schema.
//
// Numeric columns become one min-max scaled coordinate. Categorical columns
// become one indicator per level that occurs in the table (declared-domain
// order first, then any remaining levels sorted); the missing token is its
// own "Unknown" level. With min-max normalization every entry is in [0, 1].
struct EncodedDataset {
  Matrix x;                              // m x d
  std::vector<int> y;                    // 0/1
  std::vector<std::string> feature_names;
  std::vector<bool> non_sensitive_mask;  // false for coordinates derived from sensitive columns
  std::vector<std::size_t> feature_source;  // schema column index of each coordinate
  std::vector<std::size_t> row_origin;   // raw row of each encoded row
  std::vector<std::string> warnings;

  std::size_t m() const { return x.rows(); }
  std::size_t d() const { return x.cols(); }
};

// Throws ValidationError (schema/table mismatch) or ParseError (unparsable
// numeric value, level outside a declared domain). A constant numeric
// column encodes to 0 and adds a warning.
EncodedDataset Encode(const RawTable& table, const Schema& schema);

// Rows sharing one value for every sensitive attribute.
struct Subgroup {
  std::vector<std::pair<std::string, std::string>> key;  // (column, grouped value)
  std::vector<std::size_t> indices;                      // sorted rows of the EncodedDataset
  std::string label;  // display name, e.g. "Female/non-White"

  std::size_t size() const { return indices.size(); }
};

// One subgroup per combination of grouped sensitive levels, including
// combinations with no rows. Levels of each attribute come from the declared
// domain mapped through value_maps and group_maps (or the group map's
// explicit `levels`), followed by any other observed level; subgroups are
// ordered lexicographically over the key tuple in that level order. The
// non-empty subgroups partition the rows.
std::vector<Subgroup> ExtractSubgroups(const EncodedDataset& ds, const RawTable& table,
                                       const Schema& schema);

}  // namespace pacfair

#endif  // PACFAIR_ENCODE_HPP_
