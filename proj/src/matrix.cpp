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

#include "pacfair/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pacfair/error.hpp"

namespace pacfair {

Matrix Matrix::FromRows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  Matrix out(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != out.cols_) {
      throw ValidationError("ragged matrix: row " + std::to_string(r) + " has " +
                            std::to_string(rows[r].size()) + " columns, expected " +
                            std::to_string(out.cols_));
    }
    std::copy(rows[r].begin(), rows[r].end(), out.row(r).begin());
  }
  return out;
}

Matrix Matrix::FromRows(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> copy;
  copy.reserve(rows.size());
  for (const auto& r : rows) copy.emplace_back(r);
  return FromRows(copy);
}

Matrix Matrix::SelectRows(std::span<const std::size_t> indices) const {
  Matrix out(indices.size(), cols_);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= rows_) {
      throw ValidationError("row index " + std::to_string(indices[i]) +
                            " out of range for " + std::to_string(rows_) + " rows");
    }
    auto src = row(indices[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

SparseRows::SparseRows(const Matrix& dense) : cols_(dense.cols()) {
  offsets_.reserve(dense.rows() + 1);
  offsets_.push_back(0);
  for (std::size_t r = 0; r < dense.rows(); ++r) Append(dense.row(r));
}

SparseRows::SparseRows(const Matrix& dense, std::span<const std::size_t> rows)
    : cols_(dense.cols()) {
  offsets_.reserve(rows.size() + 1);
  offsets_.push_back(0);
  for (std::size_t r : rows) Append(dense.row(r));
}

void SparseRows::Append(std::span<const double> row) {
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (row[c] != 0.0) {
      columns_.push_back(static_cast<std::uint32_t>(c));
      values_.push_back(row[c]);
    }
  }
  offsets_.push_back(values_.size());
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double Norm2(std::span<const double> v) { return std::sqrt(Dot(v, v)); }

double MaxRowNorm(const Matrix& x) {
  double best = 0.0;
  for (std::size_t r = 0; r < x.rows(); ++r) best = std::max(best, Norm2(x.row(r)));
  return best;
}

}  // namespace pacfair
