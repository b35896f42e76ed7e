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

#ifndef PACFAIR_MATRIX_HPP_
#define PACFAIR_MATRIX_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace pacfair {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  // Builds from a list of equally sized rows. Throws ValidationError on
  // ragged input.
  static Matrix FromRows(const std::vector<std::vector<double>>& rows);
  static Matrix FromRows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::span<const double> data() const { return data_; }

  // Copy of the given rows, in the given order.
  Matrix SelectRows(std::span<const std::size_t> indices) const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Compressed sparse row copy of a Matrix. One-hot encoded tables are mostly
// zeros, so the hot loops of training and Monte-Carlo estimation run over
// this instead of the dense rows.
class SparseRows {
 public:
  SparseRows() = default;
  explicit SparseRows(const Matrix& dense);
  SparseRows(const Matrix& dense, std::span<const std::size_t> rows);

  std::size_t rows() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t cols() const { return cols_; }

  // x_r . w
  double Dot(std::size_t r, std::span<const double> w) const {
    double acc = 0.0;
    for (std::size_t k = offsets_[r]; k < offsets_[r + 1]; ++k) {
      acc += values_[k] * w[columns_[k]];
    }
    return acc;
  }

  // out += scale * x_r
  void Axpy(std::size_t r, double scale, std::span<double> out) const {
    for (std::size_t k = offsets_[r]; k < offsets_[r + 1]; ++k) {
      out[columns_[k]] += scale * values_[k];
    }
  }

 private:
  void Append(std::span<const double> row);

  std::size_t cols_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> columns_;
  std::vector<double> values_;
};

double Dot(std::span<const double> a, std::span<const double> b);
double Norm2(std::span<const double> v);

// max_i ||x_i||_2 over the rows of x; 0 for an empty matrix.
double MaxRowNorm(const Matrix& x);

}  // namespace pacfair

#endif  // PACFAIR_MATRIX_HPP_
