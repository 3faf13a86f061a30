// Copyright 2026 The notransfer Authors.
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

#ifndef NOTRANSFER_LINALG_H_
#define NOTRANSFER_LINALG_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "notransfer/rational.h"

namespace notransfer {

// Dense row-major rational matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  static Matrix FromRows(const std::vector<Vec>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  Vec Row(std::size_t r) const;
  Vec Col(std::size_t c) const;
  // Row-major flattening; profile order for two-agent type spaces.
  const Vec& Flat() const { return data_; }
  static Matrix FromFlat(std::size_t rows, std::size_t cols, Vec data);

  // Appends a row; the first row appended to a 0x0 matrix fixes cols().
  void AppendRow(const Vec& row);
  Matrix Transpose() const;
  Vec Multiply(const Vec& x) const;
  Vec RowSums() const;
  Vec ColSums() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vec data_;
};

std::size_t Rank(Matrix m);

// Returns some exact solution of a x = b (free variables set to zero), or
// nullopt when the system is inconsistent.
std::optional<Vec> SolveLinearSystem(const Matrix& a, const Vec& b);

// True iff target is a linear combination of the generators.
bool InSpan(const Vec& target, const std::vector<Vec>& generators);

// Coefficients expressing target in the generators, when it lies in the span.
std::optional<Vec> SpanCoefficients(const Vec& target,
                                    const std::vector<Vec>& generators);

struct Projection {
  Vec projection;
  Vec residual;
  // target = sum_j coefficients[j] * generators[j] + residual.
  Vec coefficients;
};

// Orthogonal projection in the standard inner product, computed through the
// normal equations. Rank-deficient generator sets are fine.
Projection OrthogonalProjection(const Vec& target,
                                const std::vector<Vec>& generators);

}  // namespace notransfer

#endif  // NOTRANSFER_LINALG_H_
