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

#include "notransfer/linalg.h"

#include <stdexcept>
#include <utility>

namespace notransfer {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::FromRows(const std::vector<Vec>& rows) {
  Matrix m;
  for (const auto& r : rows) m.AppendRow(r);
  return m;
}

Matrix Matrix::FromFlat(std::size_t rows, std::size_t cols, Vec data) {
  if (data.size() != rows * cols) {
    throw std::invalid_argument("Matrix::FromFlat: size mismatch");
  }
  Matrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.data_ = std::move(data);
  return m;
}

Vec Matrix::Row(std::size_t r) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vec Matrix::Col(std::size_t c) const {
  Vec out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void Matrix::AppendRow(const Vec& row) {
  if (rows_ == 0 && data_.empty()) {
    cols_ = row.size();
  } else if (row.size() != cols_) {
    throw std::invalid_argument("Matrix::AppendRow: width mismatch");
  }
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

Matrix Matrix::Transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

Vec Matrix::Multiply(const Vec& x) const {
  if (x.size() != cols_) throw std::invalid_argument("Matrix::Multiply: size mismatch");
  Vec out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * x[c];
    out[r] = acc;
  }
  return out;
}

Vec Matrix::RowSums() const {
  Vec out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c);
  }
  return out;
}

Vec Matrix::ColSums() const {
  Vec out(cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out[c] += (*this)(r, c);
  }
  return out;
}

namespace {

// Reduced row echelon form of [a | b] in place. Returns pivot columns.
std::vector<std::size_t> Reduce(Matrix& m, std::size_t pivot_limit) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < pivot_limit && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && sgn(m(sel, col)) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
    }
    Rational inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || sgn(m(r, col)) == 0) continue;
      Rational f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

Matrix ColumnsOf(const std::vector<Vec>& generators, std::size_t dim) {
  Matrix a(dim, generators.size());
  for (std::size_t j = 0; j < generators.size(); ++j) {
    if (generators[j].size() != dim) {
      throw std::invalid_argument("generator dimension mismatch");
    }
    for (std::size_t i = 0; i < dim; ++i) a(i, j) = generators[j][i];
  }
  return a;
}

}  // namespace

std::size_t Rank(Matrix m) { return Reduce(m, m.cols()).size(); }

std::optional<Vec> SolveLinearSystem(const Matrix& a, const Vec& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("SolveLinearSystem: size mismatch");
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  auto pivots = Reduce(aug, a.cols());
  for (std::size_t r = pivots.size(); r < aug.rows(); ++r) {
    if (sgn(aug(r, a.cols())) != 0) return std::nullopt;
  }
  Vec x(a.cols());
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug(k, a.cols());
  return x;
}

std::optional<Vec> SpanCoefficients(const Vec& target,
                                    const std::vector<Vec>& generators) {
  if (generators.empty()) {
    if (IsZero(target)) return Vec{};
    return std::nullopt;
  }
  return SolveLinearSystem(ColumnsOf(generators, target.size()), target);
}

bool InSpan(const Vec& target, const std::vector<Vec>& generators) {
  return SpanCoefficients(target, generators).has_value();
}

Projection OrthogonalProjection(const Vec& target,
                                const std::vector<Vec>& generators) {
  const std::size_t k = generators.size();
  Projection out;
  out.projection.assign(target.size(), Rational(0));
  out.coefficients.assign(k, Rational(0));
  if (k == 0) {
    out.residual = target;
    return out;
  }
  Matrix gram(k, k);
  Vec rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (generators[i].size() != target.size()) {
      throw std::invalid_argument("OrthogonalProjection: dimension mismatch");
    }
    rhs[i] = Dot(generators[i], target);
    for (std::size_t j = i; j < k; ++j) {
      gram(i, j) = Dot(generators[i], generators[j]);
      gram(j, i) = gram(i, j);
    }
  }
  // Normal equations are always consistent.
  auto lambda = SolveLinearSystem(gram, rhs);
  if (!lambda) throw std::logic_error("normal equations inconsistent");
  out.coefficients = *lambda;
  for (std::size_t j = 0; j < k; ++j) {
    if (sgn(out.coefficients[j]) == 0) continue;
    for (std::size_t i = 0; i < target.size(); ++i) {
      out.projection[i] += out.coefficients[j] * generators[j][i];
    }
  }
  out.residual = Subtract(target, out.projection);
  return out;
}

}  // namespace notransfer
