/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The rsri Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "rsri/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/core.h>

#include "rsri/errors.hpp"

namespace rsri {

ColumnMatrix ColumnMatrix::identity(std::size_t dim) {
  std::vector<SparseVector> columns;
  columns.reserve(dim);
  for (std::size_t j = 0; j < dim; ++j) columns.push_back(SparseVector::basis(dim, j));
  return from_columns(columns);
}

ColumnMatrix ColumnMatrix::from_columns(const std::vector<SparseVector>& columns) {
  const std::size_t n = columns.size();
  if (n == 0) throw InputError("matrix dimension must be positive");
  Compressed csc;
  csc.col_ptr.reserve(n + 1);
  csc.col_ptr.push_back(0);
  for (std::size_t j = 0; j < n; ++j) {
    const SparseVector& col = columns[j];
    if (col.dim() != n) {
      throw InputError(fmt::format("column {} has dimension {}, expected {}", j, col.dim(), n));
    }
    for (const Entry& e : col) {
      csc.rows.push_back(e.index);
      csc.values.push_back(e.value);
    }
    csc.col_ptr.push_back(csc.rows.size());
    csc.max_col_nnz = std::max(csc.max_col_nnz, col.nnz());
  }
  return ColumnMatrix(n, std::make_shared<const Storage>(std::move(csc)));
}

ColumnMatrix ColumnMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  std::vector<std::vector<Entry>> cols(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw InputError("from_rows: matrix must be square");
    for (std::size_t j = 0; j < n; ++j) {
      if (rows[i][j] != 0.0) cols[j].push_back({i, rows[i][j]});
    }
  }
  std::vector<SparseVector> columns;
  columns.reserve(n);
  for (auto& c : cols) columns.emplace_back(n, std::move(c));
  return from_columns(columns);
}

ColumnMatrix ColumnMatrix::dense(std::size_t dim, std::vector<double> column_major) {
  if (dim == 0) throw InputError("matrix dimension must be positive");
  if (column_major.size() != dim * dim) {
    throw InputError(fmt::format("dense storage has {} values, expected {}", column_major.size(), dim * dim));
  }
  return ColumnMatrix(dim, std::make_shared<const Storage>(Dense{std::move(column_major)}));
}

ColumnMatrix ColumnMatrix::generated(std::size_t dim, Generator generator) {
  if (dim == 0) throw InputError("matrix dimension must be positive");
  if (!generator) throw InputError("column generator is empty");
  return ColumnMatrix(dim, std::make_shared<const Storage>(Generated{std::move(generator)}));
}

ColumnMatrix::Backing ColumnMatrix::backing() const noexcept {
  if (!storage_) return Backing::Compressed;
  switch (storage_->index()) {
    case 0:
      return Backing::Compressed;
    case 1:
      return Backing::Dense;
    default:
      return Backing::Generated;
  }
}

std::size_t ColumnMatrix::max_column_nnz() const noexcept {
  const auto* csc = storage_ ? std::get_if<Compressed>(storage_.get()) : nullptr;
  return csc ? csc->max_col_nnz : 0;
}

std::size_t ColumnMatrix::nnz() const noexcept {
  const auto* csc = storage_ ? std::get_if<Compressed>(storage_.get()) : nullptr;
  return csc ? csc->values.size() : 0;
}

void ColumnMatrix::check_column(std::size_t j) const {
  if (!storage_) throw InputError("column access on an empty matrix");
  if (j >= dim_) throw InputError(fmt::format("column index {} out of range for dimension {}", j, dim_));
}

SparseVector ColumnMatrix::column(std::size_t j) const {
  check_column(j);
  if (const auto* gen = std::get_if<Generated>(storage_.get())) {
    SparseVector col = gen->fn(j);
    if (col.dim() != dim_) {
      throw InputError(fmt::format("generated column {} has dimension {}, expected {}", j, col.dim(), dim_));
    }
    return col;
  }
  std::vector<Entry> entries;
  for_each_in_column(j, [&](std::size_t i, double v) { entries.push_back({i, v}); });
  return SparseVector(dim_, std::move(entries));
}

SparseVector g_column(const ColumnMatrix& a, std::size_t j) {
  return combine(1.0, SparseVector::basis(a.dim(), j), -1.0, a.column(j));
}

namespace {

// |G| as explicit columns; diagnostics-only full sweep.
std::vector<SparseVector> abs_g_columns(const ColumnMatrix& a) {
  std::vector<SparseVector> cols;
  cols.reserve(a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j) {
    SparseVector g = g_column(a, j);
    std::vector<Entry> entries(g.begin(), g.end());
    for (Entry& e : entries) e.value = std::abs(e.value);
    cols.emplace_back(a.dim(), std::move(entries));
  }
  return cols;
}

}  // namespace

double matrix_norm1_of_g(const ColumnMatrix& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.dim(); ++j) best = std::max(best, norms(g_column(a, j)).one);
  return best;
}

ContractionDiagnostics diagnostics(const ColumnMatrix& a) {
  ContractionDiagnostics d;
  const auto abs_g = abs_g_columns(a);
  for (const SparseVector& col : abs_g) d.g_norm1 = std::max(d.g_norm1, norms(col).one);
  d.is_contraction = d.g_norm1 < 1.0;
  d.m_g_simple = d.is_contraction ? 1.0 / (1.0 - d.g_norm1 * d.g_norm1)
                                  : std::numeric_limits<double>::infinity();

  // row functional c_s = 1^T |G|^s; || |G|^s ||_1 = max_j c_s[j].
  const std::size_t n = a.dim();
  DenseVector functional(n, 1.0);
  DenseVector next(n);
  CompensatedSum series;
  series += 1.0;  // s = 0: ||I||_1^2
  d.series_terms = 1;
  bool converged = false;
  for (std::size_t s = 1; s < ContractionDiagnostics::kMaxSeriesTerms; ++s) {
    double col_max = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (const Entry& e : abs_g[j]) acc += functional[e.index] * e.value;
      next[j] = acc;
      col_max = std::max(col_max, acc);
    }
    functional.swap(next);
    const double term = col_max * col_max;
    if (!std::isfinite(term) || term > 1e150) break;
    series += term;
    d.series_terms = s + 1;
    if (term < 1e-12) {
      converged = true;
      break;
    }
  }
  d.m_g_series = converged ? series.value() : std::numeric_limits<double>::infinity();
  return d;
}

DenseVector apply(const ColumnMatrix& a, std::span<const double> v) {
  if (v.size() != a.dim()) {
    throw InputError(fmt::format("apply: dimension mismatch ({} vs {})", v.size(), a.dim()));
  }
  DenseVector y(a.dim(), 0.0);
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double vj = v[j];
    if (vj == 0.0) continue;
    a.for_each_in_column(j, [&](std::size_t i, double aij) { y[i] += aij * vj; });
  }
  return y;
}

DenseVector apply(const ColumnMatrix& a, const SparseVector& v) {
  if (v.dim() != a.dim()) {
    throw InputError(fmt::format("apply: dimension mismatch ({} vs {})", v.dim(), a.dim()));
  }
  DenseVector y(a.dim(), 0.0);
  for (const Entry& e : v) {
    a.for_each_in_column(e.index, [&](std::size_t i, double aij) { y[i] += aij * e.value; });
  }
  return y;
}

DenseVector apply_g(const ColumnMatrix& a, std::span<const double> v) {
  DenseVector y = rsri::apply(a, v);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = v[i] - y[i];
  return y;
}

ColumnMatrix regularized_operator(const ColumnMatrix& a) {
  auto cols = abs_g_columns(a);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    cols[j] = combine(1.0, SparseVector::basis(a.dim(), j), -1.0, cols[j]);
  }
  return ColumnMatrix::from_columns(cols);
}

}  // namespace rsri
