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
#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "rsri/vector_core.hpp"

namespace rsri {

/// Square matrix accessed one column at a time.
///
/// Solvers never see rows or individual entries; they ask for column j and
/// get back its nonzeros. Three backings exist: compressed sparse columns
/// (the common case, zero-copy access), dense column-major storage, and an
/// implicit generator that computes column j on demand. Generators must be
/// deterministic functions of j and safe to call concurrently.
///
/// ColumnMatrix is an immutable value with shared storage; copies are cheap
/// and concurrent column fetches are safe.
class ColumnMatrix {
 public:
  using Generator = std::function<SparseVector(std::size_t)>;
  enum class Backing { Compressed, Dense, Generated };

  ColumnMatrix() = default;

  static ColumnMatrix identity(std::size_t dim);
  /// Columns must all have dimension columns.size().
  static ColumnMatrix from_columns(const std::vector<SparseVector>& columns);
  /// Row-major nested initializer, handy for small hand-written systems.
  static ColumnMatrix from_rows(const std::vector<std::vector<double>>& rows);
  /// Column-major dense storage, kept dense.
  static ColumnMatrix dense(std::size_t dim, std::vector<double> column_major);
  static ColumnMatrix generated(std::size_t dim, Generator generator);

  std::size_t dim() const noexcept { return dim_; }
  Backing backing() const noexcept;
  /// Largest column nnz; only known up front for compressed storage (0 otherwise).
  std::size_t max_column_nnz() const noexcept;
  /// Total stored nonzeros for compressed storage (0 otherwise).
  std::size_t nnz() const noexcept;

  SparseVector column(std::size_t j) const;

  /// Calls f(row, value) for every nonzero of column j in increasing row order.
  template <class F>
  void for_each_in_column(std::size_t j, F&& f) const;

 private:
  struct Compressed {
    std::vector<std::size_t> col_ptr;
    std::vector<std::size_t> rows;
    std::vector<double> values;
    std::size_t max_col_nnz = 0;
  };
  struct Dense {
    std::vector<double> column_major;
  };
  struct Generated {
    Generator fn;
  };
  using Storage = std::variant<Compressed, Dense, Generated>;

  ColumnMatrix(std::size_t dim, std::shared_ptr<const Storage> storage)
      : dim_(dim), storage_(std::move(storage)) {}
  void check_column(std::size_t j) const;

  std::size_t dim_ = 0;
  std::shared_ptr<const Storage> storage_;
};

template <class F>
void ColumnMatrix::for_each_in_column(std::size_t j, F&& f) const {
  check_column(j);
  if (const auto* csc = std::get_if<Compressed>(storage_.get())) {
    for (std::size_t k = csc->col_ptr[j]; k < csc->col_ptr[j + 1]; ++k) f(csc->rows[k], csc->values[k]);
  } else if (const auto* dense = std::get_if<Dense>(storage_.get())) {
    const double* col = dense->column_major.data() + j * dim_;
    for (std::size_t i = 0; i < dim_; ++i) {
      if (col[i] != 0.0) f(i, col[i]);
    }
  } else {
    for (const Entry& e : column(j)) f(e.index, e.value);
  }
}

/// Column j of G = I - A, with exact cancellations removed.
SparseVector g_column(const ColumnMatrix& a, std::size_t j);

/// ||G||_1 = max_j ||G(:, j)||_1. Sweeps every column.
double matrix_norm1_of_g(const ColumnMatrix& a);

struct ContractionDiagnostics {
  double g_norm1 = 0.0;
  /// 1 / (1 - ||G||_1^2), +inf unless ||G||_1 < 1.
  double m_g_simple = 0.0;
  /// sum_{s>=0} || |G|^s ||_1^2, truncated once a term drops below 1e-12;
  /// +inf if it has not converged after kMaxSeriesTerms terms.
  double m_g_series = 0.0;
  std::size_t series_terms = 0;
  bool is_contraction = false;

  static constexpr std::size_t kMaxSeriesTerms = 10000;
};

/// Full diagnostic sweep; || |G|^s ||_1 is obtained by pushing the row
/// functional 1^T through |G| one column sweep per term.
ContractionDiagnostics diagnostics(const ColumnMatrix& a);

/// y = A v, accumulated column by column.
DenseVector apply(const ColumnMatrix& a, std::span<const double> v);
DenseVector apply(const ColumnMatrix& a, const SparseVector& v);

/// G v = v - A v for a dense v.
DenseVector apply_g(const ColumnMatrix& a, std::span<const double> v);

/// The regularized operator I - |G| used by the variance bounds.
ColumnMatrix regularized_operator(const ColumnMatrix& a);

}  // namespace rsri
