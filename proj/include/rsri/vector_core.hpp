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

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace rsri {

using DenseVector = std::vector<double>;

struct Entry {
  std::size_t index;
  double value;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Sparse vector of fixed dimension. Entries are kept sorted by strictly
/// increasing index and never store an exact zero, so nnz() is the true
/// number of nonzeros. Immutable once built.
class SparseVector {
 public:
  SparseVector() = default;
  explicit SparseVector(std::size_t dim);

  /// Takes ownership of already-canonical entries; throws InputError when
  /// indices are unsorted, repeated, out of range, or a value is zero.
  SparseVector(std::size_t dim, std::vector<Entry> entries);

  /// Sorts, sums duplicate indices, and drops zeros.
  static SparseVector from_unsorted(std::size_t dim, std::vector<Entry> entries);
  static SparseVector from_dense(std::span<const double> values);
  static SparseVector basis(std::size_t dim, std::size_t k, double value = 1.0);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t nnz() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  std::span<const Entry> entries() const noexcept { return entries_; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  /// Value at index i (0 when not stored). O(log nnz).
  double operator[](std::size_t i) const;

  DenseVector to_dense() const;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Entry> entries_;
};

struct Norms {
  double one = 0.0;
  double two = 0.0;
  double inf = 0.0;
  std::size_t nnz = 0;
};

Norms norms(const SparseVector& v);

/// Tail sums of the decreasing rearrangement: T[i] = sum of |v| over all but
/// the i largest-magnitude entries, for i = 0..nnz. Ties between equal
/// magnitudes go to the lower index first.
std::vector<double> tail_sums(const SparseVector& v);
std::vector<double> tail_sums(std::span<const double> dense);

/// Stored positions of v ordered by decreasing magnitude (ties: lower index).
std::vector<std::size_t> decreasing_order(const SparseVector& v);

/// alpha*u + beta*w with exact cancellations removed.
SparseVector combine(double alpha, const SparseVector& u, double beta, const SparseVector& w);

double dot(std::span<const double> f, const SparseVector& v);

double norm1(std::span<const double> v);
double norm2(std::span<const double> v);
double norm_inf(std::span<const double> v);

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace rsri
