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
#include "rsri/vector_core.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/core.h>

#include "rsri/errors.hpp"

namespace rsri {

SparseVector::SparseVector(std::size_t dim) : dim_(dim) {}

SparseVector::SparseVector(std::size_t dim, std::vector<Entry> entries)
    : dim_(dim), entries_(std::move(entries)) {
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    const Entry& e = entries_[k];
    if (e.index >= dim_) {
      throw InputError(fmt::format("sparse entry index {} out of range for dimension {}", e.index, dim_));
    }
    if (e.value == 0.0) {
      throw InputError(fmt::format("sparse entry at index {} stores an explicit zero", e.index));
    }
    if (k > 0 && entries_[k - 1].index >= e.index) {
      throw InputError("sparse entries must have strictly increasing indices");
    }
  }
}

SparseVector SparseVector::from_unsorted(std::size_t dim, std::vector<Entry> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.index < b.index; });
  std::vector<Entry> merged;
  merged.reserve(entries.size());
  for (const Entry& e : entries) {
    if (!merged.empty() && merged.back().index == e.index) {
      merged.back().value += e.value;
    } else {
      merged.push_back(e);
    }
  }
  std::erase_if(merged, [](const Entry& e) { return e.value == 0.0; });
  return SparseVector(dim, std::move(merged));
}

SparseVector SparseVector::from_dense(std::span<const double> values) {
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != 0.0) entries.push_back({i, values[i]});
  }
  return SparseVector(values.size(), std::move(entries));
}

SparseVector SparseVector::basis(std::size_t dim, std::size_t k, double value) {
  if (k >= dim) throw InputError(fmt::format("basis index {} out of range for dimension {}", k, dim));
  if (value == 0.0) return SparseVector(dim);
  return SparseVector(dim, {{k, value}});
}

double SparseVector::operator[](std::size_t i) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                             [](const Entry& e, std::size_t idx) { return e.index < idx; });
  return (it != entries_.end() && it->index == i) ? it->value : 0.0;
}

DenseVector SparseVector::to_dense() const {
  DenseVector out(dim_, 0.0);
  for (const Entry& e : entries_) out[e.index] = e.value;
  return out;
}

Norms norms(const SparseVector& v) {
  Norms n;
  double sq = 0.0;
  for (const Entry& e : v) {
    const double a = std::abs(e.value);
    n.one += a;
    sq += a * a;
    n.inf = std::max(n.inf, a);
  }
  n.two = std::sqrt(sq);
  n.nnz = v.nnz();
  return n;
}

std::vector<std::size_t> decreasing_order(const SparseVector& v) {
  const auto entries = v.entries();
  std::vector<std::size_t> order(entries.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Entries are index-sorted, so a stable sort keeps lower indices first on ties.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(entries[a].value) > std::abs(entries[b].value);
  });
  return order;
}

namespace {

std::vector<double> tails_from_sorted(std::vector<double> mags) {
  std::vector<double> tails(mags.size() + 1, 0.0);
  for (std::size_t i = mags.size(); i-- > 0;) tails[i] = tails[i + 1] + mags[i];
  return tails;
}

}  // namespace

std::vector<double> tail_sums(const SparseVector& v) {
  std::vector<double> mags;
  mags.reserve(v.nnz());
  for (std::size_t k : decreasing_order(v)) mags.push_back(std::abs(v.entries()[k].value));
  return tails_from_sorted(std::move(mags));
}

std::vector<double> tail_sums(std::span<const double> dense) {
  return tail_sums(SparseVector::from_dense(dense));
}

SparseVector combine(double alpha, const SparseVector& u, double beta, const SparseVector& w) {
  if (u.dim() != w.dim()) {
    throw InputError(fmt::format("combine: dimension mismatch ({} vs {})", u.dim(), w.dim()));
  }
  std::vector<Entry> out;
  out.reserve(u.nnz() + w.nnz());
  auto a = u.begin();
  auto b = w.begin();
  while (a != u.end() || b != w.end()) {
    double value;
    std::size_t index;
    if (b == w.end() || (a != u.end() && a->index < b->index)) {
      index = a->index;
      value = alpha * a->value;
      ++a;
    } else if (a == u.end() || b->index < a->index) {
      index = b->index;
      value = beta * b->value;
      ++b;
    } else {
      index = a->index;
      value = alpha * a->value + beta * b->value;
      ++a;
      ++b;
    }
    if (value != 0.0) out.push_back({index, value});
  }
  return SparseVector(u.dim(), std::move(out));
}

double dot(std::span<const double> f, const SparseVector& v) {
  if (f.size() != v.dim()) {
    throw InputError(fmt::format("dot: dimension mismatch ({} vs {})", f.size(), v.dim()));
  }
  double s = 0.0;
  for (const Entry& e : v) s += f[e.index] * e.value;
  return s;
}

double norm1(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double norm_inf(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

}  // namespace rsri
