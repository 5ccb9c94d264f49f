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
#include "rsri/accumulator.hpp"

#include <algorithm>

#include "rsri/errors.hpp"

namespace rsri {

SparseAccumulator::SparseAccumulator(std::size_t dim, bool dense) : dim_(dim), dense_(dense) {
  if (dense_) {
    values_.assign(dim_, 0.0);
    seen_.assign(dim_, 0);
  }
}

void SparseAccumulator::add(std::size_t index, double value) {
  if (dense_) {
    if (!seen_[index]) {
      seen_[index] = 1;
      touched_.push_back(index);
    }
    values_[index] += value;
  } else {
    map_[index] += value;
  }
}

void SparseAccumulator::add(const SparseVector& v, double scale) {
  if (v.dim() != dim_) throw InputError("SparseAccumulator: dimension mismatch");
  for (const Entry& e : v) add(e.index, scale * e.value);
}

SparseVector SparseAccumulator::extract(double scale) const {
  std::vector<Entry> out;
  if (dense_) {
    std::vector<std::size_t> order = touched_;
    std::sort(order.begin(), order.end());
    out.reserve(order.size());
    for (std::size_t i : order) {
      const double v = values_[i] * scale;
      if (v != 0.0) out.push_back({i, v});
    }
  } else {
    out.reserve(map_.size());
    for (const auto& [i, sum] : map_) {
      const double v = sum * scale;
      if (v != 0.0) out.push_back({i, v});
    }
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
  }
  return SparseVector(dim_, std::move(out));
}

void SparseAccumulator::clear() {
  if (dense_) {
    for (std::size_t i : touched_) {
      values_[i] = 0.0;
      seen_[i] = 0;
    }
    touched_.clear();
  } else {
    map_.clear();
  }
}

}  // namespace rsri
