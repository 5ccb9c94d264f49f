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
#include <unordered_map>
#include <vector>

#include "rsri/vector_core.hpp"

namespace rsri {

/// Index-keyed running sums over a fixed dimension.
///
/// Dense mode keeps a length-dim array plus the list of touched slots, so
/// extract() and clear() cost O(touched log touched) rather than O(dim).
/// Hashed mode keeps only the touched slots, for dimensions too large to
/// allocate. Both modes add values per index in call order, so they produce
/// bit-identical results.
class SparseAccumulator {
 public:
  SparseAccumulator(std::size_t dim, bool dense);

  std::size_t dim() const noexcept { return dim_; }
  bool is_dense() const noexcept { return dense_; }
  std::size_t touched() const noexcept { return dense_ ? touched_.size() : map_.size(); }

  void add(std::size_t index, double value);
  void add(const SparseVector& v, double scale = 1.0);

  /// Current sums times `scale`, zeros dropped. The accumulator is unchanged.
  SparseVector extract(double scale = 1.0) const;
  void clear();

 private:
  std::size_t dim_;
  bool dense_;
  std::vector<double> values_;
  std::vector<char> seen_;
  std::vector<std::size_t> touched_;
  std::unordered_map<std::size_t, double> map_;
};

}  // namespace rsri
