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
#include <vector>

#include "rsri/sampling.hpp"
#include "rsri/vector_core.hpp"

namespace rsri {

/// Result of splitting a vector into exactly-kept and randomly-rounded parts.
struct PreservationSplit {
  /// Indices kept exactly, in decreasing-magnitude order.
  std::vector<std::size_t> exact;
  /// Indices eligible for random rounding (increasing) and their inclusion
  /// probabilities; the probabilities sum to sample_budget.
  std::vector<std::size_t> residual_indices;
  std::vector<double> residual_probs;
  /// m - |exact| when residual entries exist, otherwise 0.
  std::size_t sample_budget = 0;
  /// Sum of |v_j| over the residual entries.
  double residual_mass = 0.0;

  std::size_t q() const noexcept { return exact.size(); }
};

/// Smallest exact-preservation set: the largest remaining entry is moved into
/// the exact set while |v_i| >= (sum of |v_j| outside the set) / (m - q).
/// When nnz(v) <= m every nonzero is exact and nothing is sampled.
/// Throws InputError for m < 1.
PreservationSplit preservation_split(const SparseVector& v, std::size_t m);

/// Pivotal sparsification: unbiased, at most m nonzeros, exact entries copied,
/// sampled entries rescaled to v_i / p_i. The 1-norm is preserved on every draw.
SparseVector sparsify(const SparseVector& v, std::size_t m, RandomStream& rng);

/// min over i < m of (tail_sums(v)[i])^2 / (m - i); an upper bound on
/// E||sparsify(v, m) - v||^2.
double sparsify_l2_bound(const SparseVector& v, std::size_t m);

}  // namespace rsri
