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
#include "rsri/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rsri/errors.hpp"

namespace rsri {

PreservationSplit preservation_split(const SparseVector& v, std::size_t m) {
  if (m < 1) throw InputError("sparsity level m must be at least 1");
  const auto entries = v.entries();
  const std::size_t n = entries.size();
  PreservationSplit split;

  if (n <= m) {
    for (std::size_t k : decreasing_order(v)) split.exact.push_back(entries[k].index);
    return split;
  }

  // Partial selection of the m largest magnitudes, O(nnz + m log m).
  auto larger = [&](std::size_t a, std::size_t b) {
    const double ma = std::abs(entries[a].value);
    const double mb = std::abs(entries[b].value);
    return ma > mb || (ma == mb && a < b);
  };
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m), order.end(), larger);
  std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m), larger);

  CompensatedSum beyond_top;
  for (std::size_t k = m; k < n; ++k) beyond_top += std::abs(entries[order[k]].value);
  const double tail_mass = beyond_top.value();

  // top_suffix[k] = sum of |v| over the top-m entries ranked k..m-1.
  std::vector<double> top_suffix(m + 1, 0.0);
  for (std::size_t k = m; k-- > 0;) top_suffix[k] = top_suffix[k + 1] + std::abs(entries[order[k]].value);

  // |v_c| >= (|v_c| + rest) / (m - q)  <=>  |v_c| * (m - q - 1) >= rest,
  // where rest is the mass outside the exact set other than v_c. rest > 0
  // here since nnz > m, so q never reaches m.
  std::size_t q = 0;
  while (q < m) {
    const double candidate = std::abs(entries[order[q]].value);
    const double rest = tail_mass + top_suffix[q + 1];
    if (candidate * static_cast<double>(m - q - 1) >= rest) {
      ++q;
    } else {
      break;
    }
  }

  std::vector<char> is_exact(n, 0);
  split.exact.reserve(q);
  for (std::size_t k = 0; k < q; ++k) {
    is_exact[order[k]] = 1;
    split.exact.push_back(entries[order[k]].index);
  }

  split.sample_budget = m - q;
  split.residual_mass = tail_mass + top_suffix[q];
  const double scale = static_cast<double>(split.sample_budget) / split.residual_mass;
  const double below_one = std::nextafter(1.0, 0.0);
  split.residual_indices.reserve(n - q);
  split.residual_probs.reserve(n - q);
  for (std::size_t k = 0; k < n; ++k) {
    if (is_exact[k]) continue;
    split.residual_indices.push_back(entries[k].index);
    split.residual_probs.push_back(std::min(std::abs(entries[k].value) * scale, below_one));
  }
  return split;
}

SparseVector sparsify(const SparseVector& v, std::size_t m, RandomStream& rng) {
  PreservationSplit split = preservation_split(v, m);
  if (split.residual_indices.empty()) return v;

  const auto chosen = pivotal_select(split.residual_probs, split.sample_budget, rng);
  const double magnitude = split.residual_mass / static_cast<double>(split.sample_budget);

  std::vector<Entry> out;
  out.reserve(split.exact.size() + chosen.size());
  for (std::size_t idx : split.exact) out.push_back({idx, v[idx]});
  for (std::size_t pos : chosen) {
    const std::size_t idx = split.residual_indices[pos];
    out.push_back({idx, std::copysign(magnitude, v[idx])});
  }
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
  return SparseVector(v.dim(), std::move(out));
}

double sparsify_l2_bound(const SparseVector& v, std::size_t m) {
  if (m < 1) throw InputError("sparsity level m must be at least 1");
  if (v.nnz() <= m) return 0.0;
  const auto tails = tail_sums(v);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    const double tail = tails[i];
    best = std::min(best, tail * tail / static_cast<double>(m - i));
  }
  return best;
}

}  // namespace rsri
