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

// Closed-form error bounds for RSRI, evaluated from oracle quantities. These
// are what the statistical tests and the harness compare empirical errors
// against.

#include <cstddef>
#include <optional>
#include <span>

#include "rsri/operators.hpp"
#include "rsri/solvers.hpp"
#include "rsri/vector_core.hpp"

namespace rsri {

/// min over integer i with 0 <= i < m - offset of tails[i]^2 / (m - offset - i),
/// where tails are decreasing-rearrangement tail sums (tails[i] = sum beyond
/// the i largest entries; out-of-range tails count as 0). nullopt when
/// m <= offset.
std::optional<double> shifted_tail_bound(std::span<const double> tails, double m, double offset);

/// Residual mean-square bound for a strict 1-norm contraction:
///   E||A Xbar - b||^2 <= bias^2 + variance.
struct ResidualBound {
  double bias = 0.0;              // 2 ||G^t_min x||_1 / (t - t_min)
  double variance_general = 0.0;  // 8t/(t-t_min)^2 * (1/m) (||b||_1 / (1 - ||G||_1))^2
  /// 8t/(t-t_min)^2 * min_i (tail of xtilde)^2 / (m - m_G - i), m_G = 1/(1 - ||G||_1^2),
  /// present only when m > m_G.
  std::optional<double> variance_tail;

  double variance() const noexcept;
  double total() const noexcept { return bias * bias + variance(); }
};

/// Evaluates ResidualBound. Requires ||G||_1 < 1 (throws InputError otherwise);
/// x and the regularized solution xtilde of (I - |G|) xtilde = |b| are found
/// with reference_solve(tol).
ResidualBound residual_bound(const ColumnMatrix& a, const SparseVector& b, const RsriConfig& cfg,
                             double tol = 1e-13);

/// Mean-square error bound for PageRank, E||Xbar - x||^2, given the exact
/// solution x (nonnegative, sums to 1):
///   (4 alpha^t_min / ((1-alpha) t))^2
///     + 16 / ((1-alpha)^2 t) * min_{i <= m - m_alpha} (tail_i)^2 / (m - m_alpha - i),
/// with m_alpha = 1/(1 - alpha^2). Valid for m >= m_alpha and t >= 2 t_min.
/// Below m_alpha the general contraction bound is mapped through
/// ||A^-1||_1 = 1/(1-alpha) instead:
///   (1/(1-alpha)^2) [ (2 alpha^t_min / (t - t_min))^2 + 8t / ((t-t_min)^2 m) ].
double pagerank_error_bound(double alpha, std::span<const double> x, std::size_t t, std::size_t t_min,
                            std::size_t m);

/// Decay bound for personalized PageRank with at most q nonzeros per column:
/// sum of the entries beyond the (i-1) largest is at most alpha^-1 i^-log_q(1/alpha), i >= 1.
double decay_bound(double alpha, double q, std::size_t i);

}  // namespace rsri
