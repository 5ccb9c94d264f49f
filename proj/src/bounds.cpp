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
#include "rsri/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rsri/errors.hpp"

namespace rsri {

std::optional<double> shifted_tail_bound(std::span<const double> tails, double m, double offset) {
  const double room = m - offset;
  if (!(room > 0.0)) return std::nullopt;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; static_cast<double>(i) < room; ++i) {
    const double tail = i < tails.size() ? tails[i] : 0.0;
    best = std::min(best, tail * tail / (room - static_cast<double>(i)));
    if (tail == 0.0) break;
  }
  return best;
}

double ResidualBound::variance() const noexcept {
  return variance_tail ? std::min(variance_general, *variance_tail) : variance_general;
}

ResidualBound residual_bound(const ColumnMatrix& a, const SparseVector& b, const RsriConfig& cfg, double tol) {
  cfg.validate();
  const double g_norm = matrix_norm1_of_g(a);
  if (!(g_norm < 1.0)) throw InputError("residual_bound requires ||I - A||_1 < 1");

  const double span = static_cast<double>(cfg.t - cfg.t_min);
  const double prefactor = 8.0 * static_cast<double>(cfg.t) / (span * span);

  ResidualBound bound;
  DenseVector power = reference_solve(a, b, tol).x;
  for (std::size_t k = 0; k < cfg.t_min; ++k) power = apply_g(a, power);
  bound.bias = 2.0 * norm1(power) / span;

  const double scale = norms(b).one / (1.0 - g_norm);
  bound.variance_general = prefactor / static_cast<double>(cfg.m) * scale * scale;

  const double m_g = 1.0 / (1.0 - g_norm * g_norm);
  if (static_cast<double>(cfg.m) > m_g) {
    std::vector<Entry> abs_b(b.begin(), b.end());
    for (Entry& e : abs_b) e.value = std::abs(e.value);
    const DenseVector xtilde =
        reference_solve(regularized_operator(a), SparseVector(b.dim(), std::move(abs_b)), tol).x;
    const auto tails = tail_sums(xtilde);
    if (auto t = shifted_tail_bound(tails, static_cast<double>(cfg.m), m_g)) bound.variance_tail = prefactor * *t;
  }
  return bound;
}

double pagerank_error_bound(double alpha, std::span<const double> x, std::size_t t, std::size_t t_min,
                            std::size_t m) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("pagerank_error_bound: alpha must lie in (0, 1)");
  if (t_min >= t) throw InputError("pagerank_error_bound: t_min must be below t");
  const double td = static_cast<double>(t);
  const double one_minus = 1.0 - alpha;
  const double m_alpha = 1.0 / (1.0 - alpha * alpha);
  const double decay = std::pow(alpha, static_cast<double>(t_min));

  if (auto tail = shifted_tail_bound(tail_sums(x), static_cast<double>(m), m_alpha)) {
    const double bias = 4.0 * decay / (one_minus * td);
    return bias * bias + 16.0 / (one_minus * one_minus * td) * *tail;
  }
  const double span = static_cast<double>(t - t_min);
  const double bias = 2.0 * decay / span;
  const double variance = 8.0 * td / (span * span * static_cast<double>(m));
  return (bias * bias + variance) / (one_minus * one_minus);
}

double decay_bound(double alpha, double q, std::size_t i) {
  const double exponent = std::log(1.0 / alpha) / std::log(q);
  return std::pow(static_cast<double>(i), -exponent) / alpha;
}

}  // namespace rsri
