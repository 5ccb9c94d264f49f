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
#include <optional>
#include <span>
#include <vector>

#include "rsri/operators.hpp"
#include "rsri/sampling.hpp"
#include "rsri/vector_core.hpp"

namespace rsri {

struct SurferEstimate {
  SparseVector estimate;           // (1/m) sum of e_{Z_k}
  std::size_t column_accesses = 0;  // one per move of a surfer
};

/// Monte Carlo PageRank: m surfers start at draws from s and, while they
/// keep going with probability alpha, follow a random entry of P(:, current).
/// The estimate is the empirical distribution of where they stop.
///
/// Throws InputError when s is not a probability vector, alpha is outside
/// (0, 1), or a visited column of P is not stochastic (1e-9). A surfer still
/// walking after 1e4 / (1 - alpha) steps raises NumericalError.
SurferEstimate mc_surfer(const ColumnMatrix& P, const SparseVector& s, double alpha, std::size_t m,
                         RandomStream& rng);

struct TracePoint {
  std::size_t step = 0;
  double residual_inf = 0.0;
  std::optional<double> error_2;  // ||x_hat - x||_2 when an oracle is given
};
using ResidualTrace = std::vector<TracePoint>;

/// Push-style coordinate descent on r = (1 - alpha) s - (I - alpha P) x_hat,
/// starting from x_hat = 0. Each push moves the largest residual entry
/// (lowest index on ties) into x_hat and spreads alpha times it along P(:, i).
class PushSolver {
 public:
  PushSolver(ColumnMatrix P, const SparseVector& s, double alpha);

  /// One push. A zero residual leaves the state unchanged.
  void step();

  std::size_t steps_taken() const noexcept { return steps_; }
  const DenseVector& estimate() const noexcept { return x_; }
  const DenseVector& residual() const noexcept { return r_; }
  double residual_inf();
  /// Index the next push would select, or nullopt when r = 0.
  std::optional<std::size_t> next_index();

 private:
  struct HeapItem {
    double value;
    std::size_t index;
  };
  void offer(std::size_t i);

  ColumnMatrix P_;
  double alpha_;
  DenseVector x_;
  DenseVector r_;
  std::vector<HeapItem> heap_;
  std::vector<char> checked_;
  std::size_t steps_ = 0;
};

struct PushResult {
  DenseVector estimate;
  ResidualTrace trace;  // steps 0..steps
};

/// Runs PushSolver for the given number of steps, recording ||r||_inf (and
/// ||x_hat - x||_2 if oracle is given) before the first push and after each.
PushResult push_cd(const ColumnMatrix& P, const SparseVector& s, double alpha, std::size_t steps,
                   std::optional<std::span<const double>> oracle = std::nullopt);

}  // namespace rsri
