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
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "rsri/operators.hpp"
#include "rsri/sampling.hpp"
#include "rsri/vector_core.hpp"

namespace rsri {

struct RsriConfig {
  std::size_t m = 1;      // sparsity level
  std::size_t t = 1;      // iterates X^(0..t-1) are generated
  std::size_t t_min = 0;  // burn-in; X^(t_min..t-1) are averaged
  std::uint64_t seed = 0;
  std::size_t trials = 1;

  /// Throws InputError unless m >= 1, t >= 1, t_min < t and trials >= 1.
  void validate() const;
};

/// Called once per iterate X^(s), s = 0..t-1, with the number of columns
/// read to produce it.
using IterateObserver = std::function<void(std::size_t s, const SparseVector& iterate, std::size_t columns_read)>;

struct RsriOptions {
  /// The running average lives in a dense array up to this dimension and in
  /// a hashed accumulator above it.
  std::size_t dense_accumulator_limit = 10'000'000;
  IterateObserver observer;
};

struct SolveReport {
  SparseVector estimate;  // average of X^(t_min..t-1)
  std::size_t column_accesses = 0;
  double wall_clock_s = 0.0;
  std::size_t max_iterate_nnz = 0;
};

/// Classical Richardson iteration: x^(0) = b, x^(s) = b + x^(s-1) - A x^(s-1).
DenseVector richardson(const ColumnMatrix& a, const SparseVector& b, std::size_t t);

struct FixedPointSolution {
  DenseVector x;
  std::size_t iterations = 0;
  double residual = 0.0;  // ||b - A x||_1
};

/// Richardson iteration run until ||b - A x||_1 <= tol. Throws NumericalError
/// (carrying the last residual) when max_iterations is exhausted.
FixedPointSolution reference_solve(const ColumnMatrix& a, const SparseVector& b, double tol,
                                   std::size_t max_iterations = 1'000'000);

/// Randomly sparsified Richardson iteration:
///   X^(0) = b,  X^(s) = b + phi - sum_{j in supp(phi)} phi_j A(:, j),
///   phi = sparsify(X^(s-1), m),
/// returning the average of X^(t_min), ..., X^(t-1). Only the columns of A
/// on the support of phi are read, at most m per iteration.
SolveReport rsri(const ColumnMatrix& a, const SparseVector& b, const RsriConfig& cfg, RandomStream& rng,
                 const RsriOptions& options = {});

/// Streaming inner products: (1/(t - t_min)) sum_s <f, X^(s)> for each f,
/// without storing the averaged estimate. With the same stream as rsri() the
/// results agree with dot(f, estimate) up to rounding.
std::vector<double> rsri_functionals(const ColumnMatrix& a, const SparseVector& b, const RsriConfig& cfg,
                                     RandomStream& rng, std::span<const DenseVector> functionals);

/// E[average of X^(t_min..t-1)] = (1/(t - t_min)) sum_s (x - G^(s+1) x), with
/// x from reference_solve(tol).
DenseVector expected_average(const ColumnMatrix& a, const SparseVector& b, std::size_t t, std::size_t t_min,
                             double tol = 1e-13);

}  // namespace rsri
