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
#include "rsri/solvers.hpp"

#include <chrono>

#include <fmt/core.h>

#include "rsri/accumulator.hpp"
#include "rsri/errors.hpp"
#include "rsri/sparsify.hpp"

namespace rsri {

void RsriConfig::validate() const {
  if (m < 1) throw InputError("RSRI: sparsity level m must be at least 1");
  if (t < 1) throw InputError("RSRI: iteration count t must be at least 1");
  if (t_min >= t) throw InputError(fmt::format("RSRI: burn-in t_min = {} must be below t = {}", t_min, t));
  if (trials < 1) throw InputError("RSRI: trials must be at least 1");
}

namespace {

void check_dims(const ColumnMatrix& a, const SparseVector& b) {
  if (a.dim() != b.dim()) {
    throw InputError(fmt::format("matrix dimension {} does not match right-hand side dimension {}", a.dim(), b.dim()));
  }
}

// Drives the iterates X^(0..t-1) and hands each one to visit(s, X). Returns
// the number of columns read.
template <class Visit>
std::size_t run_iterates(const ColumnMatrix& a, const SparseVector& b, const RsriConfig& cfg, RandomStream& rng,
                         std::size_t dense_limit, const IterateObserver& observer, Visit&& visit) {
  SparseAccumulator next(a.dim(), a.dim() <= dense_limit);
  SparseVector iterate = b;
  std::size_t accesses = 0;
  if (observer) observer(0, iterate, 0);
  visit(std::size_t{0}, iterate);
  for (std::size_t s = 1; s < cfg.t; ++s) {
    const SparseVector phi = sparsify(iterate, cfg.m, rng);
    next.clear();
    next.add(b);
    next.add(phi);
    for (const Entry& e : phi) {
      const double w = e.value;
      a.for_each_in_column(e.index, [&](std::size_t i, double aij) { next.add(i, -w * aij); });
    }
    accesses += phi.nnz();
    iterate = next.extract();
    if (observer) observer(s, iterate, phi.nnz());
    visit(s, iterate);
  }
  return accesses;
}

}  // namespace

DenseVector richardson(const ColumnMatrix& a, const SparseVector& b, std::size_t t) {
  check_dims(a, b);
  DenseVector x = b.to_dense();
  for (std::size_t s = 0; s < t; ++s) {
    const DenseVector ax = rsri::apply(a, x);
    for (const Entry& e : b) x[e.index] += e.value;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= ax[i];
  }
  return x;
}

FixedPointSolution reference_solve(const ColumnMatrix& a, const SparseVector& b, double tol,
                                   std::size_t max_iterations) {
  check_dims(a, b);
  FixedPointSolution sol;
  sol.x = b.to_dense();
  auto residual = [&] {
    DenseVector r = rsri::apply(a, sol.x);
    for (double& v : r) v = -v;
    for (const Entry& e : b) r[e.index] += e.value;
    return r;
  };
  DenseVector r = residual();
  sol.residual = norm1(r);
  while (sol.residual > tol) {
    if (sol.iterations >= max_iterations) {
      throw NumericalError(fmt::format("Richardson iteration did not reach residual {:g} in {} iterations "
                                       "(final residual {:.6g})",
                                       tol, max_iterations, sol.residual),
                           sol.residual);
    }
    for (std::size_t i = 0; i < r.size(); ++i) sol.x[i] += r[i];
    r = residual();
    sol.residual = norm1(r);
    ++sol.iterations;
  }
  return sol;
}

SolveReport rsri(const ColumnMatrix& a, const SparseVector& b, const RsriConfig& cfg, RandomStream& rng,
                 const RsriOptions& options) {
  cfg.validate();
  check_dims(a, b);
  const auto start = std::chrono::steady_clock::now();

  SolveReport report;
  SparseAccumulator average(a.dim(), a.dim() <= options.dense_accumulator_limit);
  report.column_accesses =
      run_iterates(a, b, cfg, rng, options.dense_accumulator_limit, options.observer,
                   [&](std::size_t s, const SparseVector& iterate) {
                     report.max_iterate_nnz = std::max(report.max_iterate_nnz, iterate.nnz());
                     if (s >= cfg.t_min) average.add(iterate);
                   });
  report.estimate = average.extract(1.0 / static_cast<double>(cfg.t - cfg.t_min));
  report.wall_clock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<double> rsri_functionals(const ColumnMatrix& a, const SparseVector& b, const RsriConfig& cfg,
                                     RandomStream& rng, std::span<const DenseVector> functionals) {
  cfg.validate();
  check_dims(a, b);
  for (const DenseVector& f : functionals) {
    if (f.size() != a.dim()) throw InputError("rsri_functionals: functional dimension mismatch");
  }
  std::vector<double> sums(functionals.size(), 0.0);
  run_iterates(a, b, cfg, rng, RsriOptions{}.dense_accumulator_limit, nullptr,
               [&](std::size_t s, const SparseVector& iterate) {
                 if (s < cfg.t_min) return;
                 for (std::size_t k = 0; k < functionals.size(); ++k) sums[k] += dot(functionals[k], iterate);
               });
  const double inv = 1.0 / static_cast<double>(cfg.t - cfg.t_min);
  for (double& v : sums) v *= inv;
  return sums;
}

DenseVector expected_average(const ColumnMatrix& a, const SparseVector& b, std::size_t t, std::size_t t_min,
                             double tol) {
  if (t_min >= t) throw InputError("expected_average: t_min must be below t");
  const DenseVector x = reference_solve(a, b, tol).x;
  DenseVector power = x;  // G^(s+1) x
  for (std::size_t k = 0; k <= t_min; ++k) power = apply_g(a, power);
  DenseVector sum(x.size(), 0.0);
  for (std::size_t s = t_min; s < t; ++s) {
    for (std::size_t i = 0; i < x.size(); ++i) sum[i] += x[i] - power[i];
    if (s + 1 < t) power = apply_g(a, power);
  }
  const double inv = 1.0 / static_cast<double>(t - t_min);
  for (double& v : sum) v *= inv;
  return sum;
}

}  // namespace rsri
