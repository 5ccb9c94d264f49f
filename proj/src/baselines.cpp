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
#include "rsri/baselines.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

#include "rsri/accumulator.hpp"
#include "rsri/errors.hpp"

namespace rsri {

namespace {

constexpr double kStochasticTol = 1e-9;

void check_inputs(const ColumnMatrix& P, const SparseVector& s, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError(fmt::format("alpha = {} must lie in (0, 1)", alpha));
  if (s.dim() != P.dim()) throw InputError("personalization vector dimension does not match the graph");
  CompensatedSum mass;
  for (const Entry& e : s) {
    if (e.value < 0.0) throw InputError("personalization vector has a negative entry");
    mass += e.value;
  }
  if (std::abs(mass.value() - 1.0) > kStochasticTol) {
    throw InputError(fmt::format("personalization vector sums to {:.17g}, not 1", mass.value()));
  }
}

double column_mass(const ColumnMatrix& P, std::size_t j) {
  CompensatedSum mass;
  P.for_each_in_column(j, [&](std::size_t i, double v) {
    if (v < 0.0) throw InputError(fmt::format("transition matrix entry ({}, {}) is negative", i, j));
    mass += v;
  });
  if (std::abs(mass.value() - 1.0) > kStochasticTol) {
    throw InputError(fmt::format("column {} of the transition matrix sums to {:.17g}, not 1", j, mass.value()));
  }
  return mass.value();
}

}  // namespace

SurferEstimate mc_surfer(const ColumnMatrix& P, const SparseVector& s, double alpha, std::size_t m,
                         RandomStream& rng) {
  check_inputs(P, s, alpha);
  if (m < 1) throw InputError("number of surfers must be at least 1");

  std::vector<double> start_cdf;
  start_cdf.reserve(s.nnz());
  CompensatedSum run;
  for (const Entry& e : s) {
    run += e.value;
    start_cdf.push_back(run.value());
  }
  const double cap = 1e4 / (1.0 - alpha);

  SurferEstimate out;
  SparseAccumulator counts(P.dim(), true);
  for (std::size_t k = 0; k < m; ++k) {
    const double u0 = rng.uniform() * start_cdf.back();
    const auto pos = std::upper_bound(start_cdf.begin(), start_cdf.end(), u0) - start_cdf.begin();
    std::size_t at = s.entries()[std::min<std::size_t>(pos, s.nnz() - 1)].index;
    std::size_t steps = 0;
    while (rng.uniform() < alpha) {
      if (static_cast<double>(++steps) > cap) {
        throw NumericalError(fmt::format("surfer exceeded the walk-length cap of {:g} steps", cap));
      }
      const double u = rng.uniform() * column_mass(P, at);
      ++out.column_accesses;
      double acc = 0.0;
      std::size_t next = at;
      bool found = false;
      P.for_each_in_column(at, [&](std::size_t i, double v) {
        if (found) return;
        next = i;
        acc += v;
        if (u < acc) found = true;
      });
      at = next;
    }
    counts.add(at, 1.0);
  }
  out.estimate = counts.extract(1.0 / static_cast<double>(m));
  return out;
}

PushSolver::PushSolver(ColumnMatrix P, const SparseVector& s, double alpha)
    : P_(std::move(P)), alpha_(alpha), x_(P_.dim(), 0.0), r_(P_.dim(), 0.0), checked_(P_.dim(), 0) {
  check_inputs(P_, s, alpha);
  for (const Entry& e : s) {
    r_[e.index] = (1.0 - alpha) * e.value;
    offer(e.index);
  }
}

namespace {
// Max-heap on value, then min on index.
bool heap_less(double av, std::size_t ai, double bv, std::size_t bi) {
  return av < bv || (av == bv && ai > bi);
}
}  // namespace

void PushSolver::offer(std::size_t i) {
  if (!(r_[i] > 0.0)) return;
  heap_.push_back({r_[i], i});
  std::push_heap(heap_.begin(), heap_.end(),
                 [](const HeapItem& a, const HeapItem& b) { return heap_less(a.value, a.index, b.value, b.index); });
}

std::optional<std::size_t> PushSolver::next_index() {
  auto cmp = [](const HeapItem& a, const HeapItem& b) { return heap_less(a.value, a.index, b.value, b.index); };
  while (!heap_.empty()) {
    const HeapItem& top = heap_.front();
    if (r_[top.index] == top.value) return top.index;
    std::pop_heap(heap_.begin(), heap_.end(), cmp);
    heap_.pop_back();
  }
  return std::nullopt;
}

double PushSolver::residual_inf() {
  const auto i = next_index();
  return i ? r_[*i] : 0.0;
}

void PushSolver::step() {
  ++steps_;
  const auto pick = next_index();
  if (!pick) return;
  const std::size_t i = *pick;
  if (!checked_[i]) {
    column_mass(P_, i);
    checked_[i] = 1;
  }
  const double rho = r_[i];
  x_[i] += rho;
  r_[i] = 0.0;
  const double spread = alpha_ * rho;
  P_.for_each_in_column(i, [&](std::size_t k, double v) { r_[k] += spread * v; });
  P_.for_each_in_column(i, [&](std::size_t k, double) { offer(k); });
}

PushResult push_cd(const ColumnMatrix& P, const SparseVector& s, double alpha, std::size_t steps,
                   std::optional<std::span<const double>> oracle) {
  if (oracle && oracle->size() != P.dim()) throw InputError("oracle dimension does not match the graph");
  PushSolver solver(P, s, alpha);
  PushResult out;
  out.trace.reserve(steps + 1);

  // ||x_hat - x||^2 is updated per push and refreshed periodically.
  constexpr std::size_t kRefresh = 1024;
  double err2 = oracle ? norm2(*oracle) * norm2(*oracle) : 0.0;
  auto record = [&] {
    TracePoint pt{solver.steps_taken(), solver.residual_inf(), std::nullopt};
    if (oracle) pt.error_2 = std::sqrt(std::max(err2, 0.0));
    out.trace.push_back(pt);
  };
  record();
  for (std::size_t k = 0; k < steps; ++k) {
    const auto i = solver.next_index();
    const double before = i ? solver.estimate()[*i] : 0.0;
    solver.step();
    if (oracle) {
      if (solver.steps_taken() % kRefresh == 0) {
        err2 = 0.0;
        for (std::size_t j = 0; j < P.dim(); ++j) {
          const double d = solver.estimate()[j] - (*oracle)[j];
          err2 += d * d;
        }
      } else if (i) {
        const double d0 = before - (*oracle)[*i];
        const double d1 = solver.estimate()[*i] - (*oracle)[*i];
        err2 += d1 * d1 - d0 * d0;
      }
    }
    record();
  }
  out.estimate = solver.estimate();
  return out;
}

}  // namespace rsri
