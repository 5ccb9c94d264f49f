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
#include <doctest.h>

#include <cmath>

#include "rsri/baselines.hpp"
#include "rsri/errors.hpp"
#include "rsri/harness.hpp"
#include "rsri/pagerank.hpp"
#include "rsri/solvers.hpp"
#include "support.hpp"

using namespace rsri;

namespace {

PageRankProblem three_cycle(double alpha = 0.85) {
  EdgeList el;
  el.add_edge(0, 1);
  el.add_edge(1, 2);
  el.add_edge(2, 0);
  return build_problem(el, alpha, 0);
}

PageRankProblem self_loop(double alpha) {
  EdgeList el;
  el.add_edge(0, 0);
  return build_problem(el, alpha, 0);
}

}  // namespace

TEST_SUITE("baselines") {

TEST_CASE("surfers that never move") {
  const PageRankProblem pr = three_cycle(1e-12);
  RandomStream rng(1);
  const SurferEstimate est = mc_surfer(pr.P, pr.s, 1e-12, 1000, rng);
  CHECK(est.estimate == SparseVector::basis(3, 0));
  CHECK(est.column_accesses == 0);

  const PageRankProblem loop = self_loop(0.85);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RandomStream r(seed);
    CHECK(mc_surfer(loop.P, loop.s, 0.85, 50, r).estimate == SparseVector::basis(1, 0));
  }
}

TEST_CASE("surfers on the 3-cycle with uniform start") {
  const PageRankProblem pr = three_cycle();
  const SparseVector uniform = SparseVector::from_dense(std::vector<double>(3, 1.0 / 3.0));
  const std::size_t m = 20000, runs = 30;
  std::vector<double> mse;
  const RandomStream master(2);
  for (std::size_t k = 0; k < runs; ++k) {
    RandomStream rng = spawn_stream(master, k);
    const DenseVector x = mc_surfer(pr.P, uniform, 0.85, m, rng).estimate.to_dense();
    double e = 0.0;
    for (double v : x) e += (v - 1.0 / 3.0) * (v - 1.0 / 3.0);
    mse.push_back(e);
  }
  double mean = 0.0, var = 0.0;
  for (double e : mse) mean += e / runs;
  for (double e : mse) var += (e - mean) * (e - mean) / (runs - 1);
  CHECK(mean <= 1.0 / m * 1.05 + 4 * std::sqrt(var / runs));
  // Exact value: sum x_i (1 - x_i) / m = (2/3) / m.
  CHECK(std::abs(mean - (2.0 / 3.0) / m) <= 4 * std::sqrt(var / runs));
}

TEST_CASE("property: surfer estimates are unbiased with binomial variance") {
  for (std::uint64_t g = 0; g < 3; ++g) {
    const PageRankProblem pr = build_problem(synth_bounded_outdegree(8 + 4 * g, 3, g), 0.85, 0);
    const auto x = test::pagerank_oracle(pr.P, 0.85, pr.s.to_dense());
    const std::size_t n = x.size(), m = 50, runs = 4000;
    std::vector<double> sum(n, 0.0), sumsq(n, 0.0);
    const RandomStream master(10 + g);
    for (std::size_t k = 0; k < runs; ++k) {
      RandomStream rng = spawn_stream(master, k);
      const DenseVector est = mc_surfer(pr.P, pr.s, 0.85, m, rng).estimate.to_dense();
      for (std::size_t i = 0; i < n; ++i) {
        sum[i] += est[i];
        sumsq[i] += est[i] * est[i];
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double var_true = x[i] * (1 - x[i]) / m;
      const double mean = sum[i] / runs;
      CHECK(std::abs(mean - x[i]) <= 4 * std::sqrt(var_true / runs) + 1e-12);
      // Binomial / m has mu4 = 3 var^2 + var (1 - 6 x (1 - x)) / m^2; the
      // standard error of the sample variance is sqrt((mu4 - var^2) / runs).
      const double var_emp = (sumsq[i] - runs * mean * mean) / (runs - 1);
      const double mu4 = var_true * var_true * 3 + var_true / (m * m);
      CHECK(std::abs(var_emp - var_true) <= 4 * std::sqrt((mu4 - var_true * var_true) / runs) + 1e-12);
    }
  }
}

TEST_CASE("surfer input validation") {
  const PageRankProblem pr = three_cycle();
  RandomStream rng(3);
  CHECK_THROWS_AS(mc_surfer(pr.P, SparseVector(3, {{0, 0.5}}), 0.85, 10, rng), InputError);
  CHECK_THROWS_AS(mc_surfer(pr.P, SparseVector(3, {{0, 1.5}, {1, -0.5}}), 0.85, 10, rng), InputError);
  CHECK_THROWS_AS(mc_surfer(pr.P, pr.s, 1.0, 10, rng), InputError);
  CHECK_THROWS_AS(mc_surfer(pr.P, pr.s, 0.85, 0, rng), InputError);
  const ColumnMatrix leaky = ColumnMatrix::from_rows({{0, 0.5}, {1, 0}});
  CHECK_THROWS_AS(mc_surfer(leaky, SparseVector::basis(2, 1), 0.99, 1000, rng), InputError);
}

TEST_CASE("push with no steps") {
  const PageRankProblem pr = three_cycle();
  const SparseVector s(3, {{0, 0.25}, {2, 0.75}});
  const PushResult res = push_cd(pr.P, s, 0.85, 0);
  CHECK(res.estimate == DenseVector(3, 0.0));
  REQUIRE(res.trace.size() == 1);
  CHECK(res.trace[0].step == 0);
  CHECK(res.trace[0].residual_inf == doctest::Approx(0.15 * 0.75).epsilon(1e-15));
  CHECK_FALSE(res.trace[0].error_2.has_value());
}

TEST_CASE("push on a single self-loop is a geometric series") {
  const double alpha = 0.85;
  const PageRankProblem pr = self_loop(alpha);
  for (std::size_t k : {1, 2, 5, 30}) {
    const PushResult res = push_cd(pr.P, pr.s, alpha, k);
    double series = 0.0;
    for (std::size_t j = 0; j < k; ++j) series += std::pow(alpha, double(j));
    CHECK(res.estimate[0] == doctest::Approx((1 - alpha) * series).epsilon(1e-14));
    CHECK(res.trace.back().residual_inf == doctest::Approx((1 - alpha) * std::pow(alpha, double(k))).epsilon(1e-13));
  }
}

TEST_CASE("push residual on the 3-cycle decays at least like 1/steps") {
  const PageRankProblem pr = three_cycle();
  const PushResult res = push_cd(pr.P, pr.s, 0.85, 10000);
  std::vector<double> steps, resid;
  for (const TracePoint& p : res.trace) {
    if (p.step >= 1) {
      steps.push_back(double(p.step));
      resid.push_back(p.residual_inf);
    }
  }
  CHECK(loglog_slope(steps, resid) <= -1.0);
}

TEST_CASE("property: push monotonicity and mass bookkeeping") {
  for (std::uint64_t g = 0; g < 4; ++g) {
    const double alpha = 0.6 + 0.1 * double(g);
    const PageRankProblem pr = build_problem(synth_bounded_outdegree(30 + 20 * g, 2 + g % 2, g), alpha, 1);
    PushSolver solver(pr.P, pr.s, alpha);
    auto invariant = [&] { return norm1(solver.estimate()) + norm1(solver.residual()) / (1 - alpha); };
    const double start = invariant();
    DenseVector prev = solver.estimate();
    for (int k = 0; k < 500; ++k) {
      const auto pick = solver.next_index();
      REQUIRE(pick.has_value());
      // argmax, lowest index on ties
      const auto& r = solver.residual();
      const std::size_t best = std::size_t(std::max_element(r.begin(), r.end()) - r.begin());
      REQUIRE(*pick == best);
      solver.step();
      for (std::size_t i = 0; i < prev.size(); ++i) {
        REQUIRE(solver.estimate()[i] >= prev[i]);
        REQUIRE(solver.residual()[i] >= -1e-12);
      }
      REQUIRE(std::abs(invariant() - start) <= 1e-10 * start);
      prev = solver.estimate();
    }
  }
}

TEST_CASE("push trace: increasing steps and a consistent error column") {
  const PageRankProblem pr = build_problem(synth_bounded_outdegree(300, 3, 9), 0.85, 0);
  const DenseVector x = reference_solve(pr.A, pr.b, 1e-14).x;
  const PushResult res = push_cd(pr.P, pr.s, 0.85, 3000, std::span<const double>(x));
  REQUIRE(res.trace.size() == 3001);
  for (std::size_t k = 1; k < res.trace.size(); ++k) CHECK(res.trace[k].step == res.trace[k - 1].step + 1);
  double direct = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) direct += (res.estimate[i] - x[i]) * (res.estimate[i] - x[i]);
  CHECK(res.trace.back().error_2.value() == doctest::Approx(std::sqrt(direct)).epsilon(1e-8));
}

}
