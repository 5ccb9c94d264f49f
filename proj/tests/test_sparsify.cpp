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

#include <algorithm>
#include <numeric>
#include <random>

#include "rsri/errors.hpp"
#include "rsri/sparsify.hpp"
#include "support.hpp"

using namespace rsri;

namespace {

const SparseVector kExample(4, {{0, 4.0}, {1, 2.0}, {2, 1.0}, {3, 1.0}});

// Straight from the definition: grow the exact set while the next largest
// entry reaches (remaining mass) / (m - q), recomputing the mass each time.
struct NaiveSplit {
  std::vector<std::size_t> exact;
  std::vector<double> probs;  // dense, 0 on the exact set
};

NaiveSplit naive_split(const SparseVector& v, std::size_t m) {
  const DenseVector d = v.to_dense();
  std::vector<std::size_t> order;
  for (const Entry& e : v) order.push_back(e.index);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return std::abs(d[a]) > std::abs(d[b]); });
  NaiveSplit out;
  out.probs.assign(d.size(), 0.0);
  if (order.size() <= m) {
    out.exact = order;
    return out;
  }
  std::size_t q = 0;
  for (;;) {
    double rest = 0.0;
    for (std::size_t k = q; k < order.size(); ++k) rest += std::abs(d[order[k]]);
    if (q < m && std::abs(d[order[q]]) * static_cast<double>(m - q) >= rest) {
      out.exact.push_back(order[q++]);
      continue;
    }
    for (std::size_t k = q; k < order.size(); ++k) {
      out.probs[order[k]] = static_cast<double>(m - q) * std::abs(d[order[k]]) / rest;
    }
    return out;
  }
}

SparseVector random_vector(std::size_t n, std::mt19937_64& gen, bool nonnegative = false) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Entry> e;
  for (std::size_t i = 0; i < n; ++i) {
    if (u(gen) < 0.1) continue;
    // Heavy-tailed magnitudes so exact sets of various sizes occur.
    double x = std::pow(u(gen) + 1e-3, 3.0);
    if (u(gen) < 0.1) x = 1.0;  // ties
    if (!nonnegative && u(gen) < 0.5) x = -x;
    e.push_back({i, x});
  }
  return SparseVector::from_unsorted(n, e);
}

}  // namespace

TEST_SUITE("sparsify") {

TEST_CASE("preservation split of the worked vector") {
  const PreservationSplit s = preservation_split(kExample, 2);
  CHECK(s.exact == std::vector<std::size_t>{0});
  CHECK(s.q() == 1);
  CHECK(s.sample_budget == 1);
  CHECK(s.residual_indices == std::vector<std::size_t>{1, 2, 3});
  REQUIRE(s.residual_probs.size() == 3);
  CHECK(s.residual_probs[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(s.residual_probs[1] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(s.residual_probs[2] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(s.residual_mass == 4.0);
}

TEST_CASE("split when everything fits and when nothing qualifies") {
  const PreservationSplit all = preservation_split(kExample, 4);
  CHECK(all.exact == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(all.residual_indices.empty());
  CHECK(all.sample_budget == 0);

  const std::size_t n = 10;
  const SparseVector uniform = SparseVector::from_dense(std::vector<double>(n, 0.3));
  const PreservationSplit u = preservation_split(uniform, 3);
  CHECK(u.exact.empty());
  REQUIRE(u.residual_probs.size() == n);
  for (double p : u.residual_probs) CHECK(p == doctest::Approx(0.3).epsilon(1e-14));

  CHECK_THROWS_AS(preservation_split(kExample, 0), InputError);
  CHECK(preservation_split(SparseVector(5), 2).exact.empty());
}

TEST_CASE("sparsify of the worked vector") {
  RandomStream rng(21);
  const double draws = 100000;
  std::vector<double> kept(4, 0.0);
  for (int k = 0; k < draws; ++k) {
    const SparseVector phi = sparsify(kExample, 2, rng);
    REQUIRE(phi.nnz() == 2);
    REQUIRE(phi[0] == 4.0);
    REQUIRE(norms(phi).one == 8.0);
    for (const Entry& e : phi) {
      if (e.index == 0) continue;
      REQUIRE(e.value == 4.0);
      kept[e.index] += 1;
    }
  }
  const std::vector<double> p = {1.0, 0.5, 0.25, 0.25};
  for (std::size_t i = 1; i < 4; ++i) {
    CHECK(std::abs(kept[i] / draws - p[i]) <= 4 * test::freq_sigma(p[i], draws));
  }
}

TEST_CASE("sparsify is the identity when nnz <= m") {
  RandomStream rng(22);
  for (std::size_t m = 4; m < 7; ++m) CHECK(sparsify(kExample, m, rng) == kExample);
  CHECK(sparsify(SparseVector(3), 1, rng).empty());
}

TEST_CASE("worked vector is unbiased") {
  RandomStream rng(23);
  const double draws = 100000;
  std::vector<double> sum(4, 0.0);
  for (int k = 0; k < draws; ++k) {
    for (const Entry& e : sparsify(kExample, 2, rng)) sum[e.index] += e.value;
  }
  const std::vector<double> p = {1.0, 0.5, 0.25, 0.25};
  const DenseVector v = kExample.to_dense();
  for (std::size_t i = 0; i < 4; ++i) {
    const double sigma = std::abs(v[i]) * std::sqrt((1.0 / p[i] - 1.0) / draws);
    CHECK(std::abs(sum[i] / draws - v[i]) <= 4 * sigma + 1e-12);
  }
}

TEST_CASE("L2 bound values") {
  CHECK(sparsify_l2_bound(kExample, 2) == 16.0);
  CHECK(sparsify_l2_bound(kExample, 4) == 0.0);
  CHECK(sparsify_l2_bound(kExample, 9) == 0.0);
  const std::size_t n = 8;
  const SparseVector uniform = SparseVector::from_dense(std::vector<double>(n, 1.0 / n));
  CHECK(sparsify_l2_bound(uniform, 1) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("property: split matches the definition") {
  std::mt19937_64 gen(24);
  for (int trial = 0; trial < 300; ++trial) {
    const SparseVector v = random_vector(1 + trial % 40, gen);
    const std::size_t m = 1 + trial % 9;
    const PreservationSplit s = preservation_split(v, m);
    const NaiveSplit ref = naive_split(v, m);
    REQUIRE(s.exact == ref.exact);
    CHECK(s.q() <= m);
    const DenseVector d = v.to_dense();
    double total = 0.0;
    for (std::size_t k = 0; k < s.residual_indices.size(); ++k) {
      const double p = s.residual_probs[k];
      CHECK(p < 1.0);
      CHECK(p == doctest::Approx(ref.probs[s.residual_indices[k]]).epsilon(1e-12));
      total += p;
      for (std::size_t i : s.exact) CHECK(std::abs(d[i]) >= std::abs(d[s.residual_indices[k]]));
    }
    if (!s.residual_indices.empty()) CHECK(std::abs(total - double(m - s.q())) <= 1e-9);
  }
}

TEST_CASE("property: every draw keeps the 1-norm, sparsity and support") {
  std::mt19937_64 gen(25);
  RandomStream rng(25);
  for (int trial = 0; trial < 200; ++trial) {
    const SparseVector v = random_vector(1 + trial % 32, gen);
    const std::size_t m = 1 + trial % 8;
    const double one = norms(v).one;
    for (int k = 0; k < 200; ++k) {
      const SparseVector phi = sparsify(v, m, rng);
      REQUIRE(phi.nnz() <= m);
      REQUIRE(std::abs(norms(phi).one - one) <= 1e-12 * one);
      for (const Entry& e : phi) {
        REQUIRE(v[e.index] != 0.0);
        REQUIRE(std::signbit(e.value) == std::signbit(v[e.index]));
      }
    }
  }
}

TEST_CASE("property: unbiased, within the L2 bound and the inner-product bounds") {
  std::mt19937_64 gen(26);
  RandomStream rng(26);
  const int draws = 20000;
  for (int trial = 0; trial < 8; ++trial) {
    const bool nonnegative = trial % 2 == 1;
    const SparseVector v = random_vector(6 + trial, gen, nonnegative);
    const std::size_t m = 1 + trial % 4;
    const DenseVector d = v.to_dense();
    const std::size_t n = d.size();
    std::vector<double> f(n);
    for (double& x : f) x = (gen() & 1) ? 1.0 : -1.0;
    std::vector<double> fpos(n);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (double& x : fpos) x = unit(gen);

    std::vector<double> sum(n, 0.0);
    std::vector<double> err2, ferr2, fposerr2;
    for (int k = 0; k < draws; ++k) {
      const DenseVector phi = sparsify(v, m, rng).to_dense();
      double e2 = 0.0, fe = 0.0, fpe = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        sum[i] += phi[i];
        const double diff = phi[i] - d[i];
        e2 += diff * diff;
        fe += f[i] * diff;
        fpe += fpos[i] * diff;
      }
      err2.push_back(e2);
      ferr2.push_back(fe * fe);
      fposerr2.push_back(fpe * fpe);
    }
    // Var(phi_i) = v_i^2 (1/p_i - 1), with p_i = 1 on the exact set.
    const NaiveSplit ref = naive_split(v, m);
    for (std::size_t i = 0; i < n; ++i) {
      const double p = ref.probs[i] > 0.0 ? ref.probs[i] : 1.0;
      const double sigma = std::abs(d[i]) * std::sqrt((1.0 / p - 1.0) / draws);
      CHECK(std::abs(sum[i] / draws - d[i]) <= 4 * sigma + 1e-12 * std::abs(d[i]));
    }
    auto mean_and_sigma = [&](const std::vector<double>& xs) {
      const double mu = std::accumulate(xs.begin(), xs.end(), 0.0) / draws;
      double s2 = 0.0;
      for (double x : xs) s2 += (x - mu) * (x - mu);
      return std::pair{mu, std::sqrt(s2 / (draws - 1) / draws)};
    };
    const double bound = sparsify_l2_bound(v, m);
    const auto [mse, mse_sigma] = mean_and_sigma(err2);
    CHECK(mse <= bound * 1.05 + 4 * mse_sigma + 1e-12);
    const auto [fmse, fmse_sigma] = mean_and_sigma(ferr2);
    CHECK(fmse <= 2 * bound * 1.05 + 4 * fmse_sigma + 1e-12);
    if (nonnegative) {
      // f >= 0 and v >= 0: no factor 2.
      const auto [pmse, psigma] = mean_and_sigma(fposerr2);
      CHECK(pmse <= bound * 1.05 + 4 * psigma + 1e-12);
    }
  }
}

}
