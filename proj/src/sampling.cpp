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
#include "rsri/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

#include "rsri/errors.hpp"
#include "rsri/vector_core.hpp"

namespace rsri {

namespace {

std::seed_seq make_seed_seq(std::uint64_t seed, std::uint64_t key) {
  return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
}

// splitmix64 output function
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t key) : seed_(seed), key_(key) {
  auto seq = make_seed_seq(seed, key);
  engine_.seed(seq);
}

std::uint64_t RandomStream::below(std::uint64_t n) {
  if (n == 0) throw InputError("RandomStream::below: empty range");
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = engine_();
    if (r >= threshold) return r % n;
  }
}

std::string_view RandomStream::description() {
  return "mt19937_64 seeded by seed_seq(seed,key); "
         "trial key = splitmix64(key ^ 0x9e3779b97f4a7c15*(trial+1))";
}

RandomStream spawn_stream(const RandomStream& master, std::uint64_t trial) {
  return RandomStream(master.seed(), mix64(master.key() ^ (0x9e3779b97f4a7c15ULL * (trial + 1))));
}

ProbabilityVector::ProbabilityVector(std::vector<double> probs) : probs_(std::move(probs)) {
  CompensatedSum total;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    const double p = probs_[i];
    if (!(p >= 0.0 && p < 1.0)) {
      throw InputError(fmt::format("inclusion probability p[{}] = {} is outside [0, 1)", i, p));
    }
    total += p;
  }
  const double sum = total.value();
  const double rounded = std::round(sum);
  if (std::abs(sum - rounded) > kIntegerTolerance) {
    throw InputError(fmt::format("inclusion probabilities sum to {:.17g}, not an integer", sum));
  }
  m_ = static_cast<std::size_t>(rounded);
}

std::vector<std::size_t> pivotal_sample(const ProbabilityVector& p, RandomStream& rng) {
  return pivotal_select(p.probs(), p.sample_size(), rng);
}

// Sequential pivotal method: a single "carry" unit holds the unresolved
// fractional mass a of everything scanned so far. Each new unit j duels with
// the carry:
//   a + p_j < 1: the pair merges; j becomes the carry w.p. p_j / (a + p_j).
//   a + p_j >= 1: one of the two is selected (the carry w.p.
//     (1 - p_j) / (2 - a - p_j)), the other carries a + p_j - 1.
// The carry mass is recomputed as (compensated running sum) - (#selected),
// which keeps it accurate to one ulp of m regardless of the vector length.
std::vector<std::size_t> pivotal_select(std::span<const double> probs, std::size_t m,
                                        RandomStream& rng) {
  std::vector<std::size_t> selected;
  if (m == 0) return selected;
  selected.reserve(m);

  CompensatedSum cumulative;
  bool have_carry = false;
  std::size_t carry = 0;

  for (std::size_t j = 0; j < probs.size() && selected.size() < m; ++j) {
    const double p = probs[j];
    if (p <= 0.0) continue;
    cumulative += p;
    if (!have_carry) {
      carry = j;
      have_carry = true;
      continue;
    }
    const double s = cumulative.value() - static_cast<double>(selected.size());
    if (s < 1.0) {
      if (rng.uniform() * s < p) carry = j;
    } else {
      if (rng.uniform() * (2.0 - s) < 1.0 - p) {
        selected.push_back(carry);
        carry = j;
      } else {
        selected.push_back(j);
      }
      if (s - 1.0 <= 0.0) have_carry = false;
    }
  }
  // Rounding can leave the last unit of mass just below 1; complete it.
  if (selected.size() < m && have_carry) selected.push_back(carry);
  if (selected.size() != m) {
    throw std::logic_error(fmt::format("pivotal_select: probabilities do not sum to {}", m));
  }
  std::sort(selected.begin(), selected.end());
  return selected;
}

}  // namespace rsri
