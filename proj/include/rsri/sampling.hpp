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

#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace rsri {

/// Seeded 64-bit random stream (std::mt19937_64).
///
/// A stream is identified by (seed, key). The engine state is initialized
/// from std::seed_seq over the four 32-bit halves of seed and key, so two
/// streams with the same identity replay the same draws on every platform
/// with a conforming standard library. Child streams for parallel trials are
/// derived with spawn_stream(); a stream object itself is single-owner.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed, std::uint64_t key = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t key() const noexcept { return key_; }

  result_type operator()() { return engine_(); }
  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }

  /// Uniform double in [0, 1) built from the top 53 bits of one draw.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n). Uses rejection, so it is exactly uniform.
  std::uint64_t below(std::uint64_t n);

  /// Human-readable description of the generator and stream derivation,
  /// recorded in experiment reports.
  static std::string_view description();

 private:
  std::uint64_t seed_;
  std::uint64_t key_;
  std::mt19937_64 engine_;
};

/// Child stream for trial `trial`; a pure function of (master.seed(),
/// master.key(), trial) that ignores how many draws the master has made.
RandomStream spawn_stream(const RandomStream& master, std::uint64_t trial);

/// Inclusion probabilities in [0, 1) summing (within 1e-9) to an integer.
class ProbabilityVector {
 public:
  static constexpr double kIntegerTolerance = 1e-9;

  /// Throws InputError when an entry lies outside [0, 1) or the sum is not
  /// within kIntegerTolerance of a nonnegative integer.
  explicit ProbabilityVector(std::vector<double> probs);

  std::size_t dim() const noexcept { return probs_.size(); }
  std::size_t sample_size() const noexcept { return m_; }
  std::span<const double> probs() const noexcept { return probs_; }

 private:
  std::vector<double> probs_;
  std::size_t m_ = 0;
};

/// Ordered pivotal sampling. Returns exactly p.sample_size() distinct indices
/// in increasing order, each index i included with probability p_i, with
/// pairwise negatively correlated inclusions. One pass over p; entries with
/// p_i = 0 are never selected and consume no randomness.
std::vector<std::size_t> pivotal_sample(const ProbabilityVector& p, RandomStream& rng);

/// Unchecked kernel behind pivotal_sample: the caller guarantees each entry
/// is in [0, 1) and that the entries sum to m up to rounding. Returned
/// positions are increasing.
std::vector<std::size_t> pivotal_select(std::span<const double> probs, std::size_t m,
                                        RandomStream& rng);

}  // namespace rsri
