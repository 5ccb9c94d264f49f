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
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rsri/operators.hpp"
#include "rsri/solvers.hpp"
#include "rsri/vector_core.hpp"

namespace rsri {

/// Worker count for trial loops: RSRI_THREADS if set (positive integer),
/// hardware concurrency otherwise.
std::size_t trial_threads();

/// Runs body(k) for k in [0, count) on up to trial_threads() workers. If
/// several calls throw, the exception of the lowest k is rethrown.
void parallel_trials(std::size_t count, const std::function<void(std::size_t)>& body);

struct RmseEstimate {
  double rmse = 0.0;          // sqrt(mean_k ||Xbar_k - x||^2)
  double bias_norm = 0.0;     // ||mean_k Xbar_k - x||
  double variance_est = 0.0;  // sum_k ||Xbar_k - mean||^2 / (trials - 1)
  std::vector<std::size_t> trial_accesses;
  double wall_clock_s = 0.0;
};

/// Trial k runs rsri() with spawn_stream(RandomStream(cfg.seed), k). Needs
/// trials >= 2. Norms are Euclidean.
RmseEstimate estimate_rmse(const ColumnMatrix& a, const SparseVector& b, const RsriConfig& cfg,
                           std::span<const double> oracle);

/// Monte Carlo surfer baseline for the matched-cost column.
struct SurferBaseline {
  ColumnMatrix P;
  SparseVector s;
  double alpha = 0.85;
};

/// Number of surfers whose expected column reads, alpha / (1 - alpha) per
/// surfer, equal the given RSRI column reads: max(1, round(accesses (1-alpha)/alpha)).
std::size_t matched_walks(std::size_t accesses, double alpha);

/// Surfer streams derive from this master so they never overlap RSRI's.
RandomStream baseline_master(std::uint64_t seed);

struct SweepRow {
  std::size_t m = 0;
  double rmse = 0.0;
  double bias_norm = 0.0;
  double variance_est = 0.0;
  std::optional<double> mc_rmse;
  double wall_clock_s = 0.0;
  std::size_t column_accesses = 0;  // summed over trials
};

struct SweepOptions {
  std::optional<SurferBaseline> baseline;
  bool timing = true;  // false writes 0 to wall_clock_s so output is reproducible
};

/// One estimate_rmse per m (with base_cfg.m replaced). m_list must be
/// nonempty and strictly increasing. When a baseline is given, trial k also
/// runs matched_walks(accesses of trial k) surfers on
/// spawn_stream(baseline_master(seed), k), and mc_rmse is their RMSE.
std::vector<SweepRow> run_sweep(const ColumnMatrix& a, const SparseVector& b, const RsriConfig& base_cfg,
                                std::span<const std::size_t> m_list, std::span<const double> oracle,
                                const SweepOptions& options = {});

inline constexpr std::string_view kSweepHeader = "m,rmse,bias_norm,variance_est,mc_rmse,wall_clock_s,column_accesses";

/// Sweep CSV: each comment line prefixed with "# ", then the header and one
/// row per m. Doubles use 17 significant digits; an absent mc_rmse is empty.
std::string sweep_csv(std::span<const SweepRow> rows, std::span<const std::string> comments = {});

/// "i,tail" rows for i = 0..nnz of the decreasing-rearrangement tail sums.
std::string tail_csv(std::span<const double> tails);

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

/// Log-log line plot in an 800x600 SVG, one polyline per series. Points with
/// a nonpositive or non-finite coordinate are skipped.
std::string loglog_svg(std::string_view title, std::string_view x_label, std::string_view y_label,
                       std::span<const PlotSeries> series);

/// Least-squares slope of log(y) against log(x) over points with x, y > 0.
/// Throws InputError with fewer than two usable points.
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Writes to a sibling temporary file and renames it into place, so the
/// target is either fully written or untouched.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace rsri
