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
#include "rsri/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <thread>

#include <fmt/core.h>
#include <fmt/os.h>

#include "rsri/baselines.hpp"
#include "rsri/errors.hpp"

namespace rsri {

std::size_t trial_threads() {
  if (const char* env = std::getenv("RSRI_THREADS"); env != nullptr && *env != '\0') {
    std::size_t n = 0;
    const char* end = env + std::char_traits<char>::length(env);
    const auto [ptr, ec] = std::from_chars(env, end, n);
    if (ec != std::errc() || ptr != end || n == 0) {
      throw InputError(fmt::format("RSRI_THREADS = '{}' is not a positive integer", env));
    }
    return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_trials(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min(trial_threads(), count);
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < count; k = next++) {
      try {
        body(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

namespace {

double distance2(const SparseVector& v, std::span<const double> x) {
  DenseVector d = v.to_dense();
  double sum = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) sum += (d[i] - x[i]) * (d[i] - x[i]);
  return sum;
}

// Bias and spread of a set of estimates, reduced in trial order.
struct Spread {
  double mse = 0.0;
  double bias_norm = 0.0;
  double variance = 0.0;
};

Spread spread(const std::vector<SparseVector>& estimates, std::span<const double> oracle) {
  const std::size_t dim = oracle.size();
  DenseVector mean(dim, 0.0), m2(dim, 0.0);
  double mse = 0.0;
  for (std::size_t k = 0; k < estimates.size(); ++k) {
    const DenseVector v = estimates[k].to_dense();
    const double n = static_cast<double>(k + 1);
    for (std::size_t i = 0; i < dim; ++i) {
      const double delta = v[i] - mean[i];
      mean[i] += delta / n;
      m2[i] += delta * (v[i] - mean[i]);
    }
    mse += distance2(estimates[k], oracle);
  }
  Spread out;
  const double trials = static_cast<double>(estimates.size());
  out.mse = mse / trials;
  double bias2 = 0.0, var = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    bias2 += (mean[i] - oracle[i]) * (mean[i] - oracle[i]);
    var += m2[i];
  }
  out.bias_norm = std::sqrt(bias2);
  out.variance = estimates.size() > 1 ? var / (trials - 1.0) : 0.0;
  return out;
}

}  // namespace

RmseEstimate estimate_rmse(const ColumnMatrix& a, const SparseVector& b, const RsriConfig& cfg,
                           std::span<const double> oracle) {
  cfg.validate();
  if (cfg.trials < 2) throw InputError("estimate_rmse needs at least 2 trials");
  if (oracle.size() != a.dim()) throw InputError("oracle dimension does not match the system");
  const auto start = std::chrono::steady_clock::now();

  const RandomStream master(cfg.seed);
  std::vector<SparseVector> estimates(cfg.trials);
  RmseEstimate out;
  out.trial_accesses.assign(cfg.trials, 0);
  parallel_trials(cfg.trials, [&](std::size_t k) {
    RandomStream rng = spawn_stream(master, k);
    SolveReport rep = rsri(a, b, cfg, rng);
    estimates[k] = std::move(rep.estimate);
    out.trial_accesses[k] = rep.column_accesses;
  });
  const Spread s = spread(estimates, oracle);
  out.rmse = std::sqrt(s.mse);
  out.bias_norm = s.bias_norm;
  out.variance_est = s.variance;
  out.wall_clock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::size_t matched_walks(std::size_t accesses, double alpha) {
  const double walks = std::round(static_cast<double>(accesses) * (1.0 - alpha) / alpha);
  return std::max<std::size_t>(1, static_cast<std::size_t>(walks));
}

RandomStream baseline_master(std::uint64_t seed) { return RandomStream(seed, 0x6d6f6e746563726cULL); }

std::vector<SweepRow> run_sweep(const ColumnMatrix& a, const SparseVector& b, const RsriConfig& base_cfg,
                                std::span<const std::size_t> m_list, std::span<const double> oracle,
                                const SweepOptions& options) {
  if (m_list.empty()) throw InputError("sweep needs at least one sparsity level");
  for (std::size_t k = 1; k < m_list.size(); ++k) {
    if (m_list[k] <= m_list[k - 1]) throw InputError("sweep sparsity levels must be strictly increasing");
  }
  std::vector<SweepRow> rows;
  rows.reserve(m_list.size());
  for (std::size_t m : m_list) {
    RsriConfig cfg = base_cfg;
    cfg.m = m;
    const RmseEstimate est = estimate_rmse(a, b, cfg, oracle);
    SweepRow row;
    row.m = m;
    row.rmse = est.rmse;
    row.bias_norm = est.bias_norm;
    row.variance_est = est.variance_est;
    row.wall_clock_s = options.timing ? est.wall_clock_s : 0.0;
    for (std::size_t acc : est.trial_accesses) row.column_accesses += acc;

    if (options.baseline) {
      const SurferBaseline& base = *options.baseline;
      const RandomStream master = baseline_master(cfg.seed);
      std::vector<SparseVector> estimates(cfg.trials);
      parallel_trials(cfg.trials, [&](std::size_t k) {
        RandomStream rng = spawn_stream(master, k);
        estimates[k] =
            mc_surfer(base.P, base.s, base.alpha, matched_walks(est.trial_accesses[k], base.alpha), rng).estimate;
      });
      double mse = 0.0;
      for (const auto& e : estimates) mse += distance2(e, oracle);
      row.mc_rmse = std::sqrt(mse / static_cast<double>(cfg.trials));
    }
    rows.push_back(row);
  }
  return rows;
}

std::string sweep_csv(std::span<const SweepRow> rows, std::span<const std::string> comments) {
  std::string out;
  for (const std::string& c : comments) out += fmt::format("# {}\n", c);
  out += kSweepHeader;
  out += '\n';
  for (const SweepRow& r : rows) {
    out += fmt::format("{},{:.17g},{:.17g},{:.17g},{},{:.17g},{}\n", r.m, r.rmse, r.bias_norm, r.variance_est,
                       r.mc_rmse ? fmt::format("{:.17g}", *r.mc_rmse) : std::string(), r.wall_clock_s,
                       r.column_accesses);
  }
  return out;
}

std::string tail_csv(std::span<const double> tails) {
  std::string out = "i,tail\n";
  for (std::size_t i = 0; i < tails.size(); ++i) out += fmt::format("{},{:.17g}\n", i, tails[i]);
  return out;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InputError("loglog_slope: x and y differ in length");
  double sx = 0, sy = 0, sxx = 0, sxy = 0, n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0 && std::isfinite(x[i]) && std::isfinite(y[i]))) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    n += 1;
  }
  const double denom = n * sxx - sx * sx;
  if (n < 2 || denom <= 0.0) throw InputError("loglog_slope: need two points with distinct positive x");
  return (n * sxy - sx * sy) / denom;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  try {
    {
      auto file = fmt::output_file(tmp.string());
      file.print("{}", content);
      file.close();
    }
    std::filesystem::rename(tmp, path);
  } catch (const std::exception& e) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw InputError(fmt::format("cannot write '{}': {}", path.string(), e.what()));
  }
}

}  // namespace rsri
