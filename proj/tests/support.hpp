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

// Independent oracles for the tests: dense linear algebra written out by
// hand, plus small problem generators.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "rsri/operators.hpp"
#include "rsri/vector_core.hpp"

namespace rsri::test {

using Dense = std::vector<std::vector<double>>;  // row-major

inline Dense to_rows(const ColumnMatrix& a) {
  Dense out(a.dim(), std::vector<double>(a.dim(), 0.0));
  for (std::size_t j = 0; j < a.dim(); ++j) {
    for (const Entry& e : a.column(j)) out[e.index][j] = e.value;
  }
  return out;
}

// Gaussian elimination with partial pivoting.
inline std::vector<double> dense_solve(Dense m, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(m[i][k]) > std::abs(m[p][k])) p = i;
    }
    std::swap(m[k], m[p]);
    std::swap(b[k], b[p]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= m[k][j] * x[j];
    x[k] = s / m[k][k];
  }
  return x;
}

inline std::vector<double> matvec(const Dense& m, const std::vector<double>& v) {
  std::vector<double> out(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  }
  return out;
}

// x = (1 - alpha) (I - alpha P)^-1 s by dense elimination.
inline std::vector<double> pagerank_oracle(const ColumnMatrix& P, double alpha, const std::vector<double>& s) {
  Dense m = to_rows(P);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) m[i][j] = (i == j ? 1.0 : 0.0) - alpha * m[i][j];
  }
  std::vector<double> rhs = s;
  for (double& v : rhs) v *= 1.0 - alpha;
  return dense_solve(m, rhs);
}

struct System {
  ColumnMatrix a;
  SparseVector b;
};

// A = I - G with G having random signs (or nonnegative entries), a random
// sparsity pattern, and column 1-norms scaled to exactly g_norm in the
// first column and between 0.6 and 1 times that elsewhere. b has nnz_b random nonzeros.
inline System random_contraction(std::size_t n, double g_norm, std::mt19937_64& gen, bool nonnegative = false,
                                 double density = 0.5, std::size_t nnz_b = 0) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Dense g(n, std::vector<double>(n, 0.0));
  std::vector<double> colsum(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (unif(gen) < density || i == (j + 1) % n) {
        double v = unif(gen) + 0.05;
        if (!nonnegative && unif(gen) < 0.5) v = -v;
        g[i][j] = v;
        colsum[j] += std::abs(v);
      }
    }
  }
  std::vector<double> a_cm(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    // Vary the column norms below the cap.
    const double scale = g_norm * (j == 0 ? 1.0 : 0.6 + 0.4 * unif(gen)) / colsum[j];
    for (std::size_t i = 0; i < n; ++i) a_cm[j * n + i] = (i == j ? 1.0 : 0.0) - g[i][j] * scale;
  }
  std::vector<Entry> bs;
  const std::size_t kb = nnz_b == 0 ? n : nnz_b;
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), gen);
  for (std::size_t k = 0; k < kb; ++k) {
    double v = unif(gen) + 0.1;
    if (!nonnegative && unif(gen) < 0.5) v = -v;
    bs.push_back({idx[k], v});
  }
  std::vector<SparseVector> cols;
  for (std::size_t j = 0; j < n; ++j) {
    cols.push_back(SparseVector::from_dense(std::span<const double>(a_cm.data() + j * n, n)));
  }
  return {ColumnMatrix::from_columns(cols), SparseVector::from_unsorted(n, bs)};
}

inline std::filesystem::path temp_path(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "rsri_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

inline std::filesystem::path write_text(const std::string& name, const std::string& text) {
  const auto p = temp_path(name);
  std::ofstream(p) << text;
  return p;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Binomial standard deviation of a frequency estimate.
inline double freq_sigma(double p, double draws) { return std::sqrt(std::max(p * (1.0 - p), 1e-300) / draws); }

}  // namespace rsri::test
