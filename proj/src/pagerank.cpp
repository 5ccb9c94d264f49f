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
#include "rsri/pagerank.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <fmt/core.h>

#include "rsri/errors.hpp"
#include "rsri/sampling.hpp"

namespace rsri {

void EdgeList::add_edge(std::int64_t from, std::int64_t to) {
  auto intern = [this](std::int64_t label) {
    auto [it, inserted] = id_map.try_emplace(label, node_count);
    if (inserted) {
      labels.push_back(label);
      ++node_count;
    }
    return it->second;
  };
  const std::size_t u = intern(from);
  const std::size_t v = intern(to);
  edges.emplace_back(u, v);
}

std::size_t EdgeList::index_of(std::int64_t label) const {
  const auto it = id_map.find(label);
  if (it == id_map.end()) throw InputError(fmt::format("node label {} does not appear in the graph", label));
  return it->second;
}

namespace {

std::int64_t parse_label(const std::string& token, std::size_t line_no) {
  std::int64_t value = 0;
  const char* first = token.data();
  const char* last = first + token.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw InputError(fmt::format("edge list line {}: '{}' is not an integer node label", line_no, token));
  }
  return value;
}

}  // namespace

EdgeList load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open edge list '{}'", path.string()));
  EdgeList out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string from, to;
    if (!(tokens >> from)) continue;
    if (from.front() == '#') continue;
    if (!(tokens >> to)) {
      throw InputError(fmt::format("edge list line {}: expected two node labels", line_no));
    }
    out.add_edge(parse_label(from, line_no), parse_label(to, line_no));
  }
  if (in.bad()) throw InputError(fmt::format("read error in edge list '{}'", path.string()));
  return out;
}

void check_column_stochastic(const ColumnMatrix& P, double tol) {
  for (std::size_t j = 0; j < P.dim(); ++j) {
    CompensatedSum sum;
    P.for_each_in_column(j, [&](std::size_t i, double v) {
      if (v < 0.0) throw InputError(fmt::format("transition matrix entry ({}, {}) is negative", i, j));
      sum += v;
    });
    if (std::abs(sum.value() - 1.0) > tol) {
      throw InputError(fmt::format("column {} of the transition matrix sums to {:.17g}, not 1", j, sum.value()));
    }
  }
}

PageRankProblem make_problem(ColumnMatrix P, double alpha, std::size_t source) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError(fmt::format("alpha = {} must lie in (0, 1)", alpha));
  if (source >= P.dim()) throw InputError(fmt::format("source {} is out of range for {} nodes", source, P.dim()));
  check_column_stochastic(P);

  const std::size_t n = P.dim();
  std::vector<SparseVector> a_cols;
  a_cols.reserve(n);
  for (std::size_t j = 0; j < n; ++j) a_cols.push_back(combine(1.0, SparseVector::basis(n, j), -alpha, P.column(j)));

  PageRankProblem prob;
  prob.P = std::move(P);
  prob.alpha = alpha;
  prob.source = source;
  prob.s = SparseVector::basis(n, source);
  prob.A = ColumnMatrix::from_columns(a_cols);
  prob.b = SparseVector::basis(n, source, 1.0 - alpha);
  return prob;
}

PageRankProblem build_problem(const EdgeList& edges, double alpha, std::size_t source) {
  const std::size_t n = edges.node_count;
  if (n == 0) throw InputError("graph has no nodes");
  if (source >= n) throw InputError(fmt::format("source {} is out of range for {} nodes", source, n));

  std::vector<std::vector<std::size_t>> out(n);
  for (const auto& [u, v] : edges.edges) {
    if (u >= n || v >= n) throw InputError("edge endpoint out of range");
    out[u].push_back(v);
  }
  std::vector<SparseVector> cols;
  cols.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    auto& nbrs = out[j];
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    if (nbrs.empty()) {
      cols.push_back(SparseVector::basis(n, source));
      continue;
    }
    const double w = 1.0 / static_cast<double>(nbrs.size());
    std::vector<Entry> entries;
    entries.reserve(nbrs.size());
    for (std::size_t i : nbrs) entries.push_back({i, w});
    cols.emplace_back(n, std::move(entries));
  }
  return make_problem(ColumnMatrix::from_columns(cols), alpha, source);
}

EdgeList synth_bounded_outdegree(std::size_t n, std::size_t q, std::uint64_t seed) {
  if (n < 1) throw InputError("synthetic graph needs at least one node");
  if (q < 2) throw InputError("synthetic graph needs out-degree bound q >= 2");
  RandomStream rng(seed, 0x67726170685f7175ULL);
  EdgeList out;
  out.node_count = n;
  out.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.labels[i] = static_cast<std::int64_t>(i);
    out.id_map.emplace(static_cast<std::int64_t>(i), i);
  }
  std::vector<std::size_t> picked;
  for (std::size_t u = 0; u < n; ++u) {
    const std::size_t degree = std::min<std::size_t>(1 + rng.below(q), n);
    picked.clear();
    while (picked.size() < degree) {
      const std::size_t v = rng.below(n);
      if (std::find(picked.begin(), picked.end(), v) == picked.end()) picked.push_back(v);
    }
    std::sort(picked.begin(), picked.end());
    for (std::size_t v : picked) out.edges.emplace_back(u, v);
  }
  return out;
}

}  // namespace rsri
