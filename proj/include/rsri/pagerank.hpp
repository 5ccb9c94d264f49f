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
#include <unordered_map>
#include <utility>
#include <vector>

#include "rsri/operators.hpp"
#include "rsri/vector_core.hpp"

namespace rsri {

/// Directed graph with labels remapped to 0..node_count-1 in order of first
/// appearance. Parallel edges are kept here and collapsed by build_problem.
struct EdgeList {
  std::size_t node_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (from, to)
  std::unordered_map<std::int64_t, std::size_t> id_map;     // label -> index
  std::vector<std::int64_t> labels;                         // index -> label

  /// Appends an edge between two labels, assigning new indices as needed.
  void add_edge(std::int64_t from, std::int64_t to);
  /// Index of a label; throws InputError if the label never appeared.
  std::size_t index_of(std::int64_t label) const;
};

/// Whitespace-separated "from to" lines; '#' starts a comment line, blank
/// lines are skipped and extra tokens after the second are ignored. Throws
/// InputError with the line number on a non-integer token or a short line.
EdgeList load_edge_list(const std::filesystem::path& path);

/// Personalized PageRank system x = alpha P x + (1 - alpha) s with s = e_source.
struct PageRankProblem {
  ColumnMatrix P;  // column-stochastic transition matrix
  double alpha = 0.85;
  std::size_t source = 0;
  SparseVector s;
  ColumnMatrix A;  // I - alpha P
  SparseVector b;  // (1 - alpha) s

  std::size_t dim() const noexcept { return P.dim(); }
};

/// Column j of P is uniform over the distinct out-neighbors of j; columns of
/// dangling nodes become e_source.
PageRankProblem build_problem(const EdgeList& edges, double alpha, std::size_t source);

/// Same system from an explicit transition matrix. Throws InputError when a
/// column of P is negative or does not sum to 1 within 1e-9.
PageRankProblem make_problem(ColumnMatrix P, double alpha, std::size_t source);

/// Random graph in which every node has between 1 and q distinct
/// out-neighbors (self-loops allowed), so no column of P has more than q
/// nonzeros. Deterministic in seed.
EdgeList synth_bounded_outdegree(std::size_t n, std::size_t q, std::uint64_t seed);

/// Throws InputError unless every column of P is nonnegative and sums to 1
/// within tol.
void check_column_stochastic(const ColumnMatrix& P, double tol = 1e-9);

}  // namespace rsri
