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

#include <filesystem>
#include <string>

#include "rsri/errors.hpp"
#include "rsri/operators.hpp"
#include "rsri/vector_core.hpp"

namespace rsri {

class MatrixMarketError : public InputError {
 public:
  enum class Kind {
    Io,
    MalformedHeader,
    Unsupported,
    ValuesRequired,
    NonSquare,
    MalformedEntry,
    IndexOutOfRange,
  };

  MatrixMarketError(Kind kind, const std::string& what) : InputError(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// Matrices: "%%MatrixMarket matrix coordinate real general" (integer values
// are accepted as real). Indices in the file are 1-based; duplicate (i, j)
// entries are summed.
ColumnMatrix load_matrix_market(const std::filesystem::path& path);
void save_matrix_market(const std::filesystem::path& path, const ColumnMatrix& a);

// Vectors: an N x 1 matrix in either coordinate or array format.
SparseVector load_matrix_market_vector(const std::filesystem::path& path);
void save_matrix_market_vector(const std::filesystem::path& path, const SparseVector& v);

}  // namespace rsri
