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

#include <stdexcept>
#include <string>

namespace rsri {

/// Bad user input: malformed files, invalid parameters, dimension mismatches.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to reach its target (non-convergence,
/// walk-length cap, divergent series).
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double residual = 0.0)
      : std::runtime_error(what), residual_(residual) {}

  /// Last residual (1-norm) observed before giving up, when meaningful.
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace rsri
