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

namespace rsri {

/// Entry point of the rsri command-line tool. Returns 0 on success, 1 on bad
/// input or usage, 2 when a numerical procedure fails to converge.
int cli_main(int argc, char** argv);

}  // namespace rsri
