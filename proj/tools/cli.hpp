/*
 * Copyright 2026 The timebox Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace timebox::cli {

enum ExitCode : int {
  kOk = 0,
  kRejected = 1,
  kUsage = 2,
  kResource = 3,
};

/// Runs one `timebox` invocation. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "lo..hi" into lo, 2lo, 4lo, ... followed by hi; a bare number
/// yields just that value.
std::vector<std::size_t> doubling_range(const std::string& spec);

}  // namespace timebox::cli
