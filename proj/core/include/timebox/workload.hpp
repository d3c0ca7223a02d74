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

#include <optional>
#include <string>

#include "timebox/fuzz.hpp"
#include "timebox/model.hpp"
#include "timebox/structures.hpp"
#include "timebox/trace.hpp"

namespace timebox {

struct WorkloadConfig {
  std::string model;
  std::size_t threads = 1;
  std::size_t ops_per_thread = 0;
  std::uint64_t seed = 0;
  std::size_t value_universe_size = 16;
  std::optional<BugId> bug;
  std::optional<fuzz::JitterConfig> jitter;
};

/**
 * Fuzzes the built-in reference structure for `cfg.model` and returns the
 * recorded trace:
 *
 *   queue      LockQueue   Enqueue / Dequeue (DequeueEmpty when empty)
 *   omaprange  SnapshotMap Insert / Delete / Find / RangeCount
 *   ppfifo     SegQueue    Enqueue / EnqueueBulk / Dequeue / DequeueBulk
 *
 * Throws std::invalid_argument for an unknown model, a bug that belongs to
 * another model, or a malformed configuration.
 */
Trace record_run(const WorkloadConfig& cfg);

/**
 * Source for a fuzzer skeleton: one stub per action in `spec`'s signature,
 * each returning unsupported() until filled in, plus the main() that runs
 * the workers and writes a TBX1 trace. Each stub body sits between
 * `// BEGIN STUB <Op>` and `// END STUB <Op>` lines.
 */
std::string emit_fuzzer_template(const ModelSpec& spec);

}  // namespace timebox
