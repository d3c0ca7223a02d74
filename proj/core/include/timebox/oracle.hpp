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

#include <cstddef>

#include "timebox/errors.hpp"
#include "timebox/model.hpp"
#include "timebox/trace.hpp"

namespace timebox {

enum class OracleVerdict { Accept, Reject };

inline constexpr std::size_t kDefaultOracleBound = 10;

/**
 * Brute-force linearizability decision for small traces.
 *
 * Enumerates every total order of the trace's actions that keeps each
 * thread's order and the real-time order (a before b whenever
 * a.end_ns < b.start_ns), replaying each through `spec` from every initial
 * state. Accepts iff some order replays with every step enabled.
 *
 * Throws ResourceError when the trace holds more than `bound` actions.
 */
OracleVerdict oracle_check(const Trace& tr, const ModelSpec& spec,
                           std::size_t bound = kDefaultOracleBound);

}  // namespace timebox
