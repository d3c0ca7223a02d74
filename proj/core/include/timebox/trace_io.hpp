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

#include <filesystem>
#include <iosfwd>

#include "timebox/trace.hpp"

namespace timebox {

/// Current recorder version written into trace headers.
inline constexpr const char* kRecorderVersion = "timebox-0.1";

/**
 * TBX1 trace files: line-delimited JSON. The first line is the header
 *
 *   {"tbx":1,"model":"queue","threads":3,"seed":42}
 *
 * and each following line is one action
 *
 *   {"t":0,"op":"Enqueue","args":[1],"s":100,"e":180,"r":150}
 *
 * Records may appear in any order; each thread's sequence is recovered by a
 * stable sort on start time. Blank lines are ignored.
 *
 * read_trace throws ParseError (with line number) on malformed input and
 * ValidationError when the recovered trace breaks a trace invariant.
 */
Trace read_trace(std::istream& in);
void write_trace(const Trace& tr, std::ostream& out);

Trace read_trace_file(const std::filesystem::path& path);
void write_trace_file(const Trace& tr, const std::filesystem::path& path);

}  // namespace timebox
