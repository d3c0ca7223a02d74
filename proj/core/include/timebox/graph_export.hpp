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
#include <string>
#include <vector>

#include "timebox/linearizer.hpp"

namespace timebox {

/**
 * SGX1 state-graph export, a single JSON document:
 *
 *   {"sgx":1, "model":..., "verdict":"accepted"|"rejected", "max_depth":N,
 *    "nodes":[{"id","vt":[..],"depth","state"}..],
 *    "edges":[{"src","dst","t","i","op","args"}..],
 *    "roots":[..], "counterexamples":[{"path":[[t,i]..],"stuck":[[t,i]..]}..],
 *    "trace":[<TBX1 action records>..]}
 */
void export_graph(const StateGraph& g, const Trace& tr, const Verdict& v, std::string_view model,
                  std::ostream& out);
void export_graph_file(const StateGraph& g, const Trace& tr, const Verdict& v,
                       std::string_view model, const std::filesystem::path& path);

/// An SGX1 document read back into memory.
struct GraphDocument {
  std::string model;
  Outcome verdict = Outcome::Rejected;
  std::size_t max_depth = 0;
  StateGraph graph;
  std::vector<TimeboxedAction> actions;
  std::vector<std::vector<ActionRef>> counterexample_paths;
};

/// Throws ParseError on malformed documents.
GraphDocument read_graph_export(std::istream& in);

}  // namespace timebox
