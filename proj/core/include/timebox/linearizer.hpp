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
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "timebox/errors.hpp"
#include "timebox/model.hpp"
#include "timebox/trace.hpp"

namespace timebox {

/// Maps a model state to the bytes that decide node identity.
using ViewFn = std::function<std::string(const Value&)>;

struct CheckOptions {
  std::size_t max_counterexamples = 10;
  /// Worker threads used to expand a depth layer. Does not affect results.
  unsigned parallelism = 1;
  /// Estimated bytes; exceeding it aborts with CheckResourceError.
  std::optional<std::size_t> memory_budget_bytes;
  /// Overrides ModelSpec::view when set.
  ViewFn view;
  /// Counterexamples keep states only for this many trailing steps.
  std::size_t counterexample_state_window = 1024;
};

struct CheckStats {
  std::uint64_t nodes_explored = 0;
  std::uint64_t transitions = 0;
  std::uint64_t peak_frontier = 0;
  std::uint64_t peak_memory_estimate = 0;
  double wall_ms = 0;
};

/**
 * One of the longest paths the search found before running out of
 * linearizable actions. `states` covers the tail of the path:
 * states[k] is the state after path[path.size() - states.size() + k].
 * `stuck` lists the actions that were viable at the end but disabled.
 */
struct Counterexample {
  std::vector<ActionRef> path;
  Value initial_state;
  std::vector<Value> states;
  std::vector<ActionRef> stuck;

  std::size_t first_state_step() const { return path.size() - states.size(); }
  const Value& final_state() const { return states.empty() ? initial_state : states.back(); }
};

enum class Outcome { Accepted, Rejected };

struct Verdict {
  Outcome outcome = Outcome::Rejected;
  /// Length of the longest linearizable prefix found.
  std::size_t max_depth = 0;
  /// Accepted only: a full linearization and its end state.
  std::vector<ActionRef> witness;
  std::optional<Value> final_state;
  /// Rejected only.
  std::vector<Counterexample> counterexamples;
  CheckStats stats;

  bool accepted() const { return outcome == Outcome::Accepted; }
};

/**
 * The explored search space. Node ids are dense; a node is identified by
 * its vector timestamp plus the view of its state, and `state` is the first
 * concrete state that reached it.
 */
struct StateGraph {
  struct Node {
    VectorTimestamp vt;
    std::size_t depth = 0;
    Value state;
  };
  struct Edge {
    std::size_t src = 0;
    std::size_t dst = 0;
    ActionRef action;
  };

  std::vector<Node> nodes;
  std::vector<Edge> edges;
  std::vector<std::size_t> roots;

  std::size_t max_depth() const;
};

class CheckResourceError : public ResourceError {
 public:
  CheckResourceError(const std::string& what, CheckStats partial)
      : ResourceError(what), partial_(partial) {}
  const CheckStats& partial_stats() const { return partial_; }

 private:
  CheckStats partial_;
};

/**
 * Next action of each non-exhausted thread, minus any that some other
 * candidate strictly precedes (`other.end_ns < a.start_ns`). Equal
 * timestamps count as concurrent. Sorted by thread.
 *
 * Throws std::out_of_range when `vt` does not fit `tr`.
 */
std::vector<ActionRef> viable_actions(const Trace& tr, const VectorTimestamp& vt);

/**
 * Decides whether `tr` linearizes against `spec`.
 *
 * Breadth-first over depth layers of (vector timestamp, view) nodes. The
 * first layer in which every thread is exhausted accepts; an empty layer
 * rejects, and counterexamples are rebuilt from the deepest layer. When
 * `graph` is non-null every node and edge is recorded into it.
 *
 * Throws ValidationError for an invalid trace, SpecificationError for
 * actions the model does not know, CheckResourceError past the memory
 * budget.
 */
Verdict check(const Trace& tr, const ModelSpec& spec, const CheckOptions& opts = {},
              StateGraph* graph = nullptr);

/// True iff `witness` orders every action once, respects thread and
/// real-time order, and replays through `spec` from some initial state.
bool replay_witness(const Trace& tr, const ModelSpec& spec, std::span<const ActionRef> witness);

}  // namespace timebox
