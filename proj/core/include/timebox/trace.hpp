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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "timebox/value.hpp"

namespace timebox {

using ThreadId = std::uint32_t;

/// One recorded operation: `op(args...)` observed within [start_ns, end_ns].
struct TimeboxedAction {
  std::string op;
  std::vector<Value> args;
  ThreadId thread = 0;
  std::int64_t start_ns = 0;
  std::int64_t end_ns = 0;
  /// A point inside the box where the operation is known to have committed.
  std::optional<std::int64_t> refined_ns;

  bool operator==(const TimeboxedAction&) const = default;

  /// `Op(a, b)` rendering used in summaries.
  std::string label() const;
};

/// Identifies an action by position: the `index`-th action of `thread`.
struct ActionRef {
  ThreadId thread = 0;
  std::uint32_t index = 0;

  auto operator<=>(const ActionRef&) const = default;
};

struct TraceMeta {
  std::string model;
  std::optional<std::uint64_t> seed;
  std::string recorder_version;

  bool operator==(const TraceMeta&) const = default;
};

/// Per-thread, locally ordered sequences of timeboxed actions.
struct Trace {
  std::vector<std::vector<TimeboxedAction>> threads;
  TraceMeta meta;

  Trace() = default;
  explicit Trace(std::size_t thread_count) : threads(thread_count) {}

  std::size_t thread_count() const { return threads.size(); }
  std::size_t total_actions() const;
  const TimeboxedAction& at(ActionRef ref) const;

  bool operator==(const Trace&) const = default;
};

/**
 * How many actions each thread has consumed. Indexes into Trace::threads;
 * `idx[t] == threads[t].size()` means thread t is exhausted.
 */
class VectorTimestamp {
 public:
  VectorTimestamp() = default;
  explicit VectorTimestamp(std::vector<std::uint32_t> idx) : idx_(std::move(idx)) {}

  static VectorTimestamp zeros(const Trace& tr) {
    return VectorTimestamp(std::vector<std::uint32_t>(tr.thread_count(), 0));
  }

  std::size_t size() const { return idx_.size(); }
  std::uint32_t operator[](std::size_t t) const { return idx_[t]; }
  const std::vector<std::uint32_t>& indices() const { return idx_; }

  /// Sum of all indices: the number of actions consumed.
  std::size_t depth() const;
  bool in_bounds(const Trace& tr) const;
  bool exhausted(const Trace& tr, ThreadId t) const { return idx_[t] >= tr.threads[t].size(); }
  bool all_exhausted(const Trace& tr) const;

  /// Copy with thread t advanced by one. Throws std::out_of_range when t is
  /// already exhausted.
  VectorTimestamp advanced(const Trace& tr, ThreadId t) const;

  std::uint64_t hash() const;

  auto operator<=>(const VectorTimestamp&) const = default;

 private:
  std::vector<std::uint32_t> idx_;
};

struct Violation {
  ThreadId thread = 0;
  std::size_t index = 0;
  std::string rule;
  std::string message;

  std::string to_string() const;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Empty result iff every trace invariant holds.
std::vector<Violation> validate_trace(const Trace& tr);

/// Throws ValidationError listing every violation.
void require_valid(const Trace& tr);

/// Replaces every box that has a refined point with the degenerate box at
/// that point. Throws ValidationError if the input is invalid or the result
/// would break per-thread order.
Trace shrink_timeboxes(const Trace& tr);

}  // namespace timebox
