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

#include "timebox/model.hpp"

namespace timebox {

/// FIFO queue with atomic operations. State: tuple of queued values.
///   Enqueue(v)      appends v
///   Dequeue(v)      enabled iff v is at the head; removes it
///   DequeueEmpty()  enabled iff the queue is empty
class AtomicQueue final : public ModelSpec {
 public:
  static constexpr std::string_view kName = "queue";
  enum : OpId { kEnqueue, kDequeue, kDequeueEmpty };

  std::string_view name() const override { return kName; }
  std::span<const OpSignature> signature() const override;
  std::vector<Value> initial_states() const override;
  std::vector<Value> step(const Value& state, OpId op,
                          std::span<const Value> args) const override;
  std::vector<ActionTemplate> enabled_actions_hint(
      const Value& state, std::span<const Value> universe) const override;
  using ModelSpec::step;
};

/// Ordered map from integer keys with an inclusive range count.
/// State: map int -> value.
///   Insert(k, v, ok)          ok iff k was absent; adds k -> v when ok
///   Delete(k, ok)             ok iff k was present; removes k when ok
///   Find(k, result)           result is the stored value or "NotFound"
///   RangeCount(lo, hi, count) count = |{k : lo <= k <= hi}|
class OrderedMapRange final : public ModelSpec {
 public:
  static constexpr std::string_view kName = "omaprange";
  static constexpr std::string_view kNotFound = "NotFound";
  enum : OpId { kInsert, kDelete, kFind, kRangeCount };

  std::string_view name() const override { return kName; }
  std::span<const OpSignature> signature() const override;
  std::vector<Value> initial_states() const override;
  std::vector<Value> step(const Value& state, OpId op,
                          std::span<const Value> args) const override;
  std::vector<ActionTemplate> enabled_actions_hint(
      const Value& state, std::span<const Value> universe) const override;
  using ModelSpec::step;
};

/// Multi-producer queue that is FIFO only per producer. Values are tuples
/// <<producer, payload>>. State: map producer -> tuple of pending values;
/// producers with nothing pending are absent.
///   Enqueue(p, v)         appends v to p's subqueue (v must be tagged p)
///   EnqueueBulk(p, vs)    appends each of vs in order, atomically
///   Dequeue(v)            enabled iff v heads its producer's subqueue
///   DequeueBulk(vs)       Dequeue each of vs in order, atomically
///   DequeueEmpty()        enabled iff every subqueue is empty
class PerProducerFifo final : public ModelSpec {
 public:
  static constexpr std::string_view kName = "ppfifo";
  enum : OpId { kEnqueue, kEnqueueBulk, kDequeue, kDequeueBulk, kDequeueEmpty };

  std::string_view name() const override { return kName; }
  std::span<const OpSignature> signature() const override;
  std::vector<Value> initial_states() const override;
  std::vector<Value> step(const Value& state, OpId op,
                          std::span<const Value> args) const override;
  std::vector<ActionTemplate> enabled_actions_hint(
      const Value& state, std::span<const Value> universe) const override;
  using ModelSpec::step;

  static Value tagged(std::int64_t producer, const Value& payload);
};

}  // namespace timebox
