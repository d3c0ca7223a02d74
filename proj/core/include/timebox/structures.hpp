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

#include <atomic>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string_view>
#include <thread>
#include <vector>

namespace timebox {

/// Injectable defects. Each alters one code path of one reference structure.
enum class BugId {
  Q1_READ_UNLOCKED,
  Q2_RETURN_BEFORE_LINEARIZED,
  Q3_LOST_ELEMENT,
  M1_READ_MUTABLE,
  M2_FUTURE_SNAPSHOT,
  M3_EARLY_FAILED_UPDATE,
  S1_BATCH_SPLIT,
};

inline constexpr BugId kAllBugs[] = {
    BugId::Q1_READ_UNLOCKED,   BugId::Q2_RETURN_BEFORE_LINEARIZED, BugId::Q3_LOST_ELEMENT,
    BugId::M1_READ_MUTABLE,    BugId::M2_FUTURE_SNAPSHOT,          BugId::M3_EARLY_FAILED_UPDATE,
    BugId::S1_BATCH_SPLIT,
};

std::string_view bug_name(BugId bug);
std::optional<BugId> parse_bug(std::string_view name);
/// Name of the model whose reference structure the bug lives in.
std::string_view bug_model(BugId bug);

/**
 * Mutex-guarded FIFO queue.
 *
 * Q1_READ_UNLOCKED: dequeue reads the head and pops it in two separate
 *   critical sections, so two consumers can return the same element.
 * Q2_RETURN_BEFORE_LINEARIZED: enqueue parks the element in a per-thread
 *   slot and returns; it is published at that thread's next call.
 * Q3_LOST_ELEMENT: every seventh enqueue is silently dropped.
 *
 * `commit_ns`, when non-null, receives the clock reading taken while the
 * lock that linearizes the call is held.
 */
class LockQueue {
 public:
  explicit LockQueue(std::optional<BugId> bug = std::nullopt) : bug_(bug) {}

  void enqueue(std::int64_t v, std::int64_t* commit_ns = nullptr);
  std::optional<std::int64_t> try_dequeue(std::int64_t* commit_ns = nullptr);
  std::size_t size() const;

 private:
  void flush_parked_locked();

  std::optional<BugId> bug_;
  mutable std::mutex mu_;
  std::deque<std::int64_t> items_;
  std::uint64_t enqueues_ = 0;
  std::map<std::thread::id, std::int64_t> parked_;
};

/**
 * Ordered int -> int map with copy-on-write snapshots.
 *
 * Updates are serialized, applied to a mutable map, copied into a staged
 * snapshot and then published; an update takes effect when its snapshot is
 * published. Queries read the published snapshot.
 *
 * M1_READ_MUTABLE: find reads the mutable map, seeing unpublished updates.
 * M2_FUTURE_SNAPSHOT: range_count reads the staged snapshot when one exists.
 * M3_EARLY_FAILED_UPDATE: inserts and deletes that will fail decide so from
 *   the mutable map without waiting for in-flight updates to publish.
 */
class SnapshotMap {
 public:
  using Map = std::map<std::int64_t, std::int64_t>;

  explicit SnapshotMap(std::optional<BugId> bug = std::nullopt);

  bool insert(std::int64_t key, std::int64_t value, std::int64_t* commit_ns = nullptr);
  bool erase(std::int64_t key, std::int64_t* commit_ns = nullptr);
  std::optional<std::int64_t> find(std::int64_t key, std::int64_t* commit_ns = nullptr) const;
  std::int64_t range_count(std::int64_t lo, std::int64_t hi,
                           std::int64_t* commit_ns = nullptr) const;

 private:
  std::shared_ptr<const Map> published() const;
  void publish_locked(std::int64_t* commit_ns);
  bool failed_early(std::int64_t key, bool want_present) const;

  std::optional<BugId> bug_;
  std::mutex writer_;
  mutable std::mutex mutable_mu_;
  Map mutable_;
  mutable std::mutex snapshot_mu_;
  std::shared_ptr<const Map> published_;
  std::shared_ptr<const Map> staged_;
};

/**
 * Multi-producer queue built from one locked subqueue per producer. A
 * consumer scans subqueues from a rotating start and takes from the first
 * nonempty one, so ordering holds only per producer. Empty results are
 * confirmed with every subqueue locked.
 *
 * S1_BATCH_SPLIT: a bulk dequeue from a subqueue holding three or more
 *   elements skips the first block of two, returning later elements first.
 */
class SegQueue {
 public:
  struct Item {
    std::int64_t producer;
    std::int64_t payload;
    bool operator==(const Item&) const = default;
  };

  SegQueue(std::size_t producers, std::optional<BugId> bug = std::nullopt);

  void enqueue(std::size_t producer, std::int64_t payload);
  void enqueue_bulk(std::size_t producer, std::span<const std::int64_t> payloads);
  std::optional<Item> try_dequeue();
  /// Up to `max` items, all from one producer. Empty means the queue was
  /// empty at some instant during the call.
  std::vector<Item> try_dequeue_bulk(std::size_t max);

 private:
  struct Sub {
    std::mutex mu;
    std::deque<std::int64_t> items;
  };

  bool confirm_empty();
  std::vector<Item> take(std::size_t max);

  std::optional<BugId> bug_;
  std::vector<std::unique_ptr<Sub>> subs_;
  std::atomic<std::size_t> cursor_{0};
};

}  // namespace timebox
