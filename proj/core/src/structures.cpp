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

#include "timebox/structures.hpp"

#include <stdexcept>
#include <string>

#include "timebox/fuzz.hpp"

namespace timebox {

using fuzz::now_ns;
using fuzz::yield_point;

namespace {

struct BugInfo {
  BugId id;
  std::string_view name;
  std::string_view model;
};

constexpr BugInfo kBugTable[] = {
    {BugId::Q1_READ_UNLOCKED, "Q1_READ_UNLOCKED", "queue"},
    {BugId::Q2_RETURN_BEFORE_LINEARIZED, "Q2_RETURN_BEFORE_LINEARIZED", "queue"},
    {BugId::Q3_LOST_ELEMENT, "Q3_LOST_ELEMENT", "queue"},
    {BugId::M1_READ_MUTABLE, "M1_READ_MUTABLE", "omaprange"},
    {BugId::M2_FUTURE_SNAPSHOT, "M2_FUTURE_SNAPSHOT", "omaprange"},
    {BugId::M3_EARLY_FAILED_UPDATE, "M3_EARLY_FAILED_UPDATE", "omaprange"},
    {BugId::S1_BATCH_SPLIT, "S1_BATCH_SPLIT", "ppfifo"},
};

const BugInfo& info(BugId bug) {
  for (const auto& b : kBugTable) {
    if (b.id == bug) return b;
  }
  throw std::logic_error("unknown bug id");
}

void stamp(std::int64_t* commit_ns) {
  if (commit_ns) *commit_ns = now_ns();
}

}  // namespace

std::string_view bug_name(BugId bug) { return info(bug).name; }
std::string_view bug_model(BugId bug) { return info(bug).model; }

std::optional<BugId> parse_bug(std::string_view name) {
  for (const auto& b : kBugTable) {
    if (b.name == name) return b.id;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// LockQueue

void LockQueue::flush_parked_locked() {
  auto it = parked_.find(std::this_thread::get_id());
  if (it == parked_.end()) return;
  items_.push_back(it->second);
  parked_.erase(it);
}

void LockQueue::enqueue(std::int64_t v, std::int64_t* commit_ns) {
  yield_point();
  std::lock_guard lock(mu_);
  if (bug_ == BugId::Q2_RETURN_BEFORE_LINEARIZED) {
    flush_parked_locked();
    parked_[std::this_thread::get_id()] = v;
    return;
  }
  if (bug_ == BugId::Q3_LOST_ELEMENT && ++enqueues_ % 7 == 0) return;
  items_.push_back(v);
  stamp(commit_ns);
}

std::optional<std::int64_t> LockQueue::try_dequeue(std::int64_t* commit_ns) {
  yield_point();
  if (bug_ == BugId::Q1_READ_UNLOCKED) {
    std::int64_t head;
    {
      std::lock_guard lock(mu_);
      if (items_.empty()) {
        stamp(commit_ns);
        return std::nullopt;
      }
      head = items_.front();
    }
    yield_point();
    std::lock_guard lock(mu_);
    if (!items_.empty()) items_.pop_front();
    return head;
  }
  std::lock_guard lock(mu_);
  if (bug_ == BugId::Q2_RETURN_BEFORE_LINEARIZED) flush_parked_locked();
  stamp(commit_ns);
  if (items_.empty()) return std::nullopt;
  auto v = items_.front();
  items_.pop_front();
  return v;
}

std::size_t LockQueue::size() const {
  std::lock_guard lock(mu_);
  return items_.size();
}

// ---------------------------------------------------------------------------
// SnapshotMap

SnapshotMap::SnapshotMap(std::optional<BugId> bug)
    : bug_(bug), published_(std::make_shared<const Map>()) {}

std::shared_ptr<const SnapshotMap::Map> SnapshotMap::published() const {
  std::lock_guard lock(snapshot_mu_);
  return published_;
}

void SnapshotMap::publish_locked(std::int64_t* commit_ns) {
  std::shared_ptr<const Map> next;
  {
    std::lock_guard lock(mutable_mu_);
    next = std::make_shared<const Map>(mutable_);
  }
  {
    std::lock_guard lock(snapshot_mu_);
    staged_ = next;
  }
  yield_point();
  std::lock_guard lock(snapshot_mu_);
  published_ = std::move(next);
  staged_.reset();
  stamp(commit_ns);
}

bool SnapshotMap::failed_early(std::int64_t key, bool want_present) const {
  if (bug_ != BugId::M3_EARLY_FAILED_UPDATE) return false;
  std::lock_guard lock(mutable_mu_);
  return (mutable_.count(key) != 0) != want_present;
}

bool SnapshotMap::insert(std::int64_t key, std::int64_t value, std::int64_t* commit_ns) {
  yield_point();
  if (failed_early(key, false)) return false;
  std::lock_guard writer(writer_);
  {
    std::lock_guard lock(mutable_mu_);
    if (mutable_.count(key)) {
      stamp(commit_ns);
      return false;
    }
    mutable_.emplace(key, value);
  }
  yield_point();
  publish_locked(commit_ns);
  return true;
}

bool SnapshotMap::erase(std::int64_t key, std::int64_t* commit_ns) {
  yield_point();
  if (failed_early(key, true)) return false;
  std::lock_guard writer(writer_);
  {
    std::lock_guard lock(mutable_mu_);
    if (!mutable_.erase(key)) {
      stamp(commit_ns);
      return false;
    }
  }
  yield_point();
  publish_locked(commit_ns);
  return true;
}

std::optional<std::int64_t> SnapshotMap::find(std::int64_t key, std::int64_t* commit_ns) const {
  yield_point();
  if (bug_ == BugId::M1_READ_MUTABLE) {
    std::lock_guard lock(mutable_mu_);
    auto it = mutable_.find(key);
    if (it == mutable_.end()) return std::nullopt;
    return it->second;
  }
  std::shared_ptr<const Map> snap;
  {
    std::lock_guard lock(snapshot_mu_);
    snap = published_;
    stamp(commit_ns);
  }
  auto it = snap->find(key);
  if (it == snap->end()) return std::nullopt;
  return it->second;
}

std::int64_t SnapshotMap::range_count(std::int64_t lo, std::int64_t hi,
                                      std::int64_t* commit_ns) const {
  yield_point();
  std::shared_ptr<const Map> snap;
  {
    std::lock_guard lock(snapshot_mu_);
    snap = bug_ == BugId::M2_FUTURE_SNAPSHOT && staged_ ? staged_ : published_;
    if (bug_ != BugId::M2_FUTURE_SNAPSHOT) stamp(commit_ns);
  }
  if (lo > hi) return 0;
  auto first = snap->lower_bound(lo);
  auto last = snap->upper_bound(hi);
  return static_cast<std::int64_t>(std::distance(first, last));
}

// ---------------------------------------------------------------------------
// SegQueue

SegQueue::SegQueue(std::size_t producers, std::optional<BugId> bug) : bug_(bug) {
  if (producers == 0) throw std::invalid_argument("SegQueue needs at least one producer");
  for (std::size_t p = 0; p < producers; ++p) subs_.push_back(std::make_unique<Sub>());
}

void SegQueue::enqueue(std::size_t producer, std::int64_t payload) {
  yield_point();
  auto& sub = *subs_.at(producer);
  std::lock_guard lock(sub.mu);
  sub.items.push_back(payload);
}

void SegQueue::enqueue_bulk(std::size_t producer, std::span<const std::int64_t> payloads) {
  yield_point();
  auto& sub = *subs_.at(producer);
  std::lock_guard lock(sub.mu);
  sub.items.insert(sub.items.end(), payloads.begin(), payloads.end());
}

bool SegQueue::confirm_empty() {
  std::vector<std::unique_lock<std::mutex>> locks;
  locks.reserve(subs_.size());
  for (auto& s : subs_) locks.emplace_back(s->mu);
  for (auto& s : subs_) {
    if (!s->items.empty()) return false;
  }
  return true;
}

std::vector<SegQueue::Item> SegQueue::take(std::size_t max) {
  const std::size_t n = subs_.size();
  while (true) {
    std::size_t start = cursor_.fetch_add(1, std::memory_order_relaxed) % n;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t p = (start + k) % n;
      auto& sub = *subs_[p];
      yield_point();
      std::lock_guard lock(sub.mu);
      if (sub.items.empty()) continue;
      std::size_t skip = 0;
      if (bug_ == BugId::S1_BATCH_SPLIT && max >= 2 && sub.items.size() >= 3) skip = 2;
      std::vector<Item> out;
      auto first = sub.items.begin() + static_cast<std::ptrdiff_t>(skip);
      auto count = std::min<std::size_t>(max, sub.items.size() - skip);
      for (auto it = first; it != first + static_cast<std::ptrdiff_t>(count); ++it) {
        out.push_back({static_cast<std::int64_t>(p), *it});
      }
      sub.items.erase(first, first + static_cast<std::ptrdiff_t>(count));
      return out;
    }
    if (confirm_empty()) return {};
  }
}

std::optional<SegQueue::Item> SegQueue::try_dequeue() {
  auto got = take(1);
  if (got.empty()) return std::nullopt;
  return got.front();
}

std::vector<SegQueue::Item> SegQueue::try_dequeue_bulk(std::size_t max) {
  if (max == 0) return {};
  return take(max);
}

}  // namespace timebox
