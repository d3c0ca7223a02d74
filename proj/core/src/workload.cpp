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

#include "timebox/workload.hpp"

#include <limits>
#include <memory>
#include <stdexcept>

#include "timebox/models.hpp"
#include "timebox/trace_io.hpp"

namespace timebox {

using fuzz::StubEntry;
using fuzz::StubResult;
using fuzz::ThreadContext;

namespace {

// Keeps queues short so that ambiguous enqueue orders are resolved by a
// dequeue soon after they arise.
constexpr double kDequeueBias = 1.5;

constexpr std::int64_t kNoCommit = std::numeric_limits<std::int64_t>::min();

std::optional<std::int64_t> commit_point(std::int64_t c) {
  if (c == kNoCommit) return std::nullopt;
  return c;
}

std::vector<StubEntry> queue_stubs(LockQueue& q) {
  return {
      {"Enqueue",
       [&q](ThreadContext& ctx) {
         auto v = ctx.pick_payload();
         Value arg = Value::integer(v);
         std::int64_t commit = kNoCommit;
         ctx.timed([&] { q.enqueue(v, &commit); });
         return ctx.record("Enqueue", {arg}, commit_point(commit));
       }},
      {"Dequeue",
       [&q](ThreadContext& ctx) {
         std::int64_t commit = kNoCommit;
         auto got = ctx.timed([&] { return q.try_dequeue(&commit); });
         if (!got) return ctx.record("DequeueEmpty", {}, commit_point(commit));
         return ctx.record("Dequeue", {Value::integer(*got)}, commit_point(commit));
       },
       kDequeueBias},
  };
}

std::vector<StubEntry> omap_stubs(SnapshotMap& m) {
  return {
      {"Insert",
       [&m](ThreadContext& ctx) {
         auto k = ctx.pick_payload();
         auto v = ctx.pick_payload();
         std::int64_t commit = kNoCommit;
         bool ok = ctx.timed([&] { return m.insert(k, v, &commit); });
         return ctx.record("Insert", {Value::integer(k), Value::integer(v), Value::boolean(ok)},
                           commit_point(commit));
       }},
      {"Delete",
       [&m](ThreadContext& ctx) {
         auto k = ctx.pick_payload();
         std::int64_t commit = kNoCommit;
         bool ok = ctx.timed([&] { return m.erase(k, &commit); });
         return ctx.record("Delete", {Value::integer(k), Value::boolean(ok)},
                           commit_point(commit));
       }},
      {"Find",
       [&m](ThreadContext& ctx) {
         auto k = ctx.pick_payload();
         std::int64_t commit = kNoCommit;
         auto got = ctx.timed([&] { return m.find(k, &commit); });
         Value result = got ? Value::integer(*got)
                            : Value::string(std::string(OrderedMapRange::kNotFound));
         return ctx.record("Find", {Value::integer(k), result}, commit_point(commit));
       }},
      {"RangeCount",
       [&m](ThreadContext& ctx) {
         auto a = ctx.pick_payload();
         auto b = ctx.pick_payload();
         auto lo = std::min(a, b), hi = std::max(a, b);
         std::int64_t commit = kNoCommit;
         auto n = ctx.timed([&] { return m.range_count(lo, hi, &commit); });
         return ctx.record("RangeCount",
                           {Value::integer(lo), Value::integer(hi), Value::integer(n)},
                           commit_point(commit));
       }},
  };
}

Value tagged_items(std::span<const SegQueue::Item> items) {
  std::vector<Value> vs;
  vs.reserve(items.size());
  for (const auto& it : items) {
    vs.push_back(PerProducerFifo::tagged(it.producer, Value::integer(it.payload)));
  }
  return Value::tuple(std::move(vs));
}

std::vector<StubEntry> ppfifo_stubs(SegQueue& q) {
  return {
      {"Enqueue",
       [&q](ThreadContext& ctx) {
         auto p = static_cast<std::int64_t>(ctx.thread());
         auto x = ctx.pick_payload();
         Value v = PerProducerFifo::tagged(p, Value::integer(x));
         ctx.timed([&] { q.enqueue(ctx.thread(), x); });
         return ctx.record("Enqueue", {Value::integer(p), v});
       }},
      {"EnqueueBulk",
       [&q](ThreadContext& ctx) {
         auto p = static_cast<std::int64_t>(ctx.thread());
         std::vector<std::int64_t> xs(static_cast<std::size_t>(ctx.pick_int(2, 4)));
         std::vector<SegQueue::Item> items;
         for (auto& x : xs) {
           x = ctx.pick_payload();
           items.push_back({p, x});
         }
         Value vs = tagged_items(items);
         ctx.timed([&] { q.enqueue_bulk(ctx.thread(), xs); });
         return ctx.record("EnqueueBulk", {Value::integer(p), vs});
       }},
      {"Dequeue",
       [&q](ThreadContext& ctx) {
         auto got = ctx.timed([&] { return q.try_dequeue(); });
         if (!got) return ctx.record("DequeueEmpty", {});
         return ctx.record("Dequeue",
                           {PerProducerFifo::tagged(got->producer, Value::integer(got->payload))});
       }},
      {"DequeueBulk",
       [&q](ThreadContext& ctx) {
         auto max = static_cast<std::size_t>(ctx.pick_int(2, 5));
         auto got = ctx.timed([&] { return q.try_dequeue_bulk(max); });
         if (got.empty()) return ctx.record("DequeueEmpty", {});
         return ctx.record("DequeueBulk", {tagged_items(got)});
       }},
  };
}

fuzz::RunConfig run_config(const WorkloadConfig& cfg) {
  fuzz::RunConfig rc;
  rc.model = cfg.model;
  rc.threads = cfg.threads;
  rc.ops_per_thread = cfg.ops_per_thread;
  rc.seed = cfg.seed;
  rc.value_universe_size = cfg.value_universe_size;
  rc.jitter = cfg.jitter;
  return rc;
}

}  // namespace

Trace record_run(const WorkloadConfig& cfg) {
  if (cfg.threads == 0) throw std::invalid_argument("threads must be >= 1");
  if (cfg.value_universe_size == 0) throw std::invalid_argument("value universe must be >= 1");
  if (cfg.bug && bug_model(*cfg.bug) != cfg.model) {
    throw std::invalid_argument("bug " + std::string(bug_name(*cfg.bug)) + " belongs to model '" +
                                std::string(bug_model(*cfg.bug)) + "', not '" + cfg.model + "'");
  }
  auto rc = run_config(cfg);
  if (cfg.model == AtomicQueue::kName) {
    LockQueue q(cfg.bug);
    return fuzz::run(rc, queue_stubs(q)).trace;
  }
  if (cfg.model == OrderedMapRange::kName) {
    SnapshotMap m(cfg.bug);
    return fuzz::run(rc, omap_stubs(m)).trace;
  }
  if (cfg.model == PerProducerFifo::kName) {
    SegQueue q(cfg.threads, cfg.bug);
    return fuzz::run(rc, ppfifo_stubs(q)).trace;
  }
  throw std::invalid_argument("no reference structure for model '" + cfg.model + "'");
}

}  // namespace timebox
