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

#include "timebox/models.hpp"

#include <map>

#include "timebox/errors.hpp"

namespace timebox {

namespace {

void expect_arity(const OpSignature& sig, std::span<const Value> args) {
  if (args.size() != sig.arity()) {
    throw SpecificationError(sig.name + " takes " + std::to_string(sig.arity()) +
                             " arguments, got " + std::to_string(args.size()));
  }
}

const Value& expect_kind(const OpSignature& sig, std::span<const Value> args, std::size_t k) {
  const auto& hint = sig.args[k];
  if (hint.kind && !args[k].is(*hint.kind)) {
    throw SpecificationError(sig.name + ": argument '" + hint.name + "' must be " +
                             std::string(kind_name(*hint.kind)) + ", got " +
                             args[k].to_string());
  }
  return args[k];
}

std::vector<Value> unchanged(const Value& state) { return {state}; }

[[noreturn]] void unknown_op(std::string_view model, OpId op) {
  throw SpecificationError(std::string(model) + ": unknown action id " + std::to_string(op));
}

}  // namespace

// ---------------------------------------------------------------------------
// AtomicQueue

std::span<const OpSignature> AtomicQueue::signature() const {
  static const std::vector<OpSignature> sig = {
      {"Enqueue", {{"elem", std::nullopt}}},
      {"Dequeue", {{"elem", std::nullopt}}},
      {"DequeueEmpty", {}},
  };
  return sig;
}

std::vector<Value> AtomicQueue::initial_states() const { return {Value::tuple({})}; }

std::vector<Value> AtomicQueue::step(const Value& state, OpId op,
                                     std::span<const Value> args) const {
  if (op >= signature().size()) unknown_op(kName, op);
  expect_arity(signature()[op], args);
  auto q = state.elements();
  switch (op) {
    case kEnqueue: {
      std::vector<Value> next;
      next.reserve(q.size() + 1);
      next.assign(q.begin(), q.end());
      next.push_back(args[0]);
      return {Value::tuple(std::move(next))};
    }
    case kDequeue:
      if (q.empty() || q.front() != args[0]) return {};
      return {Value::tuple(std::vector<Value>(q.begin() + 1, q.end()))};
    case kDequeueEmpty:
      if (!q.empty()) return {};
      return unchanged(state);
  }
  unknown_op(kName, op);
}

std::vector<ActionTemplate> AtomicQueue::enabled_actions_hint(
    const Value& state, std::span<const Value> universe) const {
  std::vector<ActionTemplate> out;
  for (const auto& v : universe) out.push_back({"Enqueue", {v}});
  auto q = state.elements();
  if (q.empty()) {
    out.push_back({"DequeueEmpty", {}});
  } else {
    out.push_back({"Dequeue", {q.front()}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// OrderedMapRange

std::span<const OpSignature> OrderedMapRange::signature() const {
  static const std::vector<OpSignature> sig = {
      {"Insert", {{"key", ValueKind::Int}, {"value", std::nullopt}, {"ok", ValueKind::Bool}}},
      {"Delete", {{"key", ValueKind::Int}, {"ok", ValueKind::Bool}}},
      {"Find", {{"key", ValueKind::Int}, {"result", std::nullopt}}},
      {"RangeCount", {{"lo", ValueKind::Int}, {"hi", ValueKind::Int}, {"count", ValueKind::Int}}},
  };
  return sig;
}

std::vector<Value> OrderedMapRange::initial_states() const { return {Value::map({})}; }

namespace {

Value map_with(const Value& m, const Value& key, const Value& val) {
  std::vector<Value::Entry> es(m.entries().begin(), m.entries().end());
  es.emplace_back(key, val);
  return Value::map(std::move(es));
}

Value map_without(const Value& m, const Value& key) {
  std::vector<Value::Entry> es;
  es.reserve(m.size());
  for (const auto& e : m.entries()) {
    if (e.first != key) es.push_back(e);
  }
  return Value::map(std::move(es));
}

std::int64_t count_in_range(const Value& m, std::int64_t lo, std::int64_t hi) {
  std::int64_t n = 0;
  for (const auto& [k, v] : m.entries()) {
    auto x = k.as_int();
    if (lo <= x && x <= hi) ++n;
  }
  return n;
}

}  // namespace

std::vector<Value> OrderedMapRange::step(const Value& state, OpId op,
                                         std::span<const Value> args) const {
  if (op >= signature().size()) unknown_op(kName, op);
  const auto& sig = signature()[op];
  expect_arity(sig, args);
  for (std::size_t k = 0; k < args.size(); ++k) expect_kind(sig, args, k);

  switch (op) {
    case kInsert: {
      bool present = state.find(args[0]) != nullptr;
      bool ok = args[2].as_bool();
      if (ok == present) return {};
      return {ok ? map_with(state, args[0], args[1]) : state};
    }
    case kDelete: {
      bool present = state.find(args[0]) != nullptr;
      bool ok = args[1].as_bool();
      if (ok != present) return {};
      return {ok ? map_without(state, args[0]) : state};
    }
    case kFind: {
      const Value* stored = state.find(args[0]);
      bool match = stored ? *stored == args[1]
                          : args[1].is(ValueKind::Str) && args[1].as_string() == kNotFound;
      if (!match) return {};
      return unchanged(state);
    }
    case kRangeCount: {
      if (count_in_range(state, args[0].as_int(), args[1].as_int()) != args[2].as_int()) {
        return {};
      }
      return unchanged(state);
    }
  }
  unknown_op(kName, op);
}

std::vector<ActionTemplate> OrderedMapRange::enabled_actions_hint(
    const Value& state, std::span<const Value> universe) const {
  std::vector<Value> keys;
  for (const auto& u : universe) {
    if (u.is(ValueKind::Int)) keys.push_back(u);
  }
  std::vector<ActionTemplate> out;
  for (const auto& k : keys) {
    const Value* stored = state.find(k);
    for (const auto& v : universe) {
      out.push_back({"Insert", {k, v, Value::boolean(stored == nullptr)}});
    }
    out.push_back({"Delete", {k, Value::boolean(stored != nullptr)}});
    out.push_back({"Find", {k, stored ? *stored : Value::string(std::string(kNotFound))}});
  }
  for (const auto& lo : keys) {
    for (const auto& hi : keys) {
      if (lo.as_int() > hi.as_int()) continue;
      out.push_back({"RangeCount",
                     {lo, hi, Value::integer(count_in_range(state, lo.as_int(), hi.as_int()))}});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// PerProducerFifo

std::span<const OpSignature> PerProducerFifo::signature() const {
  static const std::vector<OpSignature> sig = {
      {"Enqueue", {{"producer", ValueKind::Int}, {"elem", ValueKind::Tuple}}},
      {"EnqueueBulk", {{"producer", ValueKind::Int}, {"elems", ValueKind::Tuple}}},
      {"Dequeue", {{"elem", ValueKind::Tuple}}},
      {"DequeueBulk", {{"elems", ValueKind::Tuple}}},
      {"DequeueEmpty", {}},
  };
  return sig;
}

std::vector<Value> PerProducerFifo::initial_states() const { return {Value::map({})}; }

Value PerProducerFifo::tagged(std::int64_t producer, const Value& payload) {
  return Value::tuple({Value::integer(producer), payload});
}

namespace {

using Subqueues = std::map<std::int64_t, std::vector<Value>>;

std::int64_t producer_of(const Value& v) {
  if (!v.is(ValueKind::Tuple) || v.size() != 2 || !v.elements()[0].is(ValueKind::Int)) {
    throw SpecificationError("value " + v.to_string() +
                             " carries no producer tag (expected <<producer, payload>>)");
  }
  return v.elements()[0].as_int();
}

Subqueues unpack(const Value& state) {
  Subqueues qs;
  for (const auto& [p, q] : state.entries()) {
    qs[p.as_int()].assign(q.elements().begin(), q.elements().end());
  }
  return qs;
}

Value pack(const Subqueues& qs) {
  std::vector<Value::Entry> es;
  for (const auto& [p, q] : qs) {
    if (!q.empty()) es.emplace_back(Value::integer(p), Value::tuple(q));
  }
  return Value::map(std::move(es));
}

bool dequeue_one(Subqueues& qs, const Value& v) {
  auto it = qs.find(producer_of(v));
  if (it == qs.end() || it->second.empty() || it->second.front() != v) return false;
  it->second.erase(it->second.begin());
  return true;
}

void enqueue_one(Subqueues& qs, std::int64_t producer, const Value& v) {
  if (producer_of(v) != producer) {
    throw SpecificationError("producer " + std::to_string(producer) + " enqueued " +
                             v.to_string() + " tagged for another producer");
  }
  qs[producer].push_back(v);
}

}  // namespace

std::vector<Value> PerProducerFifo::step(const Value& state, OpId op,
                                         std::span<const Value> args) const {
  if (op >= signature().size()) unknown_op(kName, op);
  const auto& sig = signature()[op];
  expect_arity(sig, args);
  for (std::size_t k = 0; k < args.size(); ++k) expect_kind(sig, args, k);

  switch (op) {
    case kEnqueue: {
      auto qs = unpack(state);
      enqueue_one(qs, args[0].as_int(), args[1]);
      return {pack(qs)};
    }
    case kEnqueueBulk: {
      auto qs = unpack(state);
      for (const auto& v : args[1].elements()) enqueue_one(qs, args[0].as_int(), v);
      return {pack(qs)};
    }
    case kDequeue: {
      auto qs = unpack(state);
      if (!dequeue_one(qs, args[0])) return {};
      return {pack(qs)};
    }
    case kDequeueBulk: {
      auto qs = unpack(state);
      for (const auto& v : args[0].elements()) {
        if (!dequeue_one(qs, v)) return {};
      }
      return {pack(qs)};
    }
    case kDequeueEmpty:
      if (state.size() != 0) return {};
      return unchanged(state);
  }
  unknown_op(kName, op);
}

std::vector<ActionTemplate> PerProducerFifo::enabled_actions_hint(
    const Value& state, std::span<const Value> universe) const {
  std::vector<ActionTemplate> out;
  for (const auto& p : universe) {
    if (!p.is(ValueKind::Int)) continue;
    for (const auto& u : universe) {
      Value v = tagged(p.as_int(), u);
      out.push_back({"Enqueue", {p, v}});
      out.push_back({"EnqueueBulk", {p, Value::tuple({v, v})}});
    }
  }
  if (state.size() == 0) {
    out.push_back({"DequeueEmpty", {}});
    return out;
  }
  for (const auto& [p, q] : state.entries()) {
    auto xs = q.elements();
    out.push_back({"Dequeue", {xs.front()}});
    std::vector<Value> bulk(xs.begin(), xs.begin() + std::min<std::size_t>(xs.size(), 2));
    out.push_back({"DequeueBulk", {Value::tuple(std::move(bulk))}});
  }
  return out;
}

}  // namespace timebox
