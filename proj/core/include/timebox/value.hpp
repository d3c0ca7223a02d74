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

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace timebox {

enum class ValueKind : std::uint8_t {
  Bool = 1,
  Int = 2,
  Str = 3,
  Set = 4,
  Tuple = 5,
  Map = 6,
};

std::string_view kind_name(ValueKind kind);

/**
 * An immutable datum from the trace grammar: booleans, 64-bit integers,
 * strings, and finite sets, tuples and maps built from those.
 *
 * Every value carries its canonical byte encoding, computed once at
 * construction. Sets and maps are stored in ascending order of their
 * members' (keys') encodings, so two values are equal exactly when their
 * encodings are equal, regardless of the order they were built in.
 * Equality, ordering and hashing are all defined on that encoding.
 *
 * Copies share the underlying node, so passing values around is cheap and
 * safe across threads.
 */
class Value {
 public:
  using Entry = std::pair<Value, Value>;

  /// The boolean `false`.
  Value();

  static Value boolean(bool b);
  static Value integer(std::int64_t i);
  static Value string(std::string s);
  /// Duplicates (by encoding) are dropped.
  static Value set(std::vector<Value> members);
  static Value tuple(std::vector<Value> elements);
  /// Throws std::invalid_argument on duplicate keys.
  static Value map(std::vector<Entry> entries);

  ValueKind kind() const;
  bool is(ValueKind k) const { return kind() == k; }

  /// Accessors throw std::logic_error on a kind mismatch.
  bool as_bool() const;
  std::int64_t as_int() const;
  const std::string& as_string() const;
  /// Members of a set (canonical order) or elements of a tuple.
  std::span<const Value> elements() const;
  /// Entries of a map, ascending by key encoding.
  std::span<const Entry> entries() const;

  std::size_t size() const;
  /// Map lookup; nullptr when absent.
  const Value* find(const Value& key) const;
  bool contains(const Value& member) const;

  const std::string& encoding() const;
  std::uint64_t hash() const;

  /// Inverse of encoding(); throws std::invalid_argument on malformed input.
  static Value decode(std::string_view bytes);

  /// Human-readable rendering: `{1, 2}`, `<<1, 2>>`, `[k |-> v]`.
  std::string to_string() const;

  friend bool operator==(const Value& a, const Value& b);
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

 private:
  struct Node;
  static void seal(Node& n);
  explicit Value(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

bool value_eq(const Value& a, const Value& b);
std::uint64_t value_hash(const Value& v);
const std::string& canonical_encode(const Value& v);

struct ValueHash {
  std::size_t operator()(const Value& v) const { return v.hash(); }
};

}  // namespace timebox

template <>
struct std::hash<timebox::Value> {
  std::size_t operator()(const timebox::Value& v) const { return v.hash(); }
};
