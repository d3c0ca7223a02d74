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

#include "timebox/value.hpp"

#include <algorithm>
#include <stdexcept>

namespace timebox {

struct Value::Node {
  ValueKind kind = ValueKind::Bool;
  bool b = false;
  std::int64_t i = 0;
  std::string s;
  std::vector<Value> elems;
  std::vector<Entry> entries;
  std::string enc;
  std::uint64_t hash = 0;
};

namespace {

void put_u32(std::string& out, std::size_t n) {
  if (n > 0xffffffffu) throw std::length_error("value too large to encode");
  for (int shift = 24; shift >= 0; shift -= 8) {
    out.push_back(static_cast<char>((n >> shift) & 0xff));
  }
}

void put_i64(std::string& out, std::int64_t x) {
  // Sign bit flipped so that byte order matches numeric order.
  std::uint64_t u = static_cast<std::uint64_t>(x) ^ (std::uint64_t{1} << 63);
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<char>((u >> shift) & 0xff));
  }
}

std::uint64_t digest(std::string_view bytes) {
  return std::hash<std::string_view>{}(bytes);
}

bool encoding_less(const Value& a, const Value& b) {
  return a.encoding() < b.encoding();
}

}  // namespace

void Value::seal(Node& n) { n.hash = digest(n.enc); }

std::string_view kind_name(ValueKind kind) {
  switch (kind) {
    case ValueKind::Bool: return "bool";
    case ValueKind::Int: return "int";
    case ValueKind::Str: return "string";
    case ValueKind::Set: return "set";
    case ValueKind::Tuple: return "tuple";
    case ValueKind::Map: return "map";
  }
  return "?";
}

Value::Value() : Value(boolean(false)) {}

Value Value::boolean(bool b) {
  static const Value kFalse = [] {
    auto n = std::make_shared<Node>();
    n->kind = ValueKind::Bool;
    n->enc = {static_cast<char>(ValueKind::Bool), '\0'};
    seal(*n);
    return Value(std::move(n));
  }();
  static const Value kTrue = [] {
    auto n = std::make_shared<Node>();
    n->kind = ValueKind::Bool;
    n->b = true;
    n->enc = {static_cast<char>(ValueKind::Bool), '\1'};
    seal(*n);
    return Value(std::move(n));
  }();
  return b ? kTrue : kFalse;
}

Value Value::integer(std::int64_t i) {
  auto n = std::make_shared<Node>();
  n->kind = ValueKind::Int;
  n->i = i;
  n->enc.reserve(9);
  n->enc.push_back(static_cast<char>(ValueKind::Int));
  put_i64(n->enc, i);
  seal(*n);
  return Value(std::move(n));
}

Value Value::string(std::string s) {
  auto n = std::make_shared<Node>();
  n->kind = ValueKind::Str;
  n->enc.reserve(5 + s.size());
  n->enc.push_back(static_cast<char>(ValueKind::Str));
  put_u32(n->enc, s.size());
  n->enc += s;
  n->s = std::move(s);
  seal(*n);
  return Value(std::move(n));
}

namespace {

template <class Range, class Fn>
std::size_t encoded_size(const Range& r, Fn&& size_of) {
  std::size_t total = 5;
  for (const auto& x : r) total += size_of(x);
  return total;
}

}  // namespace

Value Value::set(std::vector<Value> members) {
  std::sort(members.begin(), members.end(), encoding_less);
  members.erase(std::unique(members.begin(), members.end()), members.end());
  auto n = std::make_shared<Node>();
  n->kind = ValueKind::Set;
  n->enc.reserve(encoded_size(members, [](const Value& v) { return v.encoding().size(); }));
  n->enc.push_back(static_cast<char>(ValueKind::Set));
  put_u32(n->enc, members.size());
  for (const auto& m : members) n->enc += m.encoding();
  n->elems = std::move(members);
  seal(*n);
  return Value(std::move(n));
}

Value Value::tuple(std::vector<Value> elements) {
  auto n = std::make_shared<Node>();
  n->kind = ValueKind::Tuple;
  n->enc.reserve(encoded_size(elements, [](const Value& v) { return v.encoding().size(); }));
  n->enc.push_back(static_cast<char>(ValueKind::Tuple));
  put_u32(n->enc, elements.size());
  for (const auto& e : elements) n->enc += e.encoding();
  n->elems = std::move(elements);
  seal(*n);
  return Value(std::move(n));
}

Value Value::map(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return encoding_less(a.first, b.first); });
  for (std::size_t k = 1; k < entries.size(); ++k) {
    if (entries[k - 1].first == entries[k].first) {
      throw std::invalid_argument("duplicate map key " + entries[k].first.to_string());
    }
  }
  auto n = std::make_shared<Node>();
  n->kind = ValueKind::Map;
  n->enc.reserve(encoded_size(entries, [](const Entry& e) {
    return e.first.encoding().size() + e.second.encoding().size();
  }));
  n->enc.push_back(static_cast<char>(ValueKind::Map));
  put_u32(n->enc, entries.size());
  for (const auto& [k, v] : entries) {
    n->enc += k.encoding();
    n->enc += v.encoding();
  }
  n->entries = std::move(entries);
  seal(*n);
  return Value(std::move(n));
}

ValueKind Value::kind() const { return node_->kind; }

namespace {
[[noreturn]] void kind_mismatch(ValueKind want, ValueKind got) {
  throw std::logic_error("expected " + std::string(kind_name(want)) + ", got " +
                         std::string(kind_name(got)));
}
}  // namespace

bool Value::as_bool() const {
  if (kind() != ValueKind::Bool) kind_mismatch(ValueKind::Bool, kind());
  return node_->b;
}

std::int64_t Value::as_int() const {
  if (kind() != ValueKind::Int) kind_mismatch(ValueKind::Int, kind());
  return node_->i;
}

const std::string& Value::as_string() const {
  if (kind() != ValueKind::Str) kind_mismatch(ValueKind::Str, kind());
  return node_->s;
}

std::span<const Value> Value::elements() const {
  if (kind() != ValueKind::Set && kind() != ValueKind::Tuple) {
    kind_mismatch(ValueKind::Tuple, kind());
  }
  return node_->elems;
}

std::span<const Value::Entry> Value::entries() const {
  if (kind() != ValueKind::Map) kind_mismatch(ValueKind::Map, kind());
  return node_->entries;
}

std::size_t Value::size() const {
  switch (kind()) {
    case ValueKind::Set:
    case ValueKind::Tuple: return node_->elems.size();
    case ValueKind::Map: return node_->entries.size();
    case ValueKind::Str: return node_->s.size();
    default: return 0;
  }
}

const Value* Value::find(const Value& key) const {
  const auto& es = entries();
  auto it = std::lower_bound(es.begin(), es.end(), key, [](const Entry& e, const Value& k) {
    return encoding_less(e.first, k);
  });
  if (it == es.end() || it->first != key) return nullptr;
  return &it->second;
}

bool Value::contains(const Value& member) const {
  if (kind() == ValueKind::Map) return find(member) != nullptr;
  if (kind() == ValueKind::Set) {
    return std::binary_search(node_->elems.begin(), node_->elems.end(), member, encoding_less);
  }
  const auto els = elements();
  return std::find(els.begin(), els.end(), member) != els.end();
}

const std::string& Value::encoding() const { return node_->enc; }

std::uint64_t Value::hash() const { return node_->hash; }

bool operator==(const Value& a, const Value& b) {
  if (a.node_ == b.node_) return true;
  return a.node_->hash == b.node_->hash && a.node_->enc == b.node_->enc;
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  int c = a.node_->enc.compare(b.node_->enc);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

namespace {

class Decoder {
 public:
  explicit Decoder(std::string_view in) : in_(in) {}

  Value value() {
    auto tag = static_cast<ValueKind>(byte());
    switch (tag) {
      case ValueKind::Bool: {
        auto b = byte();
        if (b > 1) fail("bad boolean");
        return Value::boolean(b == 1);
      }
      case ValueKind::Int: {
        std::uint64_t u = 0;
        for (int k = 0; k < 8; ++k) u = (u << 8) | byte();
        return Value::integer(static_cast<std::int64_t>(u ^ (std::uint64_t{1} << 63)));
      }
      case ValueKind::Str: {
        auto len = u32();
        if (in_.size() - pos_ < len) fail("truncated string");
        std::string s(in_.substr(pos_, len));
        pos_ += len;
        return Value::string(std::move(s));
      }
      case ValueKind::Set:
      case ValueKind::Tuple: {
        auto count = u32();
        std::vector<Value> xs;
        for (std::uint32_t k = 0; k < count; ++k) xs.push_back(value());
        if (tag == ValueKind::Tuple) return Value::tuple(std::move(xs));
        for (std::size_t k = 1; k < xs.size(); ++k) {
          if (!(xs[k - 1] < xs[k])) fail("set members not canonical");
        }
        return Value::set(std::move(xs));
      }
      case ValueKind::Map: {
        auto count = u32();
        std::vector<Value::Entry> es;
        for (std::uint32_t k = 0; k < count; ++k) {
          auto key = value();
          es.emplace_back(std::move(key), value());
        }
        for (std::size_t k = 1; k < es.size(); ++k) {
          if (!(es[k - 1].first < es[k].first)) fail("map keys not canonical");
        }
        return Value::map(std::move(es));
      }
    }
    fail("unknown type tag");
  }

  bool done() const { return pos_ == in_.size(); }

 private:
  [[noreturn]] void fail(const char* what) const {
    throw std::invalid_argument(std::string("decode: ") + what + " at byte " +
                                std::to_string(pos_));
  }
  std::uint8_t byte() {
    if (pos_ >= in_.size()) fail("truncated input");
    return static_cast<std::uint8_t>(in_[pos_++]);
  }
  std::uint32_t u32() {
    std::uint32_t n = 0;
    for (int k = 0; k < 4; ++k) n = (n << 8) | byte();
    return n;
  }

  std::string_view in_;
  std::size_t pos_ = 0;
};

void quote(std::string& out, const std::string& s) {
  out.push_back('"');
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
}

void render(std::string& out, const Value& v) {
  switch (v.kind()) {
    case ValueKind::Bool: out += v.as_bool() ? "TRUE" : "FALSE"; break;
    case ValueKind::Int: out += std::to_string(v.as_int()); break;
    case ValueKind::Str: quote(out, v.as_string()); break;
    case ValueKind::Set:
    case ValueKind::Tuple: {
      bool set = v.is(ValueKind::Set);
      out += set ? "{" : "<<";
      bool first = true;
      for (const auto& e : v.elements()) {
        if (!first) out += ", ";
        first = false;
        render(out, e);
      }
      out += set ? "}" : ">>";
      break;
    }
    case ValueKind::Map: {
      out += "[";
      bool first = true;
      for (const auto& [k, x] : v.entries()) {
        if (!first) out += ", ";
        first = false;
        render(out, k);
        out += " |-> ";
        render(out, x);
      }
      out += "]";
      break;
    }
  }
}

}  // namespace

Value Value::decode(std::string_view bytes) {
  Decoder d(bytes);
  Value v = d.value();
  if (!d.done()) throw std::invalid_argument("decode: trailing bytes");
  return v;
}

std::string Value::to_string() const {
  std::string out;
  render(out, *this);
  return out;
}

bool value_eq(const Value& a, const Value& b) { return a == b; }
std::uint64_t value_hash(const Value& v) { return v.hash(); }
const std::string& canonical_encode(const Value& v) { return v.encoding(); }

}  // namespace timebox
