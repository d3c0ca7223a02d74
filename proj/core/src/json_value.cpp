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

#include "json_value.hpp"

#include <stdexcept>

namespace timebox::detail {

using nlohmann::json;

json value_to_json(const Value& v) {
  switch (v.kind()) {
    case ValueKind::Bool: return v.as_bool();
    case ValueKind::Int: return v.as_int();
    case ValueKind::Str: return v.as_string();
    case ValueKind::Set:
    case ValueKind::Tuple: {
      json arr = json::array();
      for (const auto& e : v.elements()) arr.push_back(value_to_json(e));
      return json{{v.is(ValueKind::Set) ? "set" : "tup", std::move(arr)}};
    }
    case ValueKind::Map: {
      json arr = json::array();
      for (const auto& [k, x] : v.entries()) {
        arr.push_back(json::array({value_to_json(k), value_to_json(x)}));
      }
      return json{{"map", std::move(arr)}};
    }
  }
  throw std::logic_error("unreachable value kind");
}

Value value_from_json(const json& j) {
  if (j.is_boolean()) return Value::boolean(j.get<bool>());
  if (j.is_number_integer()) return Value::integer(j.get<std::int64_t>());
  if (j.is_string()) return Value::string(j.get<std::string>());
  if (j.is_object() && j.size() == 1) {
    auto it = j.begin();
    const std::string& tag = it.key();
    const json& body = it.value();
    if (!body.is_array()) throw std::invalid_argument("'" + tag + "' body must be an array");
    if (tag == "set" || tag == "tup") {
      std::vector<Value> xs;
      xs.reserve(body.size());
      for (const auto& e : body) xs.push_back(value_from_json(e));
      return tag == "set" ? Value::set(std::move(xs)) : Value::tuple(std::move(xs));
    }
    if (tag == "map") {
      std::vector<Value::Entry> es;
      es.reserve(body.size());
      for (const auto& e : body) {
        if (!e.is_array() || e.size() != 2) {
          throw std::invalid_argument("map entry must be a [key, value] pair");
        }
        es.emplace_back(value_from_json(e[0]), value_from_json(e[1]));
      }
      return Value::map(std::move(es));
    }
  }
  throw std::invalid_argument("not a value: " + j.dump());
}

json action_to_json(const TimeboxedAction& a) {
  json args = json::array();
  for (const auto& v : a.args) args.push_back(value_to_json(v));
  json rec = {{"t", a.thread}, {"op", a.op}, {"args", std::move(args)},
              {"s", a.start_ns}, {"e", a.end_ns}};
  if (a.refined_ns) rec["r"] = *a.refined_ns;
  return rec;
}

namespace {
std::int64_t required_int(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number_integer()) {
    throw std::invalid_argument(std::string("missing integer field '") + key + "'");
  }
  return it->get<std::int64_t>();
}
}  // namespace

TimeboxedAction action_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("record must be an object");
  TimeboxedAction a;
  auto t = required_int(j, "t");
  if (t < 0) throw std::invalid_argument("negative thread id");
  a.thread = static_cast<ThreadId>(t);
  auto op = j.find("op");
  if (op == j.end() || !op->is_string()) throw std::invalid_argument("missing string field 'op'");
  a.op = op->get<std::string>();
  auto args = j.find("args");
  if (args == j.end() || !args->is_array()) {
    throw std::invalid_argument("missing array field 'args'");
  }
  for (const auto& v : *args) a.args.push_back(value_from_json(v));
  a.start_ns = required_int(j, "s");
  a.end_ns = required_int(j, "e");
  if (j.contains("r")) a.refined_ns = required_int(j, "r");
  return a;
}

}  // namespace timebox::detail
