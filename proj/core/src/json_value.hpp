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

#include <json.hpp>

#include "timebox/trace.hpp"
#include "timebox/value.hpp"

namespace timebox::detail {

// Booleans, integers and strings map to native JSON; composites are tagged
// single-key objects: {"set":[..]}, {"tup":[..]}, {"map":[[k,v],..]}.
nlohmann::json value_to_json(const Value& v);
Value value_from_json(const nlohmann::json& j);

// One TBX1 action record.
nlohmann::json action_to_json(const TimeboxedAction& a);
TimeboxedAction action_from_json(const nlohmann::json& j);

}  // namespace timebox::detail
