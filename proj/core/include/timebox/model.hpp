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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "timebox/value.hpp"

namespace timebox {

/// One argument slot of an action. `kind` is a hint; nullopt means any.
struct ArgHint {
  std::string name;
  std::optional<ValueKind> kind;
};

struct OpSignature {
  std::string name;
  std::vector<ArgHint> args;

  std::size_t arity() const { return args.size(); }
};

using OpId = std::size_t;

/// A concrete action a model could take: op name plus arguments.
struct ActionTemplate {
  std::string op;
  std::vector<Value> args;

  bool operator==(const ActionTemplate&) const = default;
};

/**
 * A nondeterministic state machine that traces are checked against.
 *
 * States are Values; a model's state is its own rendering. `step` returns
 * every successor of `state` under `op(args)`, and the empty set exactly when
 * the action's guard fails. Return values observed by the implementation are
 * passed as arguments and checked in the guard, so observers such as
 * `Dequeue(v)` or `Find(k, result)` are disabled unless the recorded result
 * matches.
 *
 * Implementations must be stateless: `step` is called concurrently.
 */
class ModelSpec {
 public:
  virtual ~ModelSpec() = default;

  virtual std::string_view name() const = 0;
  virtual std::span<const OpSignature> signature() const = 0;
  virtual std::vector<Value> initial_states() const = 0;

  /// Throws SpecificationError on ill-kinded arguments.
  virtual std::vector<Value> step(const Value& state, OpId op,
                                  std::span<const Value> args) const = 0;

  /// Fingerprint used to decide when two states are the same search node.
  virtual std::string view(const Value& state) const { return state.encoding(); }

  /// Actions worth trying from `state`, drawing free arguments from
  /// `universe`. Fuzzing aid only; never consulted when checking.
  virtual std::vector<ActionTemplate> enabled_actions_hint(
      const Value& state, std::span<const Value> universe) const = 0;

  /// Throws SpecificationError for names not in the signature.
  OpId op_id(std::string_view op) const;

  /// Resolves `op` and checks arity before dispatching.
  std::vector<Value> step(const Value& state, std::string_view op,
                          std::span<const Value> args) const;
};

/// Names accepted by make_model: "queue", "omaprange", "ppfifo".
std::vector<std::string> model_names();

/// Throws SpecificationError for unknown names.
std::unique_ptr<ModelSpec> make_model(std::string_view name);

std::vector<ActionTemplate> enabled_actions_hint(const ModelSpec& spec, const Value& state,
                                                 std::span<const Value> universe);

}  // namespace timebox
