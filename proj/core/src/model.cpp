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

#include "timebox/model.hpp"

#include "timebox/errors.hpp"
#include "timebox/models.hpp"

namespace timebox {

OpId ModelSpec::op_id(std::string_view op) const {
  auto sig = signature();
  for (OpId k = 0; k < sig.size(); ++k) {
    if (sig[k].name == op) return k;
  }
  throw SpecificationError("model '" + std::string(name()) + "' has no action '" +
                           std::string(op) + "'");
}

std::vector<Value> ModelSpec::step(const Value& state, std::string_view op,
                                   std::span<const Value> args) const {
  OpId id = op_id(op);
  const auto& sig = signature()[id];
  if (args.size() != sig.arity()) {
    throw SpecificationError(std::string(op) + " takes " + std::to_string(sig.arity()) +
                             " arguments, got " + std::to_string(args.size()));
  }
  return step(state, id, args);
}

std::vector<std::string> model_names() {
  return {std::string(AtomicQueue::kName), std::string(OrderedMapRange::kName),
          std::string(PerProducerFifo::kName)};
}

std::unique_ptr<ModelSpec> make_model(std::string_view name) {
  if (name == AtomicQueue::kName) return std::make_unique<AtomicQueue>();
  if (name == OrderedMapRange::kName) return std::make_unique<OrderedMapRange>();
  if (name == PerProducerFifo::kName) return std::make_unique<PerProducerFifo>();
  throw SpecificationError("unknown model '" + std::string(name) + "'");
}

std::vector<ActionTemplate> enabled_actions_hint(const ModelSpec& spec, const Value& state,
                                                 std::span<const Value> universe) {
  return spec.enabled_actions_hint(state, universe);
}

}  // namespace timebox
