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

#include "timebox/oracle.hpp"

#include <cstdint>
#include <vector>

namespace timebox {

namespace {

class Enumerator {
 public:
  Enumerator(const Trace& tr, const ModelSpec& spec) : spec_(spec) {
    for (const auto& seq : tr.threads) {
      for (const auto& a : seq) actions_.push_back(&a);
    }
    const std::size_t n = actions_.size();
    must_follow_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        const auto& x = *actions_[a];
        const auto& y = *actions_[b];
        bool thread_order = x.thread == y.thread && a < b;
        bool real_time = x.end_ns < y.start_ns;
        if (thread_order || real_time) must_follow_[b] |= std::uint32_t{1} << a;
      }
    }
    all_ = n == 0 ? 0 : (std::uint32_t{1} << n) - 1;
  }

  bool search(const Value& state, std::uint32_t placed) const {
    if (placed == all_) return true;
    for (std::size_t a = 0; a < actions_.size(); ++a) {
      std::uint32_t bit = std::uint32_t{1} << a;
      if (placed & bit) continue;
      if ((must_follow_[a] & placed) != must_follow_[a]) continue;
      for (const auto& next : spec_.step(state, actions_[a]->op, actions_[a]->args)) {
        if (search(next, placed | bit)) return true;
      }
    }
    return false;
  }

 private:
  const ModelSpec& spec_;
  std::vector<const TimeboxedAction*> actions_;
  std::vector<std::uint32_t> must_follow_;
  std::uint32_t all_ = 0;
};

}  // namespace

OracleVerdict oracle_check(const Trace& tr, const ModelSpec& spec, std::size_t bound) {
  const std::size_t n = tr.total_actions();
  if (n > bound || n > 31) {
    throw ResourceError("oracle refuses a trace of " + std::to_string(n) +
                        " actions (bound " + std::to_string(bound) + ")");
  }
  require_valid(tr);
  Enumerator e(tr, spec);
  for (const auto& init : spec.initial_states()) {
    if (e.search(init, 0)) return OracleVerdict::Accept;
  }
  return OracleVerdict::Reject;
}

}  // namespace timebox
