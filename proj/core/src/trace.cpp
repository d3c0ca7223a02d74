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

#include "timebox/trace.hpp"

#include <numeric>

namespace timebox {

std::string TimeboxedAction::label() const {
  std::string out = op + "(";
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (k) out += ", ";
    out += args[k].to_string();
  }
  return out + ")";
}

std::size_t Trace::total_actions() const {
  std::size_t n = 0;
  for (const auto& seq : threads) n += seq.size();
  return n;
}

const TimeboxedAction& Trace::at(ActionRef ref) const {
  if (ref.thread >= threads.size() || ref.index >= threads[ref.thread].size()) {
    throw std::out_of_range("action ref (" + std::to_string(ref.thread) + ", " +
                            std::to_string(ref.index) + ") outside trace");
  }
  return threads[ref.thread][ref.index];
}

std::size_t VectorTimestamp::depth() const {
  return std::accumulate(idx_.begin(), idx_.end(), std::size_t{0});
}

bool VectorTimestamp::in_bounds(const Trace& tr) const {
  if (idx_.size() != tr.thread_count()) return false;
  for (std::size_t t = 0; t < idx_.size(); ++t) {
    if (idx_[t] > tr.threads[t].size()) return false;
  }
  return true;
}

bool VectorTimestamp::all_exhausted(const Trace& tr) const {
  for (std::size_t t = 0; t < idx_.size(); ++t) {
    if (idx_[t] < tr.threads[t].size()) return false;
  }
  return true;
}

VectorTimestamp VectorTimestamp::advanced(const Trace& tr, ThreadId t) const {
  if (t >= idx_.size() || exhausted(tr, t)) {
    throw std::out_of_range("cannot advance thread " + std::to_string(t));
  }
  VectorTimestamp next = *this;
  ++next.idx_[t];
  return next;
}

std::uint64_t VectorTimestamp::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (auto x : idx_) {
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::string Violation::to_string() const {
  return "thread " + std::to_string(thread) + " action " + std::to_string(index) + " [" +
         rule + "]: " + message;
}

namespace {
std::string describe(const std::vector<Violation>& vs) {
  std::string out = "trace validation failed";
  for (const auto& v : vs) out += "\n  " + v.to_string();
  return out;
}
}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(describe(violations)), violations_(std::move(violations)) {}

std::vector<Violation> validate_trace(const Trace& tr) {
  std::vector<Violation> out;
  for (ThreadId t = 0; t < tr.threads.size(); ++t) {
    const auto& seq = tr.threads[t];
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const auto& a = seq[i];
      if (a.thread != t) {
        out.push_back({t, i, "thread-id",
                       "action claims thread " + std::to_string(a.thread)});
      }
      if (a.start_ns > a.end_ns) {
        out.push_back({t, i, "box-order",
                       "end " + std::to_string(a.end_ns) + " precedes start " +
                           std::to_string(a.start_ns)});
      }
      if (a.refined_ns && (*a.refined_ns < a.start_ns || *a.refined_ns > a.end_ns)) {
        out.push_back({t, i, "refined-outside-box",
                       "refined point " + std::to_string(*a.refined_ns) + " outside [" +
                           std::to_string(a.start_ns) + ", " + std::to_string(a.end_ns) + "]"});
      }
      if (i > 0 && seq[i - 1].end_ns > a.start_ns) {
        out.push_back({t, i, "thread-overlap",
                       "starts at " + std::to_string(a.start_ns) +
                           " before previous action ends at " + std::to_string(seq[i - 1].end_ns)});
      }
    }
  }
  return out;
}

void require_valid(const Trace& tr) {
  auto vs = validate_trace(tr);
  if (!vs.empty()) throw ValidationError(std::move(vs));
}

Trace shrink_timeboxes(const Trace& tr) {
  require_valid(tr);
  Trace out = tr;
  for (auto& seq : out.threads) {
    for (auto& a : seq) {
      if (a.refined_ns) {
        a.start_ns = *a.refined_ns;
        a.end_ns = *a.refined_ns;
      }
    }
  }
  require_valid(out);
  return out;
}

}  // namespace timebox
