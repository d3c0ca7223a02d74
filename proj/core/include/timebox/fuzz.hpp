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
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "timebox/trace.hpp"
#include "timebox/value.hpp"

namespace timebox::fuzz {

/// Nanoseconds on the process-wide monotonic clock shared by all threads.
std::int64_t now_ns();

/// Random micro-delays at yield points: with `probability`, stall for a
/// uniform delay in [0, max_delay_ns].
struct JitterConfig {
  double probability = 0;
  std::int64_t max_delay_ns = 0;
};

struct RunConfig {
  std::string model;
  std::size_t threads = 1;
  std::size_t ops_per_thread = 0;
  std::uint64_t seed = 0;
  std::size_t value_universe_size = 16;
  std::optional<JitterConfig> jitter;
};

/// A yield point. Stalls the calling worker according to its jitter
/// settings; a no-op outside fuzzing workers or with jitter off.
void yield_point();

enum class StubResult { Recorded, Unsupported };

/**
 * Per-worker recording state handed to each stub call.
 *
 * A stub picks its inputs, runs exactly one call on the system under test
 * inside timed(), then records the action with its observed results:
 *
 *   auto v = ctx.pick_value();
 *   ctx.timed([&] { sut.enqueue(v.as_int()); });
 *   return ctx.record("Enqueue", {v});
 *
 * Argument values should be built outside timed() so the box covers only
 * the call itself.
 */
class ThreadContext {
 public:
  ThreadContext(ThreadId thread, const RunConfig& cfg);

  ThreadId thread() const { return thread_; }
  std::size_t thread_count() const { return cfg_.threads; }
  std::mt19937_64& rng() { return rng_; }

  /// Uniform integer value from the configured universe [0, size).
  Value pick_value();
  std::int64_t pick_payload();
  std::int64_t pick_int(std::int64_t lo, std::int64_t hi);

  template <class F>
  decltype(auto) timed(F&& call) {
    if constexpr (std::is_void_v<std::invoke_result_t<F>>) {
      box_start_ = now_ns();
      std::forward<F>(call)();
      box_end_ = now_ns();
      have_box_ = true;
    } else {
      box_start_ = now_ns();
      auto result = std::forward<F>(call)();
      box_end_ = now_ns();
      have_box_ = true;
      return result;
    }
  }

  /// Records the most recent timed() box. `refined_ns` is an instant inside
  /// the box where the call is known to have taken effect.
  StubResult record(std::string op, std::vector<Value> args,
                    std::optional<std::int64_t> refined_ns = std::nullopt);

  /// For stubs with no binding yet.
  StubResult unsupported() { return StubResult::Unsupported; }

  std::vector<TimeboxedAction> take_actions() { return std::move(actions_); }

  void jitter_point();

 private:
  ThreadId thread_;
  const RunConfig& cfg_;
  std::mt19937_64 rng_;
  std::mt19937_64 jitter_rng_;
  std::vector<TimeboxedAction> actions_;
  std::int64_t box_start_ = 0;
  std::int64_t box_end_ = 0;
  bool have_box_ = false;
};

using Stub = std::function<StubResult(ThreadContext&)>;

struct StubEntry {
  std::string op;
  Stub fn;
  double weight = 1.0;  // relative pick probability, > 0
};

struct RunResult {
  Trace trace;
  /// Calls per op name whose stub reported Unsupported.
  std::map<std::string, std::size_t> unsupported;
};

/**
 * Runs cfg.threads workers, each making cfg.ops_per_thread stub calls chosen
 * uniformly from `stubs` with a per-thread seeded generator, then merges
 * their buffers into one trace. An exception in any worker is rethrown
 * after all workers stop.
 */
RunResult run(const RunConfig& cfg, const std::vector<StubEntry>& stubs);

/// Entry point for generated fuzzer templates: parses
/// `--threads N --ops N --seed N [--universe N] [--jitter p,ns] -o PATH`,
/// runs, writes a TBX1 trace and reports unsupported stubs on stderr.
int template_main(int argc, char** argv, const std::string& model,
                  const std::vector<StubEntry>& stubs);

/// Parses "p,max_ns". Throws std::invalid_argument.
JitterConfig parse_jitter(const std::string& text);

}  // namespace timebox::fuzz
