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

#include "timebox/fuzz.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <exception>
#include <iostream>
#include <latch>
#include <thread>

#include "timebox/trace_io.hpp"

namespace timebox::fuzz {

namespace {

thread_local ThreadContext* current_context = nullptr;

std::uint64_t substream_seed(std::uint64_t seed, ThreadId thread, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(thread), static_cast<std::uint32_t>(stream)};
  std::uint64_t out[1];
  seq.generate(reinterpret_cast<std::uint32_t*>(out), reinterpret_cast<std::uint32_t*>(out + 1));
  return out[0];
}

}  // namespace

std::int64_t now_ns() {
  static const auto epoch = std::chrono::steady_clock::now();
  return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() -
                                                              epoch)
      .count();
}

void yield_point() {
  if (current_context) current_context->jitter_point();
}

JitterConfig parse_jitter(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("jitter must be 'p,max_ns'");
  JitterConfig j;
  try {
    j.probability = std::stod(text.substr(0, comma));
    j.max_delay_ns = std::stoll(text.substr(comma + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("jitter must be 'p,max_ns', got '" + text + "'");
  }
  if (j.probability < 0 || j.probability > 1 || j.max_delay_ns < 0) {
    throw std::invalid_argument("jitter probability must be in [0,1] and delay >= 0");
  }
  return j;
}

ThreadContext::ThreadContext(ThreadId thread, const RunConfig& cfg)
    : thread_(thread),
      cfg_(cfg),
      rng_(substream_seed(cfg.seed, thread, 0)),
      jitter_rng_(substream_seed(cfg.seed, thread, 1)) {}

Value ThreadContext::pick_value() { return Value::integer(pick_payload()); }

std::int64_t ThreadContext::pick_payload() {
  return pick_int(0, static_cast<std::int64_t>(cfg_.value_universe_size) - 1);
}

std::int64_t ThreadContext::pick_int(std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
}

StubResult ThreadContext::record(std::string op, std::vector<Value> args,
                                 std::optional<std::int64_t> refined_ns) {
  if (!have_box_) throw std::logic_error("record(" + op + ") without a timed() call");
  have_box_ = false;
  if (refined_ns && (*refined_ns < box_start_ || *refined_ns > box_end_)) refined_ns.reset();
  actions_.push_back(
      {std::move(op), std::move(args), thread_, box_start_, box_end_, refined_ns});
  return StubResult::Recorded;
}

void ThreadContext::jitter_point() {
  if (!cfg_.jitter || cfg_.jitter->probability <= 0) return;
  if (std::uniform_real_distribution<double>(0, 1)(jitter_rng_) >= cfg_.jitter->probability) {
    return;
  }
  auto delay = std::uniform_int_distribution<std::int64_t>(0, cfg_.jitter->max_delay_ns)(jitter_rng_);
  if (delay >= 20'000) {
    std::this_thread::sleep_for(std::chrono::nanoseconds(delay));
    return;
  }
  auto until = now_ns() + delay;
  do {
    std::this_thread::yield();
  } while (now_ns() < until);
}

RunResult run(const RunConfig& cfg, const std::vector<StubEntry>& stubs) {
  if (cfg.threads == 0) throw std::invalid_argument("need at least one thread");
  if (cfg.value_universe_size == 0) throw std::invalid_argument("value universe must be nonempty");
  if (stubs.empty() && cfg.ops_per_thread > 0) throw std::invalid_argument("no stubs to call");

  std::vector<double> weights;
  for (const auto& s : stubs) {
    if (!(s.weight > 0)) throw std::invalid_argument("stub weight must be positive: " + s.op);
    weights.push_back(s.weight);
  }

  std::vector<std::vector<TimeboxedAction>> buffers(cfg.threads);
  std::vector<std::map<std::string, std::size_t>> unsupported(cfg.threads);
  std::vector<std::exception_ptr> errors(cfg.threads);
  std::latch start(static_cast<std::ptrdiff_t>(cfg.threads));
  {
    std::vector<std::jthread> workers;
    for (ThreadId t = 0; t < cfg.threads; ++t) {
      workers.emplace_back([&, t] {
        ThreadContext ctx(t, cfg);
        std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
        current_context = &ctx;
        start.arrive_and_wait();
        try {
          for (std::size_t k = 0; k < cfg.ops_per_thread; ++k) {
            const auto& stub = stubs[pick(ctx.rng())];
            if (stub.fn(ctx) == StubResult::Unsupported) ++unsupported[t][stub.op];
          }
        } catch (...) {
          errors[t] = std::current_exception();
        }
        current_context = nullptr;
        buffers[t] = ctx.take_actions();
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  RunResult out;
  out.trace.threads = std::move(buffers);
  out.trace.meta.model = cfg.model;
  out.trace.meta.seed = cfg.seed;
  out.trace.meta.recorder_version = kRecorderVersion;
  for (const auto& per_thread : unsupported) {
    for (const auto& [op, n] : per_thread) out.unsupported[op] += n;
  }
  return out;
}

int template_main(int argc, char** argv, const std::string& model,
                  const std::vector<StubEntry>& stubs) {
  CLI::App app{"timebox fuzzer for model '" + model + "'"};
  RunConfig cfg;
  cfg.model = model;
  std::string output, jitter;
  app.add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--ops", cfg.ops_per_thread, "operations per thread");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--universe", cfg.value_universe_size, "distinct values")->check(CLI::PositiveNumber);
  app.add_option("--jitter", jitter, "p,max_ns scheduling jitter");
  app.add_option("-o,--output", output, "TBX1 output path")->required();
  try {
    app.parse(argc, argv);
    if (!jitter.empty()) cfg.jitter = parse_jitter(jitter);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }

  auto result = run(cfg, stubs);
  for (const auto& [op, n] : result.unsupported) {
    std::cerr << "UNSUPPORTED " << op << ": " << n << " call(s) skipped\n";
  }
  write_trace_file(result.trace, output);
  std::cerr << "wrote " << result.trace.total_actions() << " actions to " << output << '\n';
  return 0;
}

}  // namespace timebox::fuzz
