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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "random_traces.hpp"
#include "timebox/errors.hpp"
#include "timebox/linearizer.hpp"
#include "timebox/models.hpp"
#include "timebox/oracle.hpp"
#include "timebox/workload.hpp"

namespace {

using namespace timebox;
using Clock = std::chrono::steady_clock;

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string fmt(double x, int prec = 2) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(prec);
  os << x;
  return os.str();
}

void three_thread_queue() {
  auto t0 = Clock::now();
  AtomicQueue q;
  auto bad = check(testing::three_thread_queue(3), q);
  auto good = check(testing::three_thread_queue(2), q);
  double s = seconds_since(t0);
  bool ok = bad.outcome == Outcome::Rejected && bad.max_depth == 3 && good.accepted() &&
            good.final_state == Value::tuple({Value::integer(1), Value::integer(3)}) &&
            replay_witness(testing::three_thread_queue(2), q, good.witness) && s < 1.0;
  report(ok, "three-thread-queue-regression",
         std::string("failing trace ") + (bad.accepted() ? "accepted" : "rejected") +
             " max_depth=" + std::to_string(bad.max_depth) + "; Dequeue(2) variant " +
             (good.accepted() ? "accepted" : "rejected") + " final=" +
             (good.final_state ? good.final_state->to_string() : "none") + "; " + fmt(s, 4) + " s");
}

struct Corpus {
  std::string model;
  std::vector<Trace> traces;
  std::vector<bool> accepted;
};

std::vector<Corpus> build_corpus() {
  std::vector<Corpus> out;
  std::uint64_t seed = 1000;
  for (const auto& name : model_names()) {
    auto spec = make_model(name);
    testing::RandomTraces gen(*spec, seed++);
    Corpus c{name, {}, {}};
    for (int n = 0; n < 1000; ++n) c.traces.push_back(gen.next());
    out.push_back(std::move(c));
  }
  return out;
}

void oracle_equivalence(std::vector<Corpus>& corpus) {
  auto t0 = Clock::now();
  std::size_t total = 0, agree = 0, accepts = 0;
  for (auto& c : corpus) {
    auto spec = make_model(c.model);
    for (const auto& tr : c.traces) {
      bool got = check(tr, *spec).accepted();
      bool want = oracle_check(tr, *spec) == OracleVerdict::Accept;
      c.accepted.push_back(got);
      ++total;
      agree += got == want;
      accepts += want;
    }
  }
  double s = seconds_since(t0);
  report(agree == total && s < 120, "oracle-equivalence",
         std::to_string(agree) + "/" + std::to_string(total) + " agree (" +
             std::to_string(accepts) + " linearizable) in " + fmt(s) + " s");
}

void combinatorial_count() {
  AtomicQueue q;
  bool ok = true;
  std::string detail;
  for (std::uint64_t n = 3; n <= 5; ++n) {
    std::uint64_t want = 0;
    for (std::uint64_t k = 0; k <= n; ++k) {
      std::uint64_t term = 1;
      for (std::uint64_t j = n - k + 1; j <= n; ++j) term *= j;
      want += term;
    }
    auto got = check(testing::overlapping_enqueues(n), q).stats.nodes_explored;
    ok &= got == want;
    detail += "n=" + std::to_string(n) + " " + std::to_string(got) + "/" + std::to_string(want) + " ";
  }
  report(ok, "combinatorial-frontier", detail);
}

// A per-producer order violation: some counterexample is stuck on a dequeue
// whose value is queued for its producer, but behind that producer's head.
bool shows_per_producer_reorder(const Trace& tr, const Verdict& v) {
  for (const auto& ce : v.counterexamples) {
    const Value& state = ce.final_state();
    for (auto ref : ce.stuck) {
      const auto& a = tr.at(ref);
      std::vector<Value> taken;
      if (a.op == "DequeueBulk") {
        taken.assign(a.args[0].elements().begin(), a.args[0].elements().end());
      } else if (a.op == "Dequeue") {
        taken.push_back(a.args[0]);
      }
      if (taken.empty()) continue;
      const Value* q = state.find(taken.front().elements()[0]);
      if (!q || q->elements().front() == taken.front()) continue;
      auto xs = q->elements();
      if (std::find(xs.begin() + 1, xs.end(), taken.front()) != xs.end()) return true;
    }
  }
  return false;
}

// Scheduling jitter used for every bug run. On a single core, races in the
// reference structures are rarely exercised without it.
constexpr fuzz::JitterConfig kBugJitter{0.1, 15'000};

struct PinnedBug {
  BugId bug;
  std::uint64_t seed;
};

// First rejecting seed observed when these were pinned. Thread scheduling is
// not replayed, so a pinned seed is tried first and the search continues
// through the remaining attempts if it happens to pass.
constexpr PinnedBug kPinned[] = {
    {BugId::Q1_READ_UNLOCKED, 1},   {BugId::Q2_RETURN_BEFORE_LINEARIZED, 1},
    {BugId::Q3_LOST_ELEMENT, 1},    {BugId::M1_READ_MUTABLE, 2},
    {BugId::M2_FUTURE_SNAPSHOT, 4}, {BugId::M3_EARLY_FAILED_UPDATE, 1},
    {BugId::S1_BATCH_SPLIT, 1},
};

void bug_detection() {
  for (const auto& [bug, pinned] : kPinned) {
    std::string model(bug_model(bug));
    auto spec = make_model(model);
    std::vector<std::uint64_t> order = {pinned};
    for (std::uint64_t s = 1; order.size() < 20; ++s) {
      if (s != pinned) order.push_back(s);
    }
    std::optional<std::uint64_t> hit;
    int attempts = 0;
    bool reorder_shown = false;
    for (auto seed : order) {
      WorkloadConfig cfg;
      cfg.model = model;
      cfg.threads = 4;
      cfg.ops_per_thread = 1000;
      cfg.seed = seed;
      cfg.bug = bug;
      cfg.jitter = kBugJitter;
      auto tr = record_run(cfg);
      ++attempts;
      auto v = check(tr, *spec);
      if (v.accepted()) continue;
      if (bug == BugId::S1_BATCH_SPLIT && !shows_per_producer_reorder(tr, v)) continue;
      reorder_shown = true;
      hit = seed;
      break;
    }
    std::string detail = hit ? "rejected at seed " + std::to_string(*hit) + " after " +
                                   std::to_string(attempts) + " attempt(s), pinned seed " +
                                   std::to_string(pinned) +
                                   (*hit == pinned ? " reproduced" : " passed this time")
                             : "no rejection in " + std::to_string(attempts) + " attempts";
    if (bug == BugId::S1_BATCH_SPLIT && hit && reorder_shown) {
      detail += "; counterexample stuck on a dequeue behind its producer's head";
    }
    report(hit.has_value(), std::string("bug-detection ") + std::string(bug_name(bug)), detail);
  }
}

long max_rss_kb() {
  rusage ru{};
  getrusage(RUSAGE_SELF, &ru);
  return ru.ru_maxrss;
}

void scale() {
  WorkloadConfig cfg;
  cfg.model = "queue";
  cfg.threads = 5;
  cfg.ops_per_thread = 20'000;
  cfg.seed = 1;
  auto tr = record_run(cfg);
  AtomicQueue q;
  CheckOptions opts;
  opts.memory_budget_bytes = std::size_t{16} << 30;
  auto t0 = Clock::now();
  bool accepted = false;
  std::string detail;
  try {
    auto v = check(tr, q, opts);
    accepted = v.accepted();
    detail = std::to_string(tr.total_actions()) + " actions " +
             (accepted ? "accepted" : "rejected") + " in " + fmt(seconds_since(t0)) +
             " s, nodes=" + std::to_string(v.stats.nodes_explored) +
             ", peak estimate " + fmt(double(v.stats.peak_memory_estimate) / (1 << 20), 1) + " MiB";
  } catch (const ResourceError& e) {
    detail = e.what();
  }
  double s = seconds_since(t0);
  long rss = max_rss_kb();
  detail += ", max RSS " + fmt(double(rss) / 1024, 1) + " MiB";
  report(accepted && s < 600 && rss < 16L * 1024 * 1024, "scale-100k", detail);
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  return xs[xs.size() / 2];
}

// Least-squares slope of log(nodes) against log(ops). Exponential growth in
// trace length shows up as a slope that keeps climbing with size; a bounded
// polynomial degree is the sub-exponential shape.
void node_growth() {
  const std::vector<std::size_t> sizes = {1000, 2000, 4000, 8000, 16000, 32000};
  std::vector<double> lx, ly;
  std::string detail;
  AtomicQueue q;
  for (auto n : sizes) {
    std::vector<double> nodes;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      WorkloadConfig cfg;
      cfg.model = "queue";
      cfg.threads = 4;
      cfg.ops_per_thread = n / 4;
      cfg.seed = seed;
      cfg.jitter = kBugJitter;
      auto v = check(record_run(cfg), q);
      if (!v.accepted()) {
        report(false, "node-growth", "jittered correct trace rejected at " + std::to_string(n));
        return;
      }
      nodes.push_back(double(v.stats.nodes_explored));
    }
    double m = median(nodes);
    lx.push_back(std::log(double(n)));
    ly.push_back(std::log(m));
    detail += std::to_string(n) + ":" + fmt(m, 0) + " ";
  }
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < lx.size(); ++k) mx += lx[k], my += ly[k];
  mx /= double(lx.size());
  my /= double(ly.size());
  double num = 0, den = 0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    num += (lx[k] - mx) * (ly[k] - my);
    den += (lx[k] - mx) * (lx[k] - mx);
  }
  double slope = num / den;
  report(slope <= 1.5, "node-growth",
         "median nodes " + detail + "; log-log slope " + fmt(slope) + " (<= 1.5)");
}

void view_soundness(const std::vector<Corpus>& corpus) {
  CheckOptions lossy;
  lossy.view = [](const Value&) { return std::string("constant"); };
  std::size_t rejected = 0, flipped = 0;
  for (const auto& c : corpus) {
    auto spec = make_model(c.model);
    for (std::size_t k = 0; k < c.traces.size(); ++k) {
      if (c.accepted[k]) continue;
      ++rejected;
      flipped += check(c.traces[k], *spec, lossy).accepted();
    }
  }
  report(flipped == 0, "view-soundness",
         std::to_string(flipped) + " of " + std::to_string(rejected) +
             " rejected traces accepted under a constant view");
}

void monotone_narrowing() {
  std::size_t traces = 0, rejected = 0, flipped = 0, with_refined = 0;
  std::uint64_t seed = 77;
  for (const auto& name : model_names()) {
    auto spec = make_model(name);
    testing::RandomTraces gen(*spec, seed++, {.refined = true});
    while (traces < 200 * (seed - 77)) {
      auto tr = gen.next();
      bool any = false;
      for (const auto& seq : tr.threads) {
        for (const auto& a : seq) any |= a.refined_ns.has_value();
      }
      if (!any) continue;
      ++traces;
      ++with_refined;
      auto narrow = shrink_timeboxes(tr);
      bool before = check(tr, *spec).accepted();
      bool after = check(narrow, *spec).accepted();
      bool after_oracle = oracle_check(narrow, *spec) == OracleVerdict::Accept;
      if (!before) ++rejected;
      if (!before && (after || after_oracle)) ++flipped;
    }
  }
  report(flipped == 0, "monotone-narrowing",
         std::to_string(flipped) + " flips over " + std::to_string(traces) +
             " traces with refined points (" + std::to_string(rejected) + " rejected before)");
}

struct Row {
  std::size_t ops, threads;
  std::string verdict;
  double wall_ms;
  double nodes;
};

std::vector<Row> run_bench(const std::vector<std::string>& args, const std::filesystem::path& csv) {
  std::ostringstream out, err;
  std::vector<std::string> full = {"bench"};
  full.insert(full.end(), args.begin(), args.end());
  full.push_back("-o");
  full.push_back(csv.string());
  if (cli::run_cli(full, out, err) != cli::kOk) {
    throw std::runtime_error("bench failed: " + err.str());
  }
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string f[7];
    for (auto& x : f) std::getline(ls, x, ',');
    rows.push_back({std::stoul(f[0]), std::stoul(f[1]), f[3], std::stod(f[4]), std::stod(f[5])});
  }
  return rows;
}

void bench_sweep(const std::filesystem::path& out_dir) {
  auto ops_csv = out_dir / "bench_ops.csv";
  auto threads_csv = out_dir / "bench_threads.csv";
  auto ops = run_bench({"--model", "queue", "--threads", "5", "--ops", "500..450000", "--seeds", "3"},
                       ops_csv);
  auto threads = run_bench({"--model", "queue", "--sweep-threads", "1..50", "--ops-per-thread",
                            "100", "--seeds", "3"},
                           threads_csv);

  std::map<std::size_t, std::vector<double>> by_size, per_action, us_per_node;
  bool all_accepted = true;
  for (const auto& r : ops) {
    all_accepted &= r.verdict == "accepted";
    by_size[r.ops].push_back(r.wall_ms);
    per_action[r.ops].push_back(r.nodes / double(r.ops));
    us_per_node[r.ops].push_back(r.wall_ms * 1000 / r.nodes);
  }
  for (const auto& r : threads) all_accepted &= r.verdict == "accepted";

  double worst = 0;
  std::string detail;
  std::optional<double> prev;
  for (const auto& [n, ts] : by_size) {
    double m = median(ts);
    if (prev) worst = std::max(worst, m / std::max(*prev, 1e-3));
    prev = m;
    detail += std::to_string(n) + ":" + fmt(m, 1) + "ms ";
  }
  // Diagnostics: wall time tracks the node count, so a jump in the ratio
  // comes from wider traces, while a jump in cost per node would be the checker.
  std::string shape;
  for (const auto& [n, xs] : per_action) {
    shape += std::to_string(n) + ":" + fmt(median(xs), 1) + "n/" + fmt(median(us_per_node[n]), 2) +
             "us ";
  }
  std::size_t max_threads = 0;
  for (const auto& r : threads) max_threads = std::max(max_threads, r.threads);
  bool covers = by_size.begin()->first == 500 && by_size.rbegin()->first == 450000 &&
                max_threads == 50;
  report(all_accepted && covers && worst <= 5.0, "bench-sweep",
         "ops sweep " + detail + "; worst doubling ratio " + fmt(worst) + "x (<= 5); median nodes per action / us per node " + shape + "; " +
             std::to_string(threads.size()) + " thread-sweep rows up to " +
             std::to_string(max_threads) + " threads; CSV in " + out_dir.string());
}

}  // namespace

int main(int argc, char** argv) {
  std::filesystem::path out_dir = argc > 1 ? argv[1] : ".";
  std::filesystem::create_directories(out_dir);
  auto corpus = build_corpus();
  three_thread_queue();
  oracle_equivalence(corpus);
  combinatorial_count();
  bug_detection();
  scale();
  node_growth();
  view_soundness(corpus);
  monotone_narrowing();
  bench_sweep(out_dir);
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAIL") << std::endl;
  return failures == 0 ? 0 : 1;
}
