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

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "timebox/graph_export.hpp"
#include "timebox/linearizer.hpp"
#include "timebox/oracle.hpp"
#include "timebox/trace_io.hpp"
#include "timebox/workload.hpp"

namespace timebox::cli {

namespace {

constexpr std::size_t kShownSteps = 20;

std::string ref_label(const Trace& tr, ActionRef r) {
  return "t" + std::to_string(r.thread) + "#" + std::to_string(r.index) + " " +
         tr.at(r).label();
}

std::unique_ptr<ModelSpec> resolve_model(const std::string& flag, const Trace& tr) {
  if (!flag.empty() && !tr.meta.model.empty() && flag != tr.meta.model) {
    throw std::invalid_argument("--model " + flag + " does not match trace model '" +
                                tr.meta.model + "'");
  }
  const std::string& name = flag.empty() ? tr.meta.model : flag;
  if (name.empty()) throw std::invalid_argument("no model given and trace header names none");
  return make_model(name);
}

void print_counterexample(std::ostream& out, const Trace& tr, const Counterexample& ce) {
  std::size_t first_state = ce.first_state_step();
  std::size_t from = ce.path.size() > kShownSteps ? ce.path.size() - kShownSteps : 0;
  from = std::max(from, first_state);
  if (from > 0) out << "    ... " << from << " earlier step(s)\n";
  else out << "    init " << ce.initial_state.to_string() << '\n';
  for (std::size_t k = from; k < ce.path.size(); ++k) {
    out << "    [" << k + 1 << "] " << ref_label(tr, ce.path[k]) << "  -> "
        << ce.states[k - first_state].to_string() << '\n';
  }
  for (auto r : ce.stuck) out << "    stuck: " << ref_label(tr, r) << '\n';
}

void print_verdict(std::ostream& out, const Trace& tr, const ModelSpec& spec, const Verdict& v) {
  out << (v.accepted() ? "ACCEPTED" : "REJECTED") << " model=" << spec.name()
      << " actions=" << tr.total_actions() << " max_depth=" << v.max_depth
      << " nodes=" << v.stats.nodes_explored << " transitions=" << v.stats.transitions
      << " peak_frontier=" << v.stats.peak_frontier << " wall_ms=" << std::fixed
      << std::setprecision(2) << v.stats.wall_ms << '\n';
  if (v.accepted()) {
    if (v.final_state) out << "final state: " << v.final_state->to_string() << '\n';
    if (v.witness.size() <= kShownSteps) {
      for (std::size_t k = 0; k < v.witness.size(); ++k) {
        out << "  [" << k + 1 << "] " << ref_label(tr, v.witness[k]) << '\n';
      }
    }
    return;
  }
  for (std::size_t k = 0; k < v.counterexamples.size(); ++k) {
    out << "counterexample " << k + 1 << "/" << v.counterexamples.size() << " (depth "
        << v.counterexamples[k].path.size() << "):\n";
    print_counterexample(out, tr, v.counterexamples[k]);
  }
}

struct Options {
  std::string model;
  std::string trace_path;
  std::string output;
  // record
  std::size_t threads = 1;
  std::size_t ops = 0;
  std::uint64_t seed = 0;
  std::size_t universe = 16;
  std::string bug;
  std::string jitter;
  // check / oracle
  std::string export_path;
  std::size_t max_ce = 10;
  unsigned parallelism = 1;
  std::size_t mem_cap_mb = 0;
  std::size_t bound = kDefaultOracleBound;
  // bench
  std::string ops_range = "500..450000";
  std::string thread_sweep;
  std::size_t ops_per_thread = 100;
  std::size_t seeds = 1;
};

int cmd_record(const Options& o, std::ostream& out) {
  WorkloadConfig cfg;
  cfg.model = o.model;
  cfg.threads = o.threads;
  cfg.ops_per_thread = o.ops;
  cfg.seed = o.seed;
  cfg.value_universe_size = o.universe;
  if (!o.bug.empty()) {
    cfg.bug = parse_bug(o.bug);
    if (!cfg.bug) throw std::invalid_argument("unknown bug '" + o.bug + "'");
  }
  if (!o.jitter.empty()) cfg.jitter = fuzz::parse_jitter(o.jitter);
  make_model(cfg.model);
  auto tr = record_run(cfg);
  write_trace_file(tr, o.output);
  out << "recorded " << tr.total_actions() << " actions on " << tr.thread_count()
      << " threads to " << o.output << '\n';
  return kOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  auto tr = read_trace_file(o.trace_path);
  auto spec = resolve_model(o.model, tr);
  CheckOptions opts;
  opts.max_counterexamples = o.max_ce;
  opts.parallelism = o.parallelism;
  if (o.mem_cap_mb) opts.memory_budget_bytes = o.mem_cap_mb * 1024 * 1024;
  StateGraph graph;
  auto v = check(tr, *spec, opts, o.export_path.empty() ? nullptr : &graph);
  print_verdict(out, tr, *spec, v);
  if (!o.export_path.empty()) {
    export_graph_file(graph, tr, v, spec->name(), o.export_path);
    out << "exported " << graph.nodes.size() << " nodes, " << graph.edges.size() << " edges to "
        << o.export_path << '\n';
  }
  return v.accepted() ? kOk : kRejected;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  auto tr = read_trace_file(o.trace_path);
  auto spec = resolve_model(o.model, tr);
  auto v = oracle_check(tr, *spec, o.bound);
  out << (v == OracleVerdict::Accept ? "ACCEPTED" : "REJECTED") << " model=" << spec->name()
      << " actions=" << tr.total_actions() << " (brute force)\n";
  return v == OracleVerdict::Accept ? kOk : kRejected;
}

int cmd_retime(const Options& o, std::ostream& out) {
  auto tr = read_trace_file(o.trace_path);
  auto shrunk = shrink_timeboxes(tr);
  std::size_t refined = 0;
  for (const auto& seq : tr.threads) {
    refined += std::count_if(seq.begin(), seq.end(), [](const auto& a) { return a.refined_ns.has_value(); });
  }
  write_trace_file(shrunk, o.output);
  out << "retimed " << refined << " of " << tr.total_actions() << " actions to " << o.output
      << '\n';
  return kOk;
}

void bench_row(std::ostream& csv, const Options& o, std::size_t threads, std::size_t per_thread,
               std::uint64_t seed) {
  WorkloadConfig cfg;
  cfg.model = o.model;
  cfg.threads = threads;
  cfg.ops_per_thread = per_thread;
  cfg.seed = seed;
  cfg.value_universe_size = o.universe;
  if (!o.jitter.empty()) cfg.jitter = fuzz::parse_jitter(o.jitter);
  auto tr = record_run(cfg);
  auto spec = make_model(o.model);
  CheckOptions opts;
  opts.parallelism = o.parallelism;
  if (o.mem_cap_mb) opts.memory_budget_bytes = o.mem_cap_mb * 1024 * 1024;
  auto v = check(tr, *spec, opts);
  csv << tr.total_actions() << ',' << threads << ',' << seed << ','
      << (v.accepted() ? "accepted" : "rejected") << ',' << std::fixed << std::setprecision(3)
      << v.stats.wall_ms << ',' << v.stats.nodes_explored << ',' << v.stats.peak_memory_estimate
      << '\n';
  csv.flush();
}

int cmd_bench(const Options& o, std::ostream& out) {
  make_model(o.model);
  std::ofstream file;
  if (!o.output.empty()) {
    file.open(o.output);
    if (!file) throw std::runtime_error("cannot write " + o.output);
  }
  std::ostream& csv = o.output.empty() ? out : file;
  csv << "ops,threads,seed,verdict,wall_ms,peak_nodes,peak_mem_estimate\n";
  if (!o.thread_sweep.empty()) {
    for (auto threads : doubling_range(o.thread_sweep)) {
      for (std::uint64_t s = 1; s <= o.seeds; ++s) bench_row(csv, o, threads, o.ops_per_thread, s);
    }
    return kOk;
  }
  for (auto total : doubling_range(o.ops_range)) {
    auto per_thread = std::max<std::size_t>(1, total / o.threads);
    for (std::uint64_t s = 1; s <= o.seeds; ++s) bench_row(csv, o, o.threads, per_thread, s);
  }
  return kOk;
}

int cmd_gen_template(const Options& o, std::ostream& out) {
  auto spec = make_model(o.model);
  std::ofstream file(o.output);
  if (!file) throw std::runtime_error("cannot write " + o.output);
  file << emit_fuzzer_template(*spec);
  out << "wrote " << spec->signature().size() << "-stub template for '" << spec->name()
      << "' to " << o.output << '\n';
  return kOk;
}

}  // namespace

std::vector<std::size_t> doubling_range(const std::string& spec) {
  auto dots = spec.find("..");
  try {
    if (dots == std::string::npos) return {static_cast<std::size_t>(std::stoull(spec))};
    std::size_t lo = std::stoull(spec.substr(0, dots));
    std::size_t hi = std::stoull(spec.substr(dots + 2));
    if (lo == 0 || hi < lo) throw std::invalid_argument("");
    std::vector<std::size_t> out;
    for (std::size_t x = lo; x < hi; x *= 2) out.push_back(x);
    out.push_back(hi);
    return out;
  } catch (const std::logic_error&) {
    throw std::invalid_argument("range must be N or LO..HI with 0 < LO <= HI, got '" + spec + "'");
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"timebox: record and linearizability-check timeboxed traces"};
  app.require_subcommand(1);
  Options o;

  auto* record = app.add_subcommand("record", "fuzz a reference structure and write a TBX1 trace");
  record->add_option("--model", o.model, "queue | omaprange | ppfifo")->required();
  record->add_option("--threads", o.threads)->check(CLI::PositiveNumber);
  record->add_option("--ops", o.ops, "operations per thread");
  record->add_option("--seed", o.seed);
  record->add_option("--universe", o.universe, "distinct values")->check(CLI::PositiveNumber);
  record->add_option("--bug", o.bug, "inject a bug, e.g. Q3_LOST_ELEMENT");
  record->add_option("--jitter", o.jitter, "p,max_ns scheduling jitter");
  record->add_option("-o,--output", o.output)->required();

  auto* chk = app.add_subcommand("check", "decide whether a trace linearizes");
  chk->add_option("--model", o.model, "defaults to the trace header");
  chk->add_option("trace", o.trace_path)->required()->check(CLI::ExistingFile);
  chk->add_option("--export", o.export_path, "write the SGX1 state graph here");
  chk->add_option("--max-ce", o.max_ce, "counterexamples to keep");
  chk->add_option("--parallelism", o.parallelism)->check(CLI::PositiveNumber);
  chk->add_option("--mem-cap", o.mem_cap_mb, "memory budget in MB");

  auto* orc = app.add_subcommand("oracle", "brute-force check of a small trace");
  orc->add_option("--model", o.model, "defaults to the trace header");
  orc->add_option("trace", o.trace_path)->required()->check(CLI::ExistingFile);
  orc->add_option("--bound", o.bound, "refuse traces longer than this");

  auto* retime = app.add_subcommand("retime", "shrink boxes to their refined points");
  retime->add_option("trace", o.trace_path)->required()->check(CLI::ExistingFile);
  retime->add_option("-o,--output", o.output)->required();

  auto* bench = app.add_subcommand("bench", "record + check sweep, CSV out");
  bench->add_option("--model", o.model)->required();
  bench->add_option("--threads", o.threads, "threads for the ops sweep")->check(CLI::PositiveNumber);
  bench->add_option("--ops", o.ops_range, "total operations, N or LO..HI (doubling)");
  bench->add_option("--sweep-threads", o.thread_sweep, "sweep threads LO..HI instead of ops");
  bench->add_option("--ops-per-thread", o.ops_per_thread, "for --sweep-threads");
  bench->add_option("--seeds", o.seeds, "runs per point")->check(CLI::PositiveNumber);
  bench->add_option("--universe", o.universe)->check(CLI::PositiveNumber);
  bench->add_option("--jitter", o.jitter, "p,max_ns scheduling jitter");
  bench->add_option("--parallelism", o.parallelism)->check(CLI::PositiveNumber);
  bench->add_option("--mem-cap", o.mem_cap_mb, "memory budget in MB");
  bench->add_option("-o,--output", o.output, "CSV path (default stdout)");

  auto* gen = app.add_subcommand("gen-template", "emit a fuzzer skeleton for a model");
  gen->add_option("--model", o.model)->required();
  gen->add_option("-o,--output", o.output)->required();

  std::vector<std::string> argv_store{"timebox"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (record->parsed()) return cmd_record(o, out);
    if (chk->parsed()) return cmd_check(o, out);
    if (orc->parsed()) return cmd_oracle(o, out);
    if (retime->parsed()) return cmd_retime(o, out);
    if (bench->parsed()) return cmd_bench(o, out);
    if (gen->parsed()) return cmd_gen_template(o, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const ValidationError& e) {
    err << e.what() << '\n';
    return kUsage;
  } catch (const SpecificationError& e) {
    err << "specification error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CheckResourceError& e) {
    err << "resource limit: " << e.what() << " (nodes " << e.partial_stats().nodes_explored
        << ")\n";
    return kResource;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kResource;
  }
  return kUsage;
}

}  // namespace timebox::cli
