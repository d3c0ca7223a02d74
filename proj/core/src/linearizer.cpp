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

#include "timebox/linearizer.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <thread>
#include <unordered_set>

namespace timebox {

std::size_t StateGraph::max_depth() const {
  std::size_t d = 0;
  for (const auto& n : nodes) d = std::max(d, n.depth);
  return d;
}

std::vector<ActionRef> viable_actions(const Trace& tr, const VectorTimestamp& vt) {
  if (!vt.in_bounds(tr)) throw std::out_of_range("vector timestamp outside trace bounds");

  // A candidate is blocked iff some other candidate ends before it starts,
  // so only the two smallest end times matter.
  constexpr auto kInf = std::numeric_limits<std::int64_t>::max();
  std::int64_t min_end = kInf, second_end = kInf;
  ThreadId min_thread = 0;
  for (ThreadId t = 0; t < tr.thread_count(); ++t) {
    if (vt.exhausted(tr, t)) continue;
    auto e = tr.threads[t][vt[t]].end_ns;
    if (e < min_end) {
      second_end = min_end;
      min_end = e;
      min_thread = t;
    } else if (e < second_end) {
      second_end = e;
    }
  }

  std::vector<ActionRef> out;
  for (ThreadId t = 0; t < tr.thread_count(); ++t) {
    if (vt.exhausted(tr, t)) continue;
    const auto& a = tr.threads[t][vt[t]];
    auto other_end = t == min_thread ? second_end : min_end;
    if (!(other_end < a.start_ns)) out.push_back({t, vt[t]});
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint32_t kNoParent = std::numeric_limits<std::uint32_t>::max();

// Compact per-node history: enough to replay the path that first reached it.
struct Record {
  std::uint32_t parent;
  ThreadId thread;
  std::uint32_t choice;  // successor index, or initial-state index for roots
};

struct FrontierNode {
  VectorTimestamp vt;
  Value state;
  std::string fp;
  std::uint64_t key_hash = 0;
  std::uint32_t record = 0;
};

struct Candidate {
  std::uint32_t parent_slot;  // index into the current frontier
  ThreadId thread;
  std::uint32_t choice;
  FrontierNode node;
};

std::uint64_t key_hash(const VectorTimestamp& vt, const std::string& fp) {
  auto h = std::hash<std::string>{}(fp);
  return h ^ (vt.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

std::size_t node_bytes(const FrontierNode& n) {
  return sizeof(FrontierNode) + n.vt.size() * sizeof(std::uint32_t) + n.fp.capacity() +
         n.state.encoding().size() * 2;
}

class Search {
 public:
  Search(const Trace& tr, const ModelSpec& spec, const CheckOptions& opts, StateGraph* graph)
      : tr_(tr), spec_(spec), opts_(opts), graph_(graph) {
    ops_.resize(tr.thread_count());
    for (ThreadId t = 0; t < tr.thread_count(); ++t) {
      for (const auto& a : tr.threads[t]) {
        OpId id = spec.op_id(a.op);
        const auto& sig = spec.signature()[id];
        if (a.args.size() != sig.arity()) {
          throw SpecificationError(a.label() + " on thread " + std::to_string(t) + ": " +
                                   a.op + " takes " + std::to_string(sig.arity()) +
                                   " arguments");
        }
        ops_[t].push_back(id);
      }
    }
  }

  Verdict run() {
    auto started = Clock::now();
    const std::size_t total = tr_.total_actions();

    std::vector<FrontierNode> frontier;
    {
      auto inits = spec_.initial_states();
      std::vector<Candidate> roots;
      for (std::uint32_t j = 0; j < inits.size(); ++j) {
        roots.push_back({kNoParent, 0, j, make_node(VectorTimestamp::zeros(tr_), inits[j])});
      }
      frontier = merge(std::move(roots), {});
    }

    std::size_t depth = 0;
    while (!frontier.empty() && depth < total) {
      auto next = merge(expand(frontier), frontier);
      account(frontier, next, started);
      if (next.empty()) break;
      frontier = std::move(next);
      ++depth;
    }

    Verdict v;
    v.max_depth = depth;
    if (!frontier.empty() && depth == total) {
      v.outcome = Outcome::Accepted;
      auto path = replay(frontier.front().record);
      v.witness = std::move(path.path);
      v.final_state = frontier.front().state;
    } else {
      v.outcome = Outcome::Rejected;
      std::size_t n = std::min(opts_.max_counterexamples, frontier.size());
      for (std::size_t k = 0; k < n; ++k) {
        auto ce = replay(frontier[k].record);
        ce.stuck = viable_actions(tr_, frontier[k].vt);
        v.counterexamples.push_back(std::move(ce));
      }
    }
    stats_.nodes_explored = records_.size();
    stats_.wall_ms = elapsed_ms(started);
    v.stats = stats_;
    return v;
  }

 private:
  static double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
  }

  FrontierNode make_node(VectorTimestamp vt, Value state) const {
    FrontierNode n;
    n.fp = opts_.view ? opts_.view(state) : spec_.view(state);
    n.key_hash = key_hash(vt, n.fp);
    n.vt = std::move(vt);
    n.state = std::move(state);
    return n;
  }

  void expand_range(const std::vector<FrontierNode>& frontier, std::size_t lo, std::size_t hi,
                    std::vector<Candidate>& out) const {
    for (std::size_t slot = lo; slot < hi; ++slot) {
      const auto& node = frontier[slot];
      for (auto ref : viable_actions(tr_, node.vt)) {
        const auto& a = tr_.threads[ref.thread][ref.index];
        auto succs = spec_.step(node.state, ops_[ref.thread][ref.index], a.args);
        for (std::uint32_t j = 0; j < succs.size(); ++j) {
          out.push_back({static_cast<std::uint32_t>(slot), ref.thread, j,
                         make_node(node.vt.advanced(tr_, ref.thread), std::move(succs[j]))});
        }
      }
    }
  }

  // Candidates come back in frontier order, then thread order, regardless of
  // how many workers produced them.
  std::vector<Candidate> expand(const std::vector<FrontierNode>& frontier) const {
    constexpr std::size_t kMinParallelFrontier = 32;
    unsigned workers = std::max(1u, opts_.parallelism);
    if (workers == 1 || frontier.size() < kMinParallelFrontier) {
      std::vector<Candidate> out;
      expand_range(frontier, 0, frontier.size(), out);
      return out;
    }
    workers = std::min<std::size_t>(workers, frontier.size());
    std::vector<std::vector<Candidate>> parts(workers);
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      std::size_t chunk = (frontier.size() + workers - 1) / workers;
      for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk, hi = std::min(frontier.size(), lo + chunk);
        pool.emplace_back([&, w, lo, hi] {
          try {
            expand_range(frontier, lo, hi, parts[w]);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    std::vector<Candidate> out;
    for (auto& p : parts) {
      out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    }
    return out;
  }

  std::vector<FrontierNode> merge(std::vector<Candidate> cands,
                                  const std::vector<FrontierNode>& parents) {
    std::vector<FrontierNode> layer;
    auto hash = [&layer](std::uint32_t i) { return layer[i].key_hash; };
    auto eq = [&layer](std::uint32_t a, std::uint32_t b) {
      return layer[a].key_hash == layer[b].key_hash && layer[a].vt == layer[b].vt &&
             layer[a].fp == layer[b].fp;
    };
    std::unordered_set<std::uint32_t, decltype(hash), decltype(eq)> index(cands.size() * 2 + 1,
                                                                           hash, eq);
    stats_.transitions += cands.size();
    for (auto& c : cands) {
      std::uint32_t parent_record =
          c.parent_slot == kNoParent ? kNoParent : parents[c.parent_slot].record;
      layer.push_back(std::move(c.node));
      auto [it, inserted] = index.insert(static_cast<std::uint32_t>(layer.size() - 1));
      if (!inserted) {
        layer.pop_back();
        if (graph_ && parent_record != kNoParent) {
          graph_->edges.push_back({parent_record, layer[*it].record,
                                   {c.thread, parents[c.parent_slot].vt[c.thread]}});
        }
        continue;
      }
      if (records_.size() >= kNoParent) {
        throw CheckResourceError("state graph exceeds 2^32 nodes", stats_);
      }
      auto& fresh = layer.back();
      fresh.record = static_cast<std::uint32_t>(records_.size());
      records_.push_back({parent_record, c.thread, c.choice});
      if (graph_) {
        graph_->nodes.push_back({fresh.vt, fresh.vt.depth(), fresh.state});
        if (parent_record == kNoParent) {
          graph_->roots.push_back(fresh.record);
        } else {
          graph_->edges.push_back(
              {parent_record, fresh.record, {c.thread, parents[c.parent_slot].vt[c.thread]}});
        }
      }
    }
    return layer;
  }

  void account(const std::vector<FrontierNode>& current, const std::vector<FrontierNode>& next,
               Clock::time_point started) {
    std::size_t bytes = records_.capacity() * sizeof(Record);
    for (const auto& n : current) bytes += node_bytes(n);
    for (const auto& n : next) bytes += node_bytes(n);
    if (graph_) {
      bytes += graph_->edges.capacity() * sizeof(StateGraph::Edge);
      for (const auto& n : graph_->nodes) {
        bytes += sizeof(StateGraph::Node) + n.state.encoding().size() * 2;
      }
    }
    stats_.peak_memory_estimate = std::max<std::uint64_t>(stats_.peak_memory_estimate, bytes);
    stats_.peak_frontier = std::max<std::uint64_t>(stats_.peak_frontier, next.size());
    if (opts_.memory_budget_bytes && bytes > *opts_.memory_budget_bytes) {
      stats_.nodes_explored = records_.size();
      stats_.wall_ms = elapsed_ms(started);
      throw CheckResourceError("memory budget of " + std::to_string(*opts_.memory_budget_bytes) +
                                   " bytes exceeded (estimate " + std::to_string(bytes) + ")",
                               stats_);
    }
  }

  Counterexample replay(std::uint32_t record) const {
    std::vector<const Record*> chain;
    for (auto r = record; r != kNoParent; r = records_[r].parent) chain.push_back(&records_[r]);
    std::reverse(chain.begin(), chain.end());

    Counterexample ce;
    ce.initial_state = spec_.initial_states().at(chain.front()->choice);
    std::size_t steps = chain.size() - 1;
    std::size_t keep_from = steps > opts_.counterexample_state_window
                                ? steps - opts_.counterexample_state_window
                                : 0;
    auto vt = VectorTimestamp::zeros(tr_);
    Value state = ce.initial_state;
    for (std::size_t k = 1; k < chain.size(); ++k) {
      ActionRef ref{chain[k]->thread, vt[chain[k]->thread]};
      const auto& a = tr_.at(ref);
      auto succs = spec_.step(state, ops_[ref.thread][ref.index], a.args);
      state = succs.at(chain[k]->choice);
      vt = vt.advanced(tr_, ref.thread);
      ce.path.push_back(ref);
      if (k - 1 >= keep_from) ce.states.push_back(state);
    }
    return ce;
  }

  const Trace& tr_;
  const ModelSpec& spec_;
  const CheckOptions& opts_;
  StateGraph* graph_;
  std::vector<std::vector<OpId>> ops_;
  std::vector<Record> records_;
  CheckStats stats_;
};

}  // namespace

Verdict check(const Trace& tr, const ModelSpec& spec, const CheckOptions& opts,
              StateGraph* graph) {
  require_valid(tr);
  if (graph) *graph = {};
  return Search(tr, spec, opts, graph).run();
}

bool replay_witness(const Trace& tr, const ModelSpec& spec, std::span<const ActionRef> witness) {
  if (witness.size() != tr.total_actions()) return false;
  auto vt = VectorTimestamp::zeros(tr);
  auto max_start = std::numeric_limits<std::int64_t>::min();
  for (auto ref : witness) {
    if (ref.thread >= tr.thread_count() || vt.exhausted(tr, ref.thread) ||
        vt[ref.thread] != ref.index) {
      return false;
    }
    const auto& a = tr.at(ref);
    if (a.end_ns < max_start) return false;
    max_start = std::max(max_start, a.start_ns);
    vt = vt.advanced(tr, ref.thread);
  }

  std::vector<Value> states = spec.initial_states();
  for (auto ref : witness) {
    const auto& a = tr.at(ref);
    std::vector<Value> next;
    std::unordered_set<Value> seen;
    for (const auto& s : states) {
      for (auto& succ : spec.step(s, a.op, a.args)) {
        if (seen.insert(succ).second) next.push_back(std::move(succ));
      }
    }
    if (next.empty()) return false;
    states = std::move(next);
  }
  return !states.empty();
}

}  // namespace timebox
