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

#include "timebox/graph_export.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "json_value.hpp"

namespace timebox {

using nlohmann::json;

namespace {

json refs_to_json(const std::vector<ActionRef>& refs) {
  json arr = json::array();
  for (auto r : refs) arr.push_back(json::array({r.thread, r.index}));
  return arr;
}

std::vector<ActionRef> refs_from_json(const json& arr) {
  std::vector<ActionRef> out;
  for (const auto& r : arr) {
    out.push_back({r.at(0).get<ThreadId>(), r.at(1).get<std::uint32_t>()});
  }
  return out;
}

}  // namespace

void export_graph(const StateGraph& g, const Trace& tr, const Verdict& v, std::string_view model,
                  std::ostream& out) {
  json doc;
  doc["sgx"] = 1;
  doc["model"] = model;
  doc["verdict"] = v.accepted() ? "accepted" : "rejected";
  doc["max_depth"] = v.max_depth;

  json nodes = json::array();
  for (std::size_t id = 0; id < g.nodes.size(); ++id) {
    const auto& n = g.nodes[id];
    nodes.push_back({{"id", id},
                     {"vt", n.vt.indices()},
                     {"depth", n.depth},
                     {"state", detail::value_to_json(n.state)}});
  }
  doc["nodes"] = std::move(nodes);

  json edges = json::array();
  for (const auto& e : g.edges) {
    const auto& a = tr.at(e.action);
    json args = json::array();
    for (const auto& x : a.args) args.push_back(detail::value_to_json(x));
    edges.push_back({{"src", e.src},
                     {"dst", e.dst},
                     {"t", e.action.thread},
                     {"i", e.action.index},
                     {"op", a.op},
                     {"args", std::move(args)}});
  }
  doc["edges"] = std::move(edges);
  doc["roots"] = g.roots;

  json ces = json::array();
  for (const auto& ce : v.counterexamples) {
    ces.push_back({{"path", refs_to_json(ce.path)}, {"stuck", refs_to_json(ce.stuck)}});
  }
  doc["counterexamples"] = std::move(ces);

  json actions = json::array();
  for (const auto& seq : tr.threads) {
    for (const auto& a : seq) actions.push_back(detail::action_to_json(a));
  }
  doc["trace"] = std::move(actions);

  out << doc.dump() << '\n';
}

void export_graph_file(const StateGraph& g, const Trace& tr, const Verdict& v,
                       std::string_view model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  export_graph(g, tr, v, model, out);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

GraphDocument read_graph_export(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(0, e.what());
  }
  try {
    if (doc.at("sgx") != 1) throw ParseError(0, "unsupported export version " + doc["sgx"].dump());
    GraphDocument g;
    g.model = doc.at("model").get<std::string>();
    auto verdict = doc.at("verdict").get<std::string>();
    if (verdict != "accepted" && verdict != "rejected") {
      throw ParseError(0, "unknown verdict '" + verdict + "'");
    }
    g.verdict = verdict == "accepted" ? Outcome::Accepted : Outcome::Rejected;
    g.max_depth = doc.at("max_depth").get<std::size_t>();
    for (const auto& n : doc.at("nodes")) {
      g.graph.nodes.push_back({VectorTimestamp(n.at("vt").get<std::vector<std::uint32_t>>()),
                               n.at("depth").get<std::size_t>(),
                               detail::value_from_json(n.at("state"))});
    }
    for (const auto& e : doc.at("edges")) {
      g.graph.edges.push_back({e.at("src").get<std::size_t>(), e.at("dst").get<std::size_t>(),
                               {e.at("t").get<ThreadId>(), e.at("i").get<std::uint32_t>()}});
    }
    g.graph.roots = doc.at("roots").get<std::vector<std::size_t>>();
    for (const auto& ce : doc.at("counterexamples")) {
      g.counterexample_paths.push_back(refs_from_json(ce.at("path")));
    }
    for (const auto& a : doc.at("trace")) g.actions.push_back(detail::action_from_json(a));
    return g;
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("malformed export: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, std::string("malformed export: ") + e.what());
  }
}

}  // namespace timebox
