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

#include "timebox/trace_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>

#include "json_value.hpp"
#include "timebox/errors.hpp"

namespace timebox {

using nlohmann::json;

namespace {

json parse_line(const std::string& line, std::size_t lineno) {
  try {
    return json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(lineno, e.what());
  }
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

Trace read_trace(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  Trace tr;
  std::vector<Violation> misplaced;

  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    json j = parse_line(line, lineno);
    if (!have_header) {
      if (!j.is_object() || !j.contains("tbx")) {
        throw ParseError(lineno, "missing TBX header");
      }
      if (j["tbx"] != 1) {
        throw ParseError(lineno, "unsupported trace version " + j["tbx"].dump());
      }
      try {
        tr.meta.model = j.at("model").get<std::string>();
        auto threads = j.at("threads").get<std::int64_t>();
        if (threads < 0) throw ParseError(lineno, "negative thread count");
        tr.threads.resize(static_cast<std::size_t>(threads));
        if (j.contains("seed") && !j["seed"].is_null()) {
          tr.meta.seed = j["seed"].get<std::uint64_t>();
        }
        if (j.contains("recorder")) tr.meta.recorder_version = j["recorder"].get<std::string>();
      } catch (const json::exception& e) {
        throw ParseError(lineno, std::string("bad header: ") + e.what());
      }
      have_header = true;
      continue;
    }
    TimeboxedAction a;
    try {
      a = detail::action_from_json(j);
    } catch (const std::exception& e) {
      throw ParseError(lineno, e.what());
    }
    if (a.thread >= tr.threads.size()) {
      misplaced.push_back({a.thread, 0, "thread-id-range",
                           "line " + std::to_string(lineno) + " names thread " +
                               std::to_string(a.thread) + " but header declares " +
                               std::to_string(tr.threads.size())});
      continue;
    }
    tr.threads[a.thread].push_back(std::move(a));
  }
  if (!have_header) throw ParseError(lineno, "empty trace file");
  if (!misplaced.empty()) throw ValidationError(std::move(misplaced));

  for (auto& seq : tr.threads) {
    std::stable_sort(seq.begin(), seq.end(), [](const TimeboxedAction& a, const TimeboxedAction& b) {
      return a.start_ns < b.start_ns;
    });
  }
  require_valid(tr);
  return tr;
}

void write_trace(const Trace& tr, std::ostream& out) {
  json header = {{"tbx", 1}, {"model", tr.meta.model}, {"threads", tr.thread_count()}};
  header["seed"] = tr.meta.seed ? json(*tr.meta.seed) : json(nullptr);
  if (!tr.meta.recorder_version.empty()) header["recorder"] = tr.meta.recorder_version;
  out << header.dump() << '\n';
  for (const auto& seq : tr.threads) {
    for (const auto& a : seq) out << detail::action_to_json(a).dump() << '\n';
  }
}

Trace read_trace_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_trace(in);
}

void write_trace_file(const Trace& tr, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_trace(tr, out);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace timebox
