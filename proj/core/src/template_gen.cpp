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

#include <sstream>

#include "timebox/workload.hpp"

namespace timebox {

namespace {

std::string describe_args(const OpSignature& sig) {
  std::string out;
  for (std::size_t k = 0; k < sig.args.size(); ++k) {
    if (k) out += ", ";
    out += sig.args[k].name;
    if (sig.args[k].kind) out += ": " + std::string(kind_name(*sig.args[k].kind));
  }
  return out;
}

std::string arg_list(const OpSignature& sig) {
  std::string out;
  for (std::size_t k = 0; k < sig.args.size(); ++k) {
    if (k) out += ", ";
    out += sig.args[k].name;
  }
  return out;
}

}  // namespace

std::string emit_fuzzer_template(const ModelSpec& spec) {
  const std::string model(spec.name());
  std::ostringstream os;
  os << "// Fuzzer template for the \"" << model << "\" model, generated by timebox gen-template.\n"
     << "//\n"
     << "// Fill in SystemUnderTest and every stub. A stub picks its inputs, makes one\n"
     << "// call inside ctx.timed(...), then records the action together with the\n"
     << "// results it observed. Stubs still returning ctx.unsupported() are reported as\n"
     << "// UNSUPPORTED at run time and never appear in the trace.\n"
     << "//\n"
     << "// Link against timebox::core, then run:\n"
     << "//   ./fuzzer --threads 4 --ops 1000 --seed 1 -o run.tbx\n"
     << "\n"
     << "#include <timebox/fuzz.hpp>\n"
     << "\n"
     << "#include <vector>\n"
     << "\n"
     << "// BEGIN INCLUDES\n"
     << "// END INCLUDES\n"
     << "\n"
     << "namespace {\n"
     << "\n"
     << "using timebox::Value;\n"
     << "using timebox::fuzz::StubResult;\n"
     << "using timebox::fuzz::ThreadContext;\n"
     << "\n"
     << "struct SystemUnderTest {\n"
     << "  // BEGIN STATE\n"
     << "  // END STATE\n"
     << "};\n";

  for (const auto& sig : spec.signature()) {
    os << "\n"
       << "// " << sig.name << "(" << describe_args(sig) << ")\n"
       << "//   ctx.record(\"" << sig.name << "\", {" << arg_list(sig) << "});\n"
       << "StubResult stub_" << sig.name << "(SystemUnderTest& sut, ThreadContext& ctx) {\n"
       << "  // BEGIN STUB " << sig.name << "\n"
       << "  (void)sut;\n"
       << "  return ctx.unsupported();  // UNIMPLEMENTED: " << sig.name << "\n"
       << "  // END STUB " << sig.name << "\n"
       << "}\n";
  }

  os << "\n"
     << "}  // namespace\n"
     << "\n"
     << "int main(int argc, char** argv) {\n"
     << "  SystemUnderTest sut;\n"
     << "  std::vector<timebox::fuzz::StubEntry> stubs = {\n";
  for (const auto& sig : spec.signature()) {
    os << "      {\"" << sig.name << "\", [&sut](ThreadContext& ctx) { return stub_" << sig.name
       << "(sut, ctx); }},\n";
  }
  os << "  };\n"
     << "  return timebox::fuzz::template_main(argc, argv, \"" << model << "\", stubs);\n"
     << "}\n";
  return os.str();
}

}  // namespace timebox
