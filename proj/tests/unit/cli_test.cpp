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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "timebox/graph_export.hpp"
#include "timebox/trace_io.hpp"

namespace timebox::cli {
namespace {

namespace fs = std::filesystem;

const fs::path kFixtures = TIMEBOX_FIXTURE_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("timebox_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, ThreeThreadQueueFixtureIsRejectedAtDepthThree) {
  auto r = cli({"check", "--model", "queue", (kFixtures / "three_thread_queue.tbx").string()});
  EXPECT_EQ(r.code, kRejected);
  EXPECT_NE(r.out.find("REJECTED"), std::string::npos);
  EXPECT_NE(r.out.find("max_depth=3"), std::string::npos);
  EXPECT_NE(r.out.find("stuck: t2#0 Dequeue(3)"), std::string::npos);
}

TEST_F(CliTest, ThreeThreadQueueVariantIsAccepted) {
  auto r = cli({"check", (kFixtures / "three_thread_queue_dequeue2.tbx").string()});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("final state: <<1, 3>>"), std::string::npos);
}

TEST_F(CliTest, EmptyTraceIsAccepted) {
  EXPECT_EQ(cli({"check", "--model", "queue", (kFixtures / "empty.tbx").string()}).code, kOk);
}

TEST_F(CliTest, ModelMismatchIsUsageError) {
  EXPECT_EQ(cli({"check", "--model", "omaprange", (kFixtures / "three_thread_queue.tbx").string()}).code, kUsage);
  EXPECT_EQ(cli({"check", "--model", "stack", (kFixtures / "three_thread_queue.tbx").string()}).code, kUsage);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(cli({}).code, kUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, kUsage);
  EXPECT_EQ(cli({"check"}).code, kUsage);
  EXPECT_EQ(cli({"check", path("missing.tbx")}).code, kUsage);
  EXPECT_EQ(cli({"record", "--model", "queue", "--bug", "Q9", "-o", path("x.tbx")}).code, kUsage);
  EXPECT_EQ(cli({"record", "--model", "queue", "--bug", "M1_READ_MUTABLE", "-o", path("x.tbx")}).code,
            kUsage);
  EXPECT_EQ(cli({"--help"}).code, kOk);
}

TEST_F(CliTest, MalformedTraceIsUsageError) {
  std::ofstream(path("bad.tbx")) << "{\"tbx\":1,\"model\":\"queue\",\"threads\":1,\"seed\":1}\n{oops\n";
  auto r = cli({"check", path("bad.tbx")});
  EXPECT_EQ(r.code, kUsage);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
}

TEST_F(CliTest, RecordThenCheck) {
  auto rec = cli({"record", "--model", "ppfifo", "--threads", "3", "--ops", "200", "--seed", "5",
                  "-o", path("run.tbx")});
  ASSERT_EQ(rec.code, kOk) << rec.err;
  auto tr = read_trace_file(path("run.tbx"));
  EXPECT_EQ(tr.total_actions(), 600u);
  EXPECT_EQ(tr.meta.model, "ppfifo");
  EXPECT_EQ(cli({"check", path("run.tbx")}).code, kOk);
}

TEST_F(CliTest, RecordWithLostElementIsRejected) {
  ASSERT_EQ(cli({"record", "--model", "queue", "--threads", "4", "--ops", "1000", "--seed", "1",
                 "--bug", "Q3_LOST_ELEMENT", "-o", path("bug.tbx")})
                .code,
            kOk);
  EXPECT_EQ(cli({"check", "--max-ce", "2", path("bug.tbx")}).code, kRejected);
}

TEST_F(CliTest, CheckExportsStateGraph) {
  auto r = cli({"check", (kFixtures / "three_thread_queue.tbx").string(), "--export", path("g.json")});
  EXPECT_EQ(r.code, kRejected);
  std::ifstream in(path("g.json"));
  auto doc = read_graph_export(in);
  EXPECT_EQ(doc.max_depth, 3u);
  EXPECT_EQ(doc.actions.size(), 4u);
}

TEST_F(CliTest, MemoryCapIsResourceError) {
  ASSERT_EQ(cli({"record", "--model", "queue", "--threads", "4", "--ops", "2000", "--seed", "2",
                 "-o", path("run.tbx")})
                .code,
            kOk);
  EXPECT_EQ(cli({"check", "--mem-cap", "0", path("run.tbx")}).code, kOk);  // 0 = no cap
  std::ofstream(path("wide.tbx")) << [] {
    std::string s = "{\"tbx\":1,\"model\":\"queue\",\"threads\":8,\"seed\":null}\n";
    for (int t = 0; t < 8; ++t) {
      s += "{\"t\":" + std::to_string(t) + ",\"op\":\"Enqueue\",\"args\":[" + std::to_string(t) +
           "],\"s\":0,\"e\":10}\n";
    }
    return s;
  }();
  EXPECT_EQ(cli({"check", "--mem-cap", "1", path("wide.tbx")}).code, kResource);
}

TEST_F(CliTest, OracleAgreesOnFixtures) {
  EXPECT_EQ(cli({"oracle", "--model", "queue", (kFixtures / "three_thread_queue.tbx").string()}).code, kRejected);
  EXPECT_EQ(cli({"oracle", (kFixtures / "three_thread_queue_dequeue2.tbx").string()}).code, kOk);
  EXPECT_EQ(cli({"oracle", "--bound", "3", (kFixtures / "three_thread_queue.tbx").string()}).code, kResource);
}

TEST_F(CliTest, RetimeCollapsesRefinedBoxes) {
  ASSERT_EQ(cli({"record", "--model", "queue", "--threads", "2", "--ops", "50", "--seed", "3", "-o",
                 path("run.tbx")})
                .code,
            kOk);
  auto r = cli({"retime", path("run.tbx"), "-o", path("narrow.tbx")});
  ASSERT_EQ(r.code, kOk) << r.err;
  auto narrow = read_trace_file(path("narrow.tbx"));
  for (const auto& seq : narrow.threads) {
    for (const auto& a : seq) {
      if (a.refined_ns) {
        EXPECT_EQ(a.start_ns, a.end_ns);
      }
    }
  }
  EXPECT_EQ(cli({"check", path("narrow.tbx")}).code, kOk);
}

TEST_F(CliTest, BenchWritesCsv) {
  auto r = cli({"bench", "--model", "queue", "--threads", "2", "--ops", "100..400", "-o",
                path("b.csv")});
  ASSERT_EQ(r.code, kOk) << r.err;
  std::ifstream in(path("b.csv"));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "ops,threads,seed,verdict,wall_ms,peak_nodes,peak_mem_estimate");
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 3u);  // 100, 200, 400
  EXPECT_EQ(rows[0].substr(0, 6), "100,2,");
  EXPECT_NE(rows[2].find(",accepted,"), std::string::npos);
}

TEST_F(CliTest, BenchThreadSweep) {
  auto r = cli({"bench", "--model", "omaprange", "--sweep-threads", "1..4", "--ops-per-thread",
                "20"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("\n20,1,"), std::string::npos);
  EXPECT_NE(r.out.find("\n80,4,"), std::string::npos);
}

TEST_F(CliTest, GenTemplate) {
  auto r = cli({"gen-template", "--model", "omaprange", "-o", path("t.cpp")});
  ASSERT_EQ(r.code, kOk);
  std::ifstream in(path("t.cpp"));
  std::string text((std::istreambuf_iterator<char>(in)), {});
  EXPECT_NE(text.find("stub_RangeCount"), std::string::npos);
}

TEST(DoublingRange, Expands) {
  EXPECT_EQ(doubling_range("500..4000"), (std::vector<std::size_t>{500, 1000, 2000, 4000}));
  EXPECT_EQ(doubling_range("500..3000"), (std::vector<std::size_t>{500, 1000, 2000, 3000}));
  EXPECT_EQ(doubling_range("7"), (std::vector<std::size_t>{7}));
  EXPECT_EQ(doubling_range("1..1"), (std::vector<std::size_t>{1}));
  EXPECT_THROW(doubling_range("9..3"), std::invalid_argument);
  EXPECT_THROW(doubling_range("0..3"), std::invalid_argument);
  EXPECT_THROW(doubling_range("a..b"), std::invalid_argument);
}

}  // namespace
}  // namespace timebox::cli
