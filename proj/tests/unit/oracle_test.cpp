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

#include "timebox/errors.hpp"
#include "timebox/oracle.hpp"

#include <gtest/gtest.h>

#include "random_traces.hpp"
#include "timebox/linearizer.hpp"
#include "timebox/models.hpp"

namespace timebox {
namespace {

using testing::act;
using testing::I;
using testing::make_trace;

TEST(Oracle, EmptyTraceAccepts) {
  AtomicQueue q;
  EXPECT_EQ(oracle_check(Trace{}, q), OracleVerdict::Accept);
}

TEST(Oracle, ThreeThreadQueue) {
  AtomicQueue q;
  EXPECT_EQ(oracle_check(testing::three_thread_queue(3), q), OracleVerdict::Reject);
  EXPECT_EQ(oracle_check(testing::three_thread_queue(2), q), OracleVerdict::Accept);
}

TEST(Oracle, RealTimeOrderIsRespected) {
  AtomicQueue q;
  // Dequeue(1) strictly precedes Enqueue(1): no legal order.
  auto tr = make_trace(2, {act(0, "Dequeue", {I(1)}, 0, 5), act(1, "Enqueue", {I(1)}, 6, 9)});
  EXPECT_EQ(oracle_check(tr, q), OracleVerdict::Reject);
  tr.threads[1][0].start_ns = 5;
  EXPECT_EQ(oracle_check(tr, q), OracleVerdict::Accept);
}

TEST(Oracle, RefusesOverBound) {
  AtomicQueue q;
  std::vector<TimeboxedAction> as;
  for (int k = 0; k < 11; ++k) as.push_back(act(0, "Enqueue", {I(k)}, k, k));
  auto tr = make_trace(1, as);
  EXPECT_THROW(oracle_check(tr, q), ResourceError);
  EXPECT_EQ(oracle_check(tr, q, 11), OracleVerdict::Accept);
}

TEST(Oracle, AgreesWithCheckOnRandomTraces) {
  for (const auto& name : model_names()) {
    auto spec = make_model(name);
    testing::RandomTraces gen(*spec, 2026);
    int accepts = 0;
    for (int n = 0; n < 300; ++n) {
      auto tr = gen.next();
      bool oracle = oracle_check(tr, *spec) == OracleVerdict::Accept;
      bool checker = check(tr, *spec).accepted();
      ASSERT_EQ(oracle, checker) << name << " trace " << n;
      accepts += oracle;
    }
    EXPECT_GT(accepts, 60) << name;
    EXPECT_LT(accepts, 270) << name;
  }
}

}  // namespace
}  // namespace timebox
