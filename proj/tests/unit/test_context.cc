// Copyright 2026 The jsondst Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "jsondst/context.h"

#include <gtest/gtest.h>

#include "test_support.h"

namespace jsondst {
namespace {

using testing::TestOntology;

TEST(Context, EmptyStateRendersEmptyUserBlock) {
  const auto ctx = StateToContextJson({}, TestOntology());
  EXPECT_EQ(SerializeContext(ctx), R"({"user": {"reject": {}, "request": {}}})");
}

TEST(Context, UsesSurrogatesInOntologyOrderAndSkipsDeleted) {
  DialogueState s;
  s.Set("restaurant", "pricerange", "cheap");
  s.Set("restaurant", "area", "centre");
  s.Set("hotel", "name", "[Delete]");
  s.Set("attraction", "name", "nusha");
  EXPECT_EQ(
      SerializeContext(StateToContextJson(s, TestOntology())),
      R"({"user": {"reject": {}, "request": {"attraction": {"full_name": ["nusha"]}, "restaurant": {"direction": ["centre"], "price_range": ["cheap"]}}}})");
}

TEST(Context, MergeAppendsSystemLine) {
  SystemJson sys;
  sys.info["hotel"]["full_name"] = {"nusha"};
  const auto merged = MergeContext(StateToContextJson({}, TestOntology()), sys);
  EXPECT_EQ(SerializeContext(merged),
            "{\"user\": {\"reject\": {}, \"request\": {}}}\n"
            R"({"system": {"not_available": {}, "info": {"hotel": {"full_name": ["nusha"]}}, "ask_for": {}}})");
}

TEST(Context, MergeEmptySystemStillAddsLine) {
  const auto merged = MergeContext(StateToContextJson({}, TestOntology()), {});
  EXPECT_TRUE(merged.system_block.has_value());
  EXPECT_NE(SerializeContext(merged).find('\n'), std::string::npos);
}

TEST(Context, DoubleMergeThrows) {
  const auto merged = MergeContext(StateToContextJson({}, TestOntology()), {});
  EXPECT_JSONDST_ERROR(MergeContext(merged, {}), ErrorCode::kAlreadyMerged);
}

TEST(Context, StateRoundTripsThroughContext) {
  DialogueState s;
  s.Set("train", "day", "monday");
  s.Set("train", "book people", "2");
  const auto ctx = StateToContextJson(s, TestOntology());
  DialogueState back;
  for (const auto& [domain, slots] : ctx.state_block.request) {
    for (const auto& [slot, values] : slots) {
      back.Set(domain, TestOntology().ToCanonical(domain, slot), values.front());
    }
  }
  EXPECT_EQ(back, s);
}

}  // namespace
}  // namespace jsondst
