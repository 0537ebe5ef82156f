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


#include "jsondst/update.h"

#include <gtest/gtest.h>

#include <chrono>

#include "oracles.h"
#include "test_support.h"

namespace jsondst {
namespace {

using testing::TestOntology;

TEST(RuleTable, EveryCellMatchesOracle) {
  const auto start = std::chrono::steady_clock::now();
  const auto cells = oracle::RunRuleTable(TestOntology());
  const auto elapsed = std::chrono::steady_clock::now() - start;
  // 5 actions x 6 slot kinds x in-context x empty values.
  EXPECT_EQ(cells.size(), 5u * 6u * 2u * 2u);
  for (const auto& c : cells) EXPECT_TRUE(c.ok) << c.label;
  EXPECT_LT(elapsed, std::chrono::seconds(1));
}

TEST(ApplyUserJson, RejectCreatesDeleteMarkerEvenWhenAbsent) {
  UserJson u;
  u.reject["hotel"] = {"full_name"};
  const auto out = ApplyUserJson({}, u, TestOntology());
  EXPECT_EQ(out.state.Get("hotel", "name"), "[Delete]");
  EXPECT_TRUE(out.changed.count({"hotel", "name"}));
}

TEST(ApplyUserJson, RequestNormalizesAndKeepsFirstValue) {
  UserJson u;
  u.request["restaurant"]["price_range"] = {" Cheap ", "moderate"};
  u.request["restaurant"]["cuisine"] = {"Any"};
  const auto out = ApplyUserJson({}, u, TestOntology());
  EXPECT_EQ(out.state.Get("restaurant", "pricerange"), "cheap");
  EXPECT_EQ(out.state.Get("restaurant", "food"), "dontcare");
  EXPECT_EQ(out.notes.size(), 1u);
}

TEST(ApplyUserJson, RequestOverridesDeleteMarker) {
  DialogueState s;
  s.Set("hotel", "name", "[Delete]");
  UserJson u;
  u.request["hotel"]["full_name"] = {"acorn guest house"};
  EXPECT_EQ(ApplyUserJson(s, u, TestOntology()).state.Get("hotel", "name"),
            "acorn guest house");
}

TEST(ApplyUserJson, SameValueIsNotChanged) {
  DialogueState s;
  s.Set("hotel", "area", "north");
  UserJson u;
  u.request["hotel"]["direction"] = {"north"};
  const auto out = ApplyUserJson(s, u, TestOntology());
  EXPECT_EQ(out.state, s);
  EXPECT_TRUE(out.changed.empty());
}

TEST(ApplyUserJson, UnknownAndInformationalAreIgnoredWithReason) {
  UserJson u;
  u.request["hotel"]["phone_number"] = {};
  u.request["hotel"]["colour"] = {"red"};
  u.request["hotel"]["direction"] = {};
  const auto out = ApplyUserJson({}, u, TestOntology());
  EXPECT_TRUE(out.state.empty());
  EXPECT_TRUE(out.ignored.count(
      {"hotel", "phone_number", IgnoreReason::kInformational}));
  EXPECT_TRUE(
      out.ignored.count({"hotel", "colour", IgnoreReason::kUnknownSlot}));
  EXPECT_TRUE(out.ignored.count({"hotel", "direction", IgnoreReason::kNoValue}));
}

TEST(ApplySystemJson, InfoWritesEntitiesAndKnownSlotsOnly) {
  DialogueState s;
  s.Set("hotel", "area", "north");
  SystemJson sys;
  sys.info["hotel"]["full_name"] = {"nusha"};
  sys.info["hotel"]["price_range"] = {"moderate"};
  sys.info["hotel"]["direction"] = {"east"};
  sys.ask_for["hotel"] = {"num_people"};
  sys.not_available["hotel"]["star_rating"] = {"5"};
  const auto out = ApplySystemJson(s, sys, TestOntology());
  EXPECT_EQ(out.state.Get("hotel", "name"), "nusha");
  EXPECT_EQ(out.state.Get("hotel", "area"), "east");
  EXPECT_FALSE(out.state.Contains("hotel", "pricerange"));
  EXPECT_EQ(out.changed, (std::set<SlotKey>{{"hotel", "area"}, {"hotel", "name"}}));
  EXPECT_TRUE(out.ignored.count(
      {"hotel", "price_range", IgnoreReason::kNonEntityNotInContext}));
  EXPECT_TRUE(out.ignored.count({"hotel", "num_people", IgnoreReason::kAskFor}));
  EXPECT_TRUE(
      out.ignored.count({"hotel", "star_rating", IgnoreReason::kNotAvailable}));
}

TEST(ApplySystemJson, InContextJudgedOnInputState) {
  // The entity write in the same message does not make the non-entity slot
  // count as in context.
  SystemJson sys;
  sys.info["restaurant"]["full_name"] = {"nandos"};
  sys.info["restaurant"]["direction"] = {"south"};
  const auto out = ApplySystemJson({}, sys, TestOntology());
  EXPECT_EQ(out.state.size(), 1u);
}

TEST(ApplySystemJson, DeleteMarkedKeyCountsAsInContext) {
  DialogueState s;
  s.Set("hotel", "area", "[Delete]");
  SystemJson sys;
  sys.info["hotel"]["direction"] = {"west"};
  EXPECT_EQ(ApplySystemJson(s, sys, TestOntology()).state.Get("hotel", "area"),
            "west");
}

TEST(ApplySystemJson, EmptyPayloadIsIdentity) {
  DialogueState s;
  s.Set("taxi", "leaveat", "10:00");
  const auto out = ApplySystemJson(s, {}, TestOntology());
  EXPECT_EQ(out.state, s);
  EXPECT_TRUE(out.changed.empty());
  EXPECT_TRUE(out.ignored.empty());
}

TEST(ApplyProperty, ApplyingTwiceEqualsApplyingOnce) {
  std::mt19937 rng(3);
  const auto& o = TestOntology();
  for (int i = 0; i < 1000; ++i) {
    const auto state = oracle::RandomState(o, rng);
    const auto sys = oracle::RandomSystemJson(o, rng);
    const auto once = ApplySystemJson(state, sys, o);
    const auto twice = ApplySystemJson(once.state, sys, o);
    // A second pass may only add non-entity writes that became in-context.
    for (const auto& [d, slots] : once.state.entries()) {
      for (const auto& [s, v] : slots) EXPECT_EQ(twice.state.Get(d, s), v);
    }
  }
}

}  // namespace
}  // namespace jsondst
