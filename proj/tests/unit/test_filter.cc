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


#include "jsondst/filter.h"

#include <gtest/gtest.h>

#include "oracles.h"
#include "test_support.h"

namespace jsondst {
namespace {

using testing::TestOntology;

TEST(Filter, EntitySwapDropsUnchangedPriceRange) {
  DialogueState s;
  s.Set("hotel", "name", "nusha");
  SystemJson sys;
  sys.info["hotel"]["full_name"] = {"nusha"};
  sys.info["hotel"]["price_range"] = {"moderate"};
  const auto outcome = ApplySystemJson(s, sys, TestOntology());
  const auto f = FilterSystemJson(sys, outcome, TestOntology());
  SystemJson want;
  want.info["hotel"]["full_name"] = {"nusha"};
  EXPECT_EQ(f, want);
}

TEST(Filter, KeepsChangedNonEntityAndDropsOtherActions) {
  DialogueState s;
  s.Set("hotel", "area", "north");
  SystemJson sys;
  sys.info["hotel"]["direction"] = {"east"};
  sys.ask_for["hotel"] = {"num_people"};
  sys.not_available["hotel"]["full_name"] = {"nusha"};
  const auto f =
      FilterSystemJson(sys, ApplySystemJson(s, sys, TestOntology()), TestOntology());
  EXPECT_EQ(*f.info.find("hotel")->find("direction"), ValueList{"east"});
  EXPECT_TRUE(f.ask_for.empty());
  EXPECT_TRUE(f.not_available.empty());
}

TEST(Filter, EmptyInEmptyOut) {
  const auto f = FilterSystemJson({}, ApplySystemJson({}, {}, TestOntology()),
                                  TestOntology());
  EXPECT_TRUE(f.empty());
}

TEST(FilterProperty, TenThousandRandomPayloads) {
  const auto stats = oracle::CheckFilterProperty(TestOntology(), 10000, 2026);
  EXPECT_EQ(stats.instances, 10000);
  EXPECT_EQ(stats.violations, 0) << stats.first_violation;
}

}  // namespace
}  // namespace jsondst
