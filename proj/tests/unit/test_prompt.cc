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


#include "jsondst/prompt.h"

#include <gtest/gtest.h>

#include "demonstrations.h"
#include "test_support.h"

namespace jsondst {
namespace {

using testing::TestOntology;
using testing::TestPrompts;

std::string UserPrompt(const std::vector<std::string>& domains,
                       const std::string& utt = "i need a hotel") {
  return BuildPrompt(Speaker::kUser, domains,
                     MergeContext(StateToContextJson({}, TestOntology()), {}),
                     utt, TestOntology(), TestPrompts());
}

TEST(Prompt, EveryDemonstrationVerbatimForEveryDomain) {
  for (const auto& d : TestOntology().DomainNames()) {
    const auto sys = BuildPrompt(Speaker::kSystem, {d},
                                 StateToContextJson({}, TestOntology()),
                                 "ok", TestOntology(), TestPrompts());
    for (auto block : demos::kSystem) {
      EXPECT_NE(sys.find(block), std::string::npos) << d << "\n" << block;
    }
    const auto usr = UserPrompt({d});
    for (auto block : demos::kUser) {
      EXPECT_NE(usr.find(block), std::string::npos) << d << "\n" << block;
    }
    for (auto token : kPromptTokens) {
      EXPECT_EQ(sys.find(token), std::string::npos) << token;
      EXPECT_EQ(usr.find(token), std::string::npos) << token;
    }
  }
}

TEST(Prompt, StartsWithInstructionAndEndsAtOutputCue) {
  const auto usr = UserPrompt({"hotel"});
  EXPECT_EQ(usr.rfind("translate user message to JSON:", 0), 0u);
  EXPECT_TRUE(usr.ends_with("input message:\nuser: \"i need a hotel\"\noutput JSON:"));
}

TEST(Prompt, RendersDomainSlotAndKeywordLines) {
  const auto p = UserPrompt({"hotel", "attraction"});
  EXPECT_NE(p.find("\ndomains: hotel, attraction\n"), std::string::npos);
  EXPECT_NE(p.find("\nslots of hotel: full_name, direction, price_range, "
                   "hotel_type, star_rating, has_internet, has_parking, "
                   "week_day, num_people, num_nights, phone_number, address, "
                   "postcode\nslots of attraction: "),
            std::string::npos);
  EXPECT_NE(p.find("\nprice_range: cheap | moderate | expensive\n"),
            std::string::npos);
  // "direction" has the same keywords in both domains and appears once.
  const std::string dir = "\ndirection: centre | north | south | east | west\n";
  const auto first = p.find(dir);
  ASSERT_NE(first, std::string::npos);
  EXPECT_EQ(p.find(dir, first + 1), std::string::npos);
}

TEST(Prompt, UserSideCarriesOneExamplePerScopedDomain) {
  const auto p = UserPrompt({"taxi", "train"});
  for (const auto& d : {"taxi", "train"}) {
    const auto* ex = TestPrompts().FindExample(d);
    ASSERT_NE(ex, nullptr);
    EXPECT_NE(p.find("example:\ninput message:\nuser: \"" + ex->utterance +
                     "\"\noutput JSON:\n" + ex->json + "\n[END]"),
              std::string::npos);
  }
  EXPECT_EQ(p.find(TestPrompts().FindExample("hotel")->utterance),
            std::string::npos);
}

TEST(Prompt, ContextLinesAppearUnderContextHeader) {
  DialogueState s;
  s.Set("hotel", "name", "nusha");
  SystemJson sys;
  sys.info["hotel"]["full_name"] = {"nusha"};
  const auto ctx = MergeContext(StateToContextJson(s, TestOntology()), sys);
  const auto p = BuildPrompt(Speaker::kUser, {"hotel"}, ctx, "ok",
                             TestOntology(), TestPrompts());
  EXPECT_NE(p.find("example:\ncontext:\n" + SerializeContext(ctx) +
                   "\ninput message:\nuser: \"ok\"\noutput JSON:"),
            std::string::npos);
}

TEST(Prompt, MergedPromptCarriesBothUtterances) {
  const auto p = BuildMergedPrompt({"hotel"}, StateToContextJson({}, TestOntology()),
                                   "how many nights ?", "three nights",
                                   TestOntology(), TestPrompts());
  EXPECT_TRUE(p.ends_with("input message:\nsystem: \"how many nights ?\"\n"
                          "user: \"three nights\"\noutput JSON:"));
}

TEST(Prompt, TokenTextInsideUtteranceIsNotAnError) {
  EXPECT_NO_THROW(UserPrompt({"hotel"}, "what does [DM] mean"));
}

TEST(Prompt, Errors) {
  EXPECT_JSONDST_ERROR(UserPrompt({}), ErrorCode::kInvalidArgument);
  EXPECT_JSONDST_ERROR(UserPrompt({"spa"}), ErrorCode::kInvalidArgument);

  const PromptLibrary no_examples(TestPrompts().Template(Speaker::kSystem),
                                  TestPrompts().Template(Speaker::kUser), {});
  EXPECT_JSONDST_ERROR(
      BuildPrompt(Speaker::kUser, {"hotel"}, StateToContextJson({}, TestOntology()),
                  "x", TestOntology(), no_examples),
      ErrorCode::kMissingExample);

  // [EXM] is allowed in a system template but never filled there.
  PromptTemplate sys = TestPrompts().Template(Speaker::kSystem);
  sys.body += "\n[EXM]";
  const PromptLibrary odd(sys, TestPrompts().Template(Speaker::kUser),
                          TestPrompts().examples());
  EXPECT_JSONDST_ERROR(
      BuildPrompt(Speaker::kSystem, {"hotel"}, StateToContextJson({}, TestOntology()),
                  "x", TestOntology(), odd),
      ErrorCode::kUnresolvedToken);
}

TEST(PromptLibrary, RejectsMissingOrRepeatedTokens) {
  PromptTemplate user = TestPrompts().Template(Speaker::kUser);
  PromptTemplate missing = user;
  missing.body.erase(missing.body.find("[KW]"), 4);
  EXPECT_JSONDST_ERROR(PromptLibrary(TestPrompts().Template(Speaker::kSystem),
                                     missing, {}),
                       ErrorCode::kSchemaViolation);
  PromptTemplate twice = user;
  twice.body += "[DIALOG]";
  EXPECT_JSONDST_ERROR(PromptLibrary(TestPrompts().Template(Speaker::kSystem),
                                     twice, {}),
                       ErrorCode::kSchemaViolation);
  EXPECT_JSONDST_ERROR(PromptLibrary::Load("/nonexistent", "/nonexistent.json"),
                       ErrorCode::kMissingFile);
}

TEST(Prompt, Deterministic) {
  EXPECT_EQ(UserPrompt({"restaurant"}), UserPrompt({"restaurant"}));
}

}  // namespace
}  // namespace jsondst
