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

// Prompt assembly. Templates are plain text files holding the bracketed
// placeholders below; everything else in them is copied byte for byte.
//
//   [DM]      domain list           domains: hotel, attraction
//   [EXM]     all-slots example     (user side only)
//   [ST]      slot list             slots of hotel: full_name, direction, ...
//   [KW]      keyword choices       direction: centre | north | ...
//   [PREDIC]  serialized context
//   [DIALOG]  tagged utterance      user: "..."

#ifndef JSONDST_PROMPT_H_
#define JSONDST_PROMPT_H_

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "jsondst/context.h"
#include "jsondst/ontology.h"
#include "jsondst/payload.h"

namespace jsondst {

inline constexpr std::array<std::string_view, 6> kPromptTokens = {
    "[DM]", "[EXM]", "[ST]", "[KW]", "[PREDIC]", "[DIALOG]"};

struct PromptTemplate {
  Speaker side = Speaker::kUser;
  std::string body;
  std::string stop_token = "[END]";
};

// A user message mentioning every tracked slot of a domain, with its
// translation. Shown once per scoped domain in user-side prompts.
struct DomainExample {
  std::string domain;
  std::string utterance;
  std::string json;
};

class PromptLibrary {
 public:
  // Throws Error{kSchemaViolation} if a template misses a required token or
  // repeats one.
  PromptLibrary(PromptTemplate system, PromptTemplate user,
                std::vector<DomainExample> examples);

  // Reads `<dir>/system_prompt.txt`, `<dir>/user_prompt.txt` and the
  // examples document {"examples": [{domain, utterance, json}]}.
  static PromptLibrary Load(const std::filesystem::path& template_dir,
                            const std::filesystem::path& examples_path);

  const PromptTemplate& Template(Speaker side) const {
    return side == Speaker::kUser ? user_ : system_;
  }
  const std::vector<DomainExample>& examples() const { return examples_; }
  const DomainExample* FindExample(std::string_view domain) const;

 private:
  PromptTemplate system_;
  PromptTemplate user_;
  std::vector<DomainExample> examples_;
};

// `system: "..."` / `user: "..."`
std::string TagUtterance(Speaker side, std::string_view utterance);

// Throws Error{kMissingExample} (user side, a scoped domain without an
// example), Error{kUnresolvedToken} (a placeholder survives substitution)
// and Error{kInvalidArgument} for domains outside the ontology.
std::string BuildPrompt(Speaker side, const std::vector<std::string>& domains,
                        const ContextJson& ctx, std::string_view utterance,
                        const Ontology& ontology,
                        const PromptLibrary& library);

// User-side template with both utterances in one [DIALOG] block, the way a
// single shared prompt would see them. Only used by the no-framework
// ablation.
std::string BuildMergedPrompt(const std::vector<std::string>& domains,
                              const ContextJson& ctx,
                              std::string_view system_utterance,
                              std::string_view user_utterance,
                              const Ontology& ontology,
                              const PromptLibrary& library);

}  // namespace jsondst

#endif  // JSONDST_PROMPT_H_
