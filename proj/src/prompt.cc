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

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "jsondst/error.h"

namespace jsondst {

namespace {

size_t CountOccurrences(std::string_view text, std::string_view token) {
  size_t n = 0;
  for (auto pos = text.find(token); pos != std::string_view::npos;
       pos = text.find(token, pos + token.size())) {
    ++n;
  }
  return n;
}

void CheckTemplate(const PromptTemplate& t) {
  const std::string side(SpeakerName(t.side));
  for (auto token : kPromptTokens) {
    const size_t n = CountOccurrences(t.body, token);
    const bool optional = token == "[EXM]" && t.side == Speaker::kSystem;
    if (n > 1 || (n == 0 && !optional)) {
      throw Error(ErrorCode::kSchemaViolation,
                  side + " template: token " + std::string(token) +
                      " appears " + std::to_string(n) + " times");
    }
  }
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kMissingFile, path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  if (!text.empty() && text.back() == '\n') text.pop_back();
  return text;
}

std::string Join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::vector<const DomainDef*> ScopedDomains(
    const std::vector<std::string>& domains, const Ontology& ontology) {
  if (domains.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty domain scope");
  }
  std::vector<const DomainDef*> out;
  for (const auto& name : domains) {
    const DomainDef* d = ontology.FindDomain(name);
    if (!d) throw Error(ErrorCode::kInvalidArgument, "unknown domain " + name);
    out.push_back(d);
  }
  return out;
}

std::string RenderSlots(const std::vector<const DomainDef*>& domains) {
  std::vector<std::string> lines;
  for (const DomainDef* d : domains) {
    std::vector<std::string> names;
    for (const auto& s : d->slots) names.push_back(s.surrogate);
    lines.push_back("slots of " + d->name + ": " + Join(names, ", "));
  }
  return Join(lines, "\n");
}

std::string RenderKeywords(const std::vector<const DomainDef*>& domains) {
  std::vector<std::string> lines;
  std::set<std::string> seen;
  for (const DomainDef* d : domains) {
    for (const auto& s : d->slots) {
      if (s.keywords.empty()) continue;
      std::string line = s.surrogate + ": " + Join(s.keywords, " | ");
      if (seen.insert(line).second) lines.push_back(std::move(line));
    }
  }
  return Join(lines, "\n");
}

std::string RenderExamples(const std::vector<const DomainDef*>& domains,
                           const PromptLibrary& library) {
  std::vector<std::string> blocks;
  for (const DomainDef* d : domains) {
    const DomainExample* ex = library.FindExample(d->name);
    if (!ex) {
      throw Error(ErrorCode::kMissingExample,
                  "no all-slots example for domain " + d->name);
    }
    blocks.push_back("example:\ninput message:\n" +
                     TagUtterance(Speaker::kUser, ex->utterance) +
                     "\noutput JSON:\n" + ex->json + "\n" +
                     library.Template(Speaker::kUser).stop_token);
  }
  return Join(blocks, "\n\n");
}

std::string Substitute(const PromptTemplate& t,
                       const std::map<std::string_view, std::string>& values) {
  std::string out;
  out.reserve(t.body.size() * 2);
  const std::string_view body = t.body;
  size_t i = 0;
  while (i < body.size()) {
    bool replaced = false;
    if (body[i] == '[') {
      for (const auto& [token, value] : values) {
        if (body.compare(i, token.size(), token) == 0) {
          out += value;
          i += token.size();
          replaced = true;
          break;
        }
      }
    }
    if (!replaced && body[i] == '[') {
      // A placeholder with no value. Checked on the template, so utterances
      // that happen to contain token text are left alone.
      for (auto token : kPromptTokens) {
        if (body.compare(i, token.size(), token) == 0) {
          throw Error(ErrorCode::kUnresolvedToken,
                      std::string(token) + " has no value");
        }
      }
    }
    if (!replaced) out.push_back(body[i++]);
  }
  return out;
}

std::string Build(Speaker side, const std::vector<std::string>& domains,
                  const ContextJson& ctx, std::string dialog,
                  const Ontology& ontology, const PromptLibrary& library) {
  const auto scoped = ScopedDomains(domains, ontology);
  std::map<std::string_view, std::string> values = {
      {"[DM]", "domains: " + Join(domains, ", ")},
      {"[ST]", RenderSlots(scoped)},
      {"[KW]", RenderKeywords(scoped)},
      {"[PREDIC]", SerializeContext(ctx)},
      {"[DIALOG]", std::move(dialog)},
  };
  if (side == Speaker::kUser) values["[EXM]"] = RenderExamples(scoped, library);
  return Substitute(library.Template(side), values);
}

}  // namespace

PromptLibrary::PromptLibrary(PromptTemplate system, PromptTemplate user,
                             std::vector<DomainExample> examples)
    : system_(std::move(system)),
      user_(std::move(user)),
      examples_(std::move(examples)) {
  system_.side = Speaker::kSystem;
  user_.side = Speaker::kUser;
  CheckTemplate(system_);
  CheckTemplate(user_);
}

PromptLibrary PromptLibrary::Load(const std::filesystem::path& template_dir,
                                  const std::filesystem::path& examples_path) {
  PromptTemplate system{Speaker::kSystem,
                        ReadFile(template_dir / "system_prompt.txt")};
  PromptTemplate user{Speaker::kUser, ReadFile(template_dir / "user_prompt.txt")};

  std::ifstream in(examples_path);
  if (!in) throw Error(ErrorCode::kMissingFile, examples_path.string());
  nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.contains("examples") ||
      !doc["examples"].is_array()) {
    throw Error(ErrorCode::kSchemaViolation,
                examples_path.string() + ": expected {\"examples\": [...]}");
  }
  std::vector<DomainExample> examples;
  for (const auto& e : doc["examples"]) {
    if (!e.contains("domain") || !e.contains("utterance") ||
        !e.contains("json")) {
      throw Error(ErrorCode::kSchemaViolation,
                  examples_path.string() +
                      ": example needs domain, utterance and json");
    }
    examples.push_back({e["domain"].get<std::string>(),
                        e["utterance"].get<std::string>(),
                        e["json"].get<std::string>()});
  }
  return PromptLibrary(std::move(system), std::move(user), std::move(examples));
}

const DomainExample* PromptLibrary::FindExample(std::string_view domain) const {
  for (const auto& e : examples_) {
    if (e.domain == domain) return &e;
  }
  return nullptr;
}

std::string TagUtterance(Speaker side, std::string_view utterance) {
  return std::string(SpeakerName(side)) + ": \"" + std::string(utterance) +
         "\"";
}

std::string BuildPrompt(Speaker side, const std::vector<std::string>& domains,
                        const ContextJson& ctx, std::string_view utterance,
                        const Ontology& ontology,
                        const PromptLibrary& library) {
  return Build(side, domains, ctx, TagUtterance(side, utterance), ontology,
               library);
}

std::string BuildMergedPrompt(const std::vector<std::string>& domains,
                              const ContextJson& ctx,
                              std::string_view system_utterance,
                              std::string_view user_utterance,
                              const Ontology& ontology,
                              const PromptLibrary& library) {
  std::string dialog;
  if (!system_utterance.empty()) {
    dialog = TagUtterance(Speaker::kSystem, system_utterance) + "\n";
  }
  dialog += TagUtterance(Speaker::kUser, user_utterance);
  return Build(Speaker::kUser, domains, ctx, std::move(dialog), ontology,
               library);
}

}  // namespace jsondst
