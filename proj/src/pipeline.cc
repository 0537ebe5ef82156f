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

#include "jsondst/pipeline.h"

#include "jsondst/context.h"
#include "jsondst/filter.h"
#include "jsondst/update.h"

namespace jsondst {

namespace {

template <typename T>
void CollectParseWarnings(const Parsed<T>& parsed,
                          std::vector<std::string>& warnings) {
  for (const auto& d : parsed.dropped) {
    warnings.push_back("dropped unknown " + d.action + " slot " + d.domain +
                       "/" + d.slot);
  }
  for (const auto& n : parsed.notes) warnings.push_back(n);
}

// Runs `fn`, re-raising any library error tagged with turn and step.
template <typename F>
auto AtStep(int turn, int step, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const PipelineError&) {
    throw;
  } catch (const Error& e) {
    throw PipelineError(e.code(), turn, step, e.what());
  }
}

std::string Translate(const std::string& prompt, const PipelineDeps& deps,
                      TurnRecord& rec) {
  const size_t limit = deps.options.max_prompt_chars;
  if (limit > 0 && prompt.size() > limit) {
    rec.warnings.push_back("prompt of " + std::to_string(prompt.size()) +
                           " chars exceeds limit " + std::to_string(limit));
  }
  std::string raw = deps.backend.Translate(prompt);
  rec.raw_payloads.push_back(raw);
  return raw;
}

ParseOptions ParseOptionsFor(const PipelineOptions& options) {
  ParseOptions out;
  if (options.domains.size() == 1) out.default_domain = options.domains.front();
  return out;
}

}  // namespace

TurnRecord RunTurn(const DialogueState& prev_state, int turn_index,
                   std::string_view system_utterance,
                   std::string_view user_utterance, const PipelineDeps& deps) {
  const auto& opts = deps.options;
  const ParseOptions parse_opts = ParseOptionsFor(opts);
  TurnRecord rec;
  rec.turn_index = turn_index;
  rec.system_utterance = system_utterance;
  rec.user_utterance = user_utterance;
  rec.input_state = prev_state;
  if (user_utterance.empty()) {
    throw PipelineError(ErrorCode::kInvalidArgument, turn_index, 4,
                        "empty user utterance");
  }

  ContextJson ctx = StateToContextJson(prev_state, deps.ontology);

  if (!opts.use_framework) {
    auto parsed = AtStep(turn_index, 4, [&] {
      const std::string prompt =
          BuildMergedPrompt(opts.domains, ctx, system_utterance,
                            user_utterance, deps.ontology, deps.prompts);
      return ParseUserJson(Translate(prompt, deps, rec), deps.ontology,
                           parse_opts);
    });
    CollectParseWarnings(parsed, rec.warnings);
    rec.user_json = std::move(parsed.value);
    rec.temp_state = prev_state;
    auto outcome = ApplyUserJson(prev_state, rec.user_json, deps.ontology);
    rec.final_state = std::move(outcome.state);
    for (auto& n : outcome.notes) rec.warnings.push_back(std::move(n));
    return rec;
  }

  // Steps 1-3.
  SystemJson filtered;
  if (system_utterance.empty()) {
    rec.temp_state = prev_state;
  } else {
    auto parsed = AtStep(turn_index, 1, [&] {
      const std::string prompt =
          BuildPrompt(Speaker::kSystem, opts.domains, ctx, system_utterance,
                      deps.ontology, deps.prompts);
      return ParseSystemJson(Translate(prompt, deps, rec), deps.ontology,
                             parse_opts);
    });
    CollectParseWarnings(parsed, rec.warnings);
    rec.system_json = std::move(parsed.value);

    auto outcome = ApplySystemJson(prev_state, rec.system_json, deps.ontology);
    for (const auto& n : outcome.notes) rec.warnings.push_back(n);

    filtered = opts.use_filter
                   ? FilterSystemJson(rec.system_json, outcome, deps.ontology)
                   : rec.system_json;
    rec.temp_state = std::move(outcome.state);
  }

  // Step 4.
  auto parsed = AtStep(turn_index, 4, [&] {
    const ContextJson merged = MergeContext(ctx, filtered);
    const std::string prompt =
        BuildPrompt(Speaker::kUser, opts.domains, merged, user_utterance,
                    deps.ontology, deps.prompts);
    return ParseUserJson(Translate(prompt, deps, rec), deps.ontology,
                         parse_opts);
  });
  CollectParseWarnings(parsed, rec.warnings);
  rec.user_json = std::move(parsed.value);

  // Step 5.
  auto outcome = ApplyUserJson(rec.temp_state, rec.user_json, deps.ontology);
  for (auto& n : outcome.notes) rec.warnings.push_back(std::move(n));
  rec.final_state = std::move(outcome.state);
  return rec;
}

DialogueRun RunDialogue(std::string dialogue_id,
                        const std::vector<DialogueTurn>& dialogue,
                        const PipelineDeps& deps) {
  if (dialogue.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "dialogue " + dialogue_id + " has no turns");
  }
  if (!dialogue.front().system.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "dialogue " + dialogue_id +
                    ": first turn must not carry a system utterance");
  }
  DialogueRun run;
  run.dialogue_id = std::move(dialogue_id);
  run.domains = deps.options.domains;
  DialogueState state;
  for (size_t i = 0; i < dialogue.size(); ++i) {
    const int turn = static_cast<int>(i) + 1;
    try {
      run.turns.push_back(RunTurn(state, turn, dialogue[i].system,
                                  dialogue[i].user, deps));
    } catch (const PipelineError& e) {
      run.failure = TurnFailure{e.turn(), e.step(), e.code(), e.what()};
      break;
    }
    state = run.turns.back().final_state;
  }
  return run;
}

nlohmann::json TurnRecord::ToJson() const {
  return {
      {"turn", turn_index},
      {"system_utterance", system_utterance},
      {"user_utterance", user_utterance},
      {"system_json", nlohmann::json::parse(ToText(system_json))},
      {"user_json", nlohmann::json::parse(ToText(user_json))},
      {"input_state", input_state.ToJson()},
      {"temp_state", temp_state.ToJson()},
      {"final_state", final_state.ToJson()},
      {"raw_payloads", raw_payloads},
      {"warnings", warnings},
  };
}

}  // namespace jsondst
