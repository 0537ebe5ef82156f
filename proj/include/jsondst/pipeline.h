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

// Per-turn orchestration. One turn runs five steps:
//
//   1. render the previous state as context and translate the system
//      utterance into a system payload
//   2. fold the system payload into the previous state (temporary state)
//   3. filter the system payload down to updated or entity slots
//   4. merge the filtered payload into the context and translate the user
//      utterance into a user payload
//   5. fold the user payload into the temporary state
//
// When there is no system utterance (the first turn) steps 1-3 are skipped
// and the system payload is empty.

#ifndef JSONDST_PIPELINE_H_
#define JSONDST_PIPELINE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jsondst/backend.h"
#include "jsondst/error.h"
#include "jsondst/ontology.h"
#include "jsondst/payload.h"
#include "jsondst/prompt.h"

namespace jsondst {

struct PipelineOptions {
  // Domain scope for prompts. Must be non-empty.
  std::vector<std::string> domains;
  // Step 3 on/off.
  bool use_filter = true;
  // Off: a single user-side prompt sees both utterances at once and its
  // payload goes straight into the state.
  bool use_framework = true;
  // Prompts longer than this are flagged in the turn warnings; 0 disables.
  size_t max_prompt_chars = 0;
};

struct PipelineDeps {
  const Ontology& ontology;
  const PromptLibrary& prompts;
  TranslationBackend& backend;
  PipelineOptions options;
};

struct TurnRecord {
  int turn_index = 0;
  std::string system_utterance;
  std::string user_utterance;
  SystemJson system_json;
  UserJson user_json;
  DialogueState input_state;
  DialogueState temp_state;
  DialogueState final_state;
  std::vector<std::string> raw_payloads;
  std::vector<std::string> warnings;

  nlohmann::json ToJson() const;
};

// An error raised inside a turn, tagged with where it happened. code() is
// the code of the underlying failure.
class PipelineError : public Error {
 public:
  PipelineError(ErrorCode code, int turn, int step, const std::string& message)
      : Error(code, "turn " + std::to_string(turn) + ", step " +
                        std::to_string(step) + ": " + message),
        turn_(turn),
        step_(step) {}

  int turn() const { return turn_; }
  int step() const { return step_; }

 private:
  int turn_;
  int step_;
};

// Pure with respect to `prev_state`; throws PipelineError.
TurnRecord RunTurn(const DialogueState& prev_state, int turn_index,
                   std::string_view system_utterance,
                   std::string_view user_utterance, const PipelineDeps& deps);

struct DialogueTurn {
  std::string system;
  std::string user;
};

struct TurnFailure {
  int turn = 0;
  int step = 0;
  ErrorCode code = ErrorCode::kInvalidArgument;
  std::string message;
};

struct DialogueRun {
  std::string dialogue_id;
  std::vector<std::string> domains;
  std::vector<TurnRecord> turns;
  // Set when the run stopped early; `turns` holds the completed prefix.
  std::optional<TurnFailure> failure;
};

// Threads the state through the turns and stops at the first failing turn.
// Throws Error{kInvalidArgument} for an empty dialogue or a first turn with
// a system utterance.
DialogueRun RunDialogue(std::string dialogue_id,
                        const std::vector<DialogueTurn>& dialogue,
                        const PipelineDeps& deps);

}  // namespace jsondst

#endif  // JSONDST_PIPELINE_H_
