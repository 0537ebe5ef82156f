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

// Corpus ingestion and scoring. Each domain is evaluated on its own: only
// dialogues whose goal mentions the domain, and only that domain's slots on
// both the predicted and the gold side.

#ifndef JSONDST_EVAL_H_
#define JSONDST_EVAL_H_

#include <compare>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "jsondst/backend.h"
#include "jsondst/ontology.h"
#include "jsondst/pipeline.h"
#include "jsondst/prompt.h"

namespace jsondst {

struct TurnKey {
  std::string dialogue_id;
  int turn = 0;

  auto operator<=>(const TurnKey&) const = default;
};

struct GoldTurn {
  std::string dialogue_id;
  int turn_index = 0;
  DialogueState gold_state;
  std::string system_utterance;
  std::string user_utterance;
};

struct GoldDialogue {
  std::string dialogue_id;
  std::vector<GoldTurn> turns;

  std::vector<DialogueTurn> Utterances() const;
};

// MultiWOZ data.json layout: {"<id>": {"goal": {...}, "log": [...]}} with
// user and system entries alternating and the belief state attached to each
// system entry. Throws Error{kMissingFile} / Error{kFormatError}.
std::vector<GoldDialogue> LoadCorpus(const std::filesystem::path& path,
                                     const std::string& domain,
                                     const Ontology& ontology);
std::vector<GoldDialogue> ParseCorpus(const nlohmann::json& doc,
                                      const std::string& domain,
                                      const Ontology& ontology);

using ScoredTurns = std::vector<std::pair<TurnKey, DialogueState>>;

// Both sides are materialized before comparison. Throws Error{kKeyMismatch}
// when the key sets differ and Error{kInvalidArgument} when they are empty.
double JointGoalAccuracy(const ScoredTurns& preds, const ScoredTurns& golds);

// One cell per (turn, tracked slot of `domains`); absent on both sides counts
// as correct.
double SlotAccuracy(const ScoredTurns& preds, const ScoredTurns& golds,
                    const Ontology& ontology,
                    const std::vector<std::string>& domains);

struct DomainMetrics {
  double jga = 0;
  double slot_accuracy = 0;
  size_t turns = 0;
  size_t dialogues = 0;
  size_t errored_turns = 0;
  size_t slot_cells = 0;
  size_t correct_cells = 0;
};

struct MetricsReport {
  // Domains with no matching dialogue are absent here and listed in
  // `empty_domains`.
  std::map<std::string, DomainMetrics> per_domain;
  std::vector<std::string> empty_domains;
  double avg_jga = 0;
  // Pooled over every scored cell of every domain.
  double slot_accuracy = 0;
  size_t turns = 0;
  size_t dialogues = 0;
  size_t errored_turns = 0;
  bool use_filter = true;
  bool use_framework = true;

  nlohmann::json ToJson() const;
  std::string ToTable() const;
};

struct BenchmarkOptions {
  std::vector<std::string> domains;
  bool use_filter = true;
  bool use_framework = true;
  int workers = 1;
  size_t max_prompt_chars = 0;
};

struct PredictionRecord {
  std::string domain;
  TurnKey key;
  DialogueState state;
  bool errored = false;
};

struct DialogueFailure {
  std::string domain;
  std::string dialogue_id;
  TurnFailure failure;
};

struct BenchmarkResult {
  MetricsReport report;
  std::vector<PredictionRecord> predictions;
  std::vector<nlohmann::json> trace;
  std::vector<DialogueFailure> failures;
};

// Failed turns, and every later turn of the same dialogue, are scored as
// empty-state predictions.
BenchmarkResult RunBenchmark(const std::filesystem::path& corpus,
                             const Ontology& ontology,
                             const PromptLibrary& prompts,
                             TranslationBackend& backend,
                             const BenchmarkOptions& options);

// report.json, predictions.ndjson, trace.ndjson
void WriteBenchmarkOutputs(const BenchmarkResult& result,
                           const std::filesystem::path& out_dir);

}  // namespace jsondst

#endif  // JSONDST_EVAL_H_
