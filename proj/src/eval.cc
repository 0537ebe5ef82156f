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

#include "jsondst/eval.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <thread>

#include "jsondst/error.h"

namespace jsondst {

std::vector<DialogueTurn> GoldDialogue::Utterances() const {
  std::vector<DialogueTurn> out;
  out.reserve(turns.size());
  for (const auto& t : turns) out.push_back({t.system_utterance, t.user_utterance});
  return out;
}

namespace {

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return s;
}

bool IsAbsentGold(const std::string& v) {
  return v.empty() || v == "none" || v == "not mentioned";
}

void ReadGoldSlots(const nlohmann::json& block, const std::string& prefix,
                   const std::string& domain, const Ontology& ontology,
                   DialogueState& out) {
  if (!block.is_object()) return;
  for (const auto& [key, value] : block.items()) {
    if (!value.is_string()) continue;  // e.g. "booked" lists
    const std::string canonical = prefix + Lower(key);
    const SlotDef* def = ontology.FindCanonicalSlot(domain, canonical);
    if (!def || def->informational) continue;
    const std::string v = NormalizeValue(value.get<std::string>());
    if (IsAbsentGold(v)) continue;
    out.Set(domain, canonical, v);
  }
}

bool GoalMentions(const nlohmann::json& goal, const std::string& domain) {
  if (!goal.is_object() || !goal.contains(domain)) return false;
  const auto& g = goal.at(domain);
  return g.is_object() ? !g.empty() : !g.is_null() && g != false;
}

}  // namespace

std::vector<GoldDialogue> ParseCorpus(const nlohmann::json& doc,
                                      const std::string& domain,
                                      const Ontology& ontology) {
  if (!ontology.HasDomain(domain)) {
    throw Error(ErrorCode::kInvalidArgument, "unknown domain " + domain);
  }
  if (!doc.is_object()) {
    throw Error(ErrorCode::kFormatError,
                "corpus must map dialogue ids to dialogues");
  }
  std::vector<GoldDialogue> out;
  for (const auto& [id, dialogue] : doc.items()) {
    auto fail = [&](const std::string& what) {
      throw Error(ErrorCode::kFormatError, "dialogue " + id + ": " + what);
    };
    if (!dialogue.is_object() || !dialogue.contains("log") ||
        !dialogue["log"].is_array()) {
      fail("missing 'log' list");
    }
    if (!GoalMentions(dialogue.value("goal", nlohmann::json::object()), domain)) {
      continue;
    }
    const auto& log = dialogue["log"];
    if (log.size() % 2 != 0) fail("log must alternate user and system entries");
    GoldDialogue gd;
    gd.dialogue_id = id;
    std::string previous_system;
    for (size_t i = 0; i + 1 < log.size(); i += 2) {
      const auto& usr = log[i];
      const auto& sys = log[i + 1];
      if (!usr.contains("text") || !sys.contains("text") ||
          !usr["text"].is_string() || !sys["text"].is_string()) {
        fail("log entry " + std::to_string(i) + " lacks text");
      }
      GoldTurn turn;
      turn.dialogue_id = id;
      turn.turn_index = static_cast<int>(i / 2) + 1;
      turn.system_utterance = previous_system;
      turn.user_utterance = usr["text"].get<std::string>();
      const auto meta = sys.value("metadata", nlohmann::json::object());
      if (meta.contains(domain)) {
        const auto& d = meta.at(domain);
        if (d.is_object()) {
          if (d.contains("semi")) ReadGoldSlots(d["semi"], "", domain, ontology, turn.gold_state);
          if (d.contains("book")) ReadGoldSlots(d["book"], "book ", domain, ontology, turn.gold_state);
        }
      }
      previous_system = sys["text"].get<std::string>();
      gd.turns.push_back(std::move(turn));
    }
    if (!gd.turns.empty()) out.push_back(std::move(gd));
  }
  return out;
}

std::vector<GoldDialogue> LoadCorpus(const std::filesystem::path& path,
                                     const std::string& domain,
                                     const Ontology& ontology) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kMissingFile, path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kFormatError, path.string() + ": " + e.what());
  }
  return ParseCorpus(doc, domain, ontology);
}

namespace {

std::map<TurnKey, DialogueState> Index(const ScoredTurns& turns,
                                       const char* side) {
  std::map<TurnKey, DialogueState> out;
  for (const auto& [key, state] : turns) {
    if (!out.emplace(key, state.Materialized()).second) {
      throw Error(ErrorCode::kKeyMismatch,
                  std::string("duplicate ") + side + " key " + key.dialogue_id +
                      "#" + std::to_string(key.turn));
    }
  }
  return out;
}

std::pair<std::map<TurnKey, DialogueState>, std::map<TurnKey, DialogueState>>
Align(const ScoredTurns& preds, const ScoredTurns& golds) {
  auto p = Index(preds, "prediction");
  auto g = Index(golds, "gold");
  if (p.size() != g.size() ||
      !std::equal(p.begin(), p.end(), g.begin(),
                  [](const auto& a, const auto& b) { return a.first == b.first; })) {
    throw Error(ErrorCode::kKeyMismatch,
                "prediction and gold turn keys differ");
  }
  if (p.empty()) throw Error(ErrorCode::kInvalidArgument, "no turns to score");
  return {std::move(p), std::move(g)};
}

}  // namespace

double JointGoalAccuracy(const ScoredTurns& preds, const ScoredTurns& golds) {
  const auto [p, g] = Align(preds, golds);
  size_t hits = 0;
  for (auto pi = p.begin(), gi = g.begin(); pi != p.end(); ++pi, ++gi) {
    if (pi->second == gi->second) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(p.size());
}

namespace {

std::pair<size_t, size_t> CountSlotCells(const ScoredTurns& preds,
                                         const ScoredTurns& golds,
                                         const Ontology& ontology,
                                         const std::vector<std::string>& domains) {
  const auto [p, g] = Align(preds, golds);
  size_t cells = 0;
  size_t correct = 0;
  for (auto pi = p.begin(), gi = g.begin(); pi != p.end(); ++pi, ++gi) {
    for (const auto& name : domains) {
      const DomainDef* d = ontology.FindDomain(name);
      if (!d) throw Error(ErrorCode::kInvalidArgument, "unknown domain " + name);
      for (const auto& slot : d->slots) {
        if (slot.informational) continue;
        ++cells;
        if (pi->second.Get(name, slot.canonical) ==
            gi->second.Get(name, slot.canonical)) {
          ++correct;
        }
      }
    }
  }
  return {cells, correct};
}

}  // namespace

double SlotAccuracy(const ScoredTurns& preds, const ScoredTurns& golds,
                    const Ontology& ontology,
                    const std::vector<std::string>& domains) {
  const auto [cells, correct] = CountSlotCells(preds, golds, ontology, domains);
  if (cells == 0) throw Error(ErrorCode::kInvalidArgument, "no slot cells");
  return static_cast<double>(correct) / static_cast<double>(cells);
}

BenchmarkResult RunBenchmark(const std::filesystem::path& corpus,
                             const Ontology& ontology,
                             const PromptLibrary& prompts,
                             TranslationBackend& backend,
                             const BenchmarkOptions& options) {
  std::ifstream in(corpus);
  if (!in) throw Error(ErrorCode::kMissingFile, corpus.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kFormatError, corpus.string() + ": " + e.what());
  }

  BenchmarkResult result;
  MetricsReport& report = result.report;
  report.use_filter = options.use_filter;
  report.use_framework = options.use_framework;
  size_t pooled_cells = 0;
  size_t pooled_correct = 0;

  for (const auto& domain : options.domains) {
    const auto dialogues = ParseCorpus(doc, domain, ontology);
    if (dialogues.empty()) {
      report.empty_domains.push_back(domain);
      continue;
    }
    PipelineDeps deps{ontology, prompts, backend,
                      PipelineOptions{{domain},
                                      options.use_filter,
                                      options.use_framework,
                                      options.max_prompt_chars}};

    std::vector<DialogueRun> runs(dialogues.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (size_t i = next++; i < dialogues.size(); i = next++) {
        try {
          runs[i] = RunDialogue(dialogues[i].dialogue_id,
                                dialogues[i].Utterances(), deps);
        } catch (const Error& e) {
          runs[i].dialogue_id = dialogues[i].dialogue_id;
          runs[i].failure = TurnFailure{1, 0, e.code(), e.what()};
        }
      }
    };
    {
      const int n = std::clamp(options.workers, 1,
                               static_cast<int>(dialogues.size()));
      std::vector<std::jthread> pool;
      for (int w = 1; w < n; ++w) pool.emplace_back(worker);
      worker();
    }

    DomainMetrics m;
    ScoredTurns preds, golds;
    for (size_t i = 0; i < dialogues.size(); ++i) {
      const auto& gd = dialogues[i];
      const auto& run = runs[i];
      if (run.failure) result.failures.push_back({domain, gd.dialogue_id, *run.failure});
      for (const auto& gt : gd.turns) {
        const TurnKey key{gd.dialogue_id, gt.turn_index};
        const size_t idx = static_cast<size_t>(gt.turn_index) - 1;
        PredictionRecord rec{domain, key, {}, idx >= run.turns.size()};
        if (!rec.errored) {
          const auto& tr = run.turns[idx];
          rec.state = tr.final_state.Project({domain}).Materialized();
          nlohmann::json line = tr.ToJson();
          line["dialogue_id"] = gd.dialogue_id;
          line["domain"] = domain;
          result.trace.push_back(std::move(line));
        } else {
          ++m.errored_turns;
        }
        preds.emplace_back(key, rec.state);
        golds.emplace_back(key, gt.gold_state.Project({domain}));
        result.predictions.push_back(std::move(rec));
      }
    }
    m.dialogues = dialogues.size();
    m.turns = preds.size();
    m.jga = JointGoalAccuracy(preds, golds);
    std::tie(m.slot_cells, m.correct_cells) =
        CountSlotCells(preds, golds, ontology, {domain});
    m.slot_accuracy = static_cast<double>(m.correct_cells) /
                      static_cast<double>(m.slot_cells);
    pooled_cells += m.slot_cells;
    pooled_correct += m.correct_cells;
    report.turns += m.turns;
    report.dialogues += m.dialogues;
    report.errored_turns += m.errored_turns;
    report.per_domain.emplace(domain, m);
  }

  if (!report.per_domain.empty()) {
    double sum = 0;
    for (const auto& [_, m] : report.per_domain) sum += m.jga;
    report.avg_jga = sum / static_cast<double>(report.per_domain.size());
    report.slot_accuracy = static_cast<double>(pooled_correct) /
                           static_cast<double>(pooled_cells);
  }
  return result;
}

nlohmann::json MetricsReport::ToJson() const {
  nlohmann::json domains = nlohmann::json::object();
  for (const auto& [name, m] : per_domain) {
    domains[name] = {{"jga", m.jga},
                     {"slot_accuracy", m.slot_accuracy},
                     {"turns", m.turns},
                     {"dialogues", m.dialogues},
                     {"errored_turns", m.errored_turns}};
  }
  return {{"per_domain", std::move(domains)},
          {"empty_domains", empty_domains},
          {"avg_jga", avg_jga},
          {"slot_accuracy", slot_accuracy},
          {"turns", turns},
          {"dialogues", dialogues},
          {"errored_turns", errored_turns},
          {"use_filter", use_filter},
          {"use_framework", use_framework}};
}

std::string MetricsReport::ToTable() const {
  std::string out;
  char line[128];
  std::snprintf(line, sizeof(line), "%-12s %8s %10s %7s %8s\n", "domain",
                "JGA", "slot-acc", "turns", "errored");
  out += line;
  for (const auto& [name, m] : per_domain) {
    std::snprintf(line, sizeof(line), "%-12s %8.2f %10.2f %7zu %8zu\n",
                  name.c_str(), 100.0 * m.jga, 100.0 * m.slot_accuracy,
                  m.turns, m.errored_turns);
    out += line;
  }
  std::snprintf(line, sizeof(line), "%-12s %8.2f %10.2f %7zu %8zu\n", "AVG",
                100.0 * avg_jga, 100.0 * slot_accuracy, turns, errored_turns);
  out += line;
  for (const auto& d : empty_domains) out += d + ": no dialogues\n";
  return out;
}

void WriteBenchmarkOutputs(const BenchmarkResult& result,
                           const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  auto open = [&](const char* name) {
    std::ofstream f(out_dir / name, std::ios::trunc);
    if (!f) throw Error(ErrorCode::kMissingFile, (out_dir / name).string());
    return f;
  };
  {
    auto f = open("report.json");
    f << result.report.ToJson().dump(2) << '\n';
  }
  {
    auto f = open("predictions.ndjson");
    for (const auto& p : result.predictions) {
      nlohmann::json rec = {{"dialogue_id", p.key.dialogue_id},
                            {"domain", p.domain},
                            {"turn", p.key.turn},
                            {"state", p.state.ToJson()},
                            {"errored", p.errored}};
      f << rec.dump() << '\n';
    }
  }
  {
    auto f = open("trace.ndjson");
    for (const auto& t : result.trace) f << t.dump() << '\n';
  }
}

}  // namespace jsondst
