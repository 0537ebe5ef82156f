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

// jsondst command-line tool.
//
//   jsondst eval            score a MultiWOZ-format corpus
//   jsondst inspect-prompt  print one fully substituted prompt
//   jsondst run-dialogue    trace a scripted dialogue turn by turn
//   jsondst record-fixtures author replay fixtures from hand translations
//
// Exit codes: 0 success, 1 usage or configuration error, 2 a dialogue failed
// at runtime.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jsondst/backend.h"
#include "jsondst/context.h"
#include "jsondst/error.h"
#include "jsondst/eval.h"
#include "jsondst/ontology.h"
#include "jsondst/pipeline.h"
#include "jsondst/prompt.h"

#ifndef JSONDST_DEFAULT_ASSETS
#define JSONDST_DEFAULT_ASSETS "assets"
#endif

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct AssetFlags {
  std::string assets;
  std::string ontology;
  std::string templates;
  std::string examples;

  void Register(CLI::App* cmd) {
    cmd->add_option("--assets", assets,
                    "Asset directory (default: $JSONDST_ASSETS or the "
                    "source tree)");
    cmd->add_option("--ontology", ontology, "Ontology JSON");
    cmd->add_option("--templates", templates, "Prompt template directory");
    cmd->add_option("--examples", examples, "All-slots examples JSON");
  }

  fs::path Dir() const {
    if (!assets.empty()) return assets;
    if (const char* env = std::getenv("JSONDST_ASSETS")) return env;
    return JSONDST_DEFAULT_ASSETS;
  }
  jsondst::Ontology LoadOntology() const {
    return jsondst::Ontology::Load(ontology.empty() ? Dir() / "ontology.json"
                                                    : fs::path(ontology));
  }
  jsondst::PromptLibrary LoadPrompts() const {
    return jsondst::PromptLibrary::Load(
        templates.empty() ? Dir() / "templates" : fs::path(templates),
        examples.empty() ? Dir() / "domain_examples.json" : fs::path(examples));
  }
};

struct BackendFlags {
  std::string kind = "replay";
  std::string fixtures;
  std::string config;
  std::string model;
  std::string endpoint;
  std::string api_style;
  std::string cache;
  std::optional<int> max_retries;

  void Register(CLI::App* cmd) {
    cmd->add_option("--backend", kind, "remote|replay")
        ->check(CLI::IsMember({"remote", "replay"}));
    cmd->add_option("--fixtures", fixtures, "Replay fixture file (ndjson)");
    cmd->add_option("--config", config,
                    "JSON config; its \"backend\" object seeds the backend "
                    "settings, flags override");
    cmd->add_option("--model", model, "Remote model name");
    cmd->add_option("--endpoint", endpoint, "Remote endpoint URL");
    cmd->add_option("--api-style", api_style, "chat|completion")
        ->check(CLI::IsMember({"chat", "completion"}));
    cmd->add_option("--cache", cache,
                    "Append remote completions to this fixture file");
    cmd->add_option("--max-retries", max_retries, "Remote retry budget");
  }

  jsondst::BackendConfig Build() const {
    nlohmann::json doc = nlohmann::json::object();
    if (!config.empty()) {
      std::ifstream in(config);
      if (!in) throw jsondst::Error(jsondst::ErrorCode::kMissingFile, config);
      auto file = nlohmann::json::parse(in, nullptr, false);
      if (file.is_discarded() || !file.is_object()) {
        throw jsondst::Error(jsondst::ErrorCode::kInvalidArgument,
                             config + ": not a JSON object");
      }
      doc = file.value("backend", nlohmann::json::object());
    }
    doc["kind"] = kind;
    if (!fixtures.empty()) doc["fixture_path"] = fixtures;
    if (!model.empty()) doc["model"] = model;
    if (!endpoint.empty()) doc["endpoint_url"] = endpoint;
    if (!api_style.empty()) doc["api_style"] = api_style;
    if (!cache.empty()) doc["cache_path"] = cache;
    if (max_retries) doc["max_retries"] = *max_retries;
    return jsondst::BackendConfig::FromJson(doc);
  }
};

std::vector<std::string> SplitDomains(const std::string& arg,
                                      const jsondst::Ontology& ontology) {
  if (arg == "all") return ontology.DomainNames();
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= arg.size()) {
    auto comma = arg.find(',', start);
    if (comma == std::string::npos) comma = arg.size();
    std::string name = arg.substr(start, comma - start);
    if (!ontology.HasDomain(name)) {
      throw jsondst::Error(jsondst::ErrorCode::kInvalidArgument,
                           "unknown domain '" + name + "'");
    }
    out.push_back(std::move(name));
    start = comma + 1;
  }
  return out;
}

// Either [{"system", "user"}, ...] or {"dialogue_id", "turns": [...]}.
std::pair<std::string, std::vector<jsondst::DialogueTurn>> LoadTurns(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw jsondst::Error(jsondst::ErrorCode::kMissingFile, path);
  auto doc = nlohmann::json::parse(in, nullptr, false);
  std::string id = fs::path(path).stem().string();
  if (doc.is_object()) {
    id = doc.value("dialogue_id", id);
    doc = doc.value("turns", nlohmann::json());
  }
  if (doc.is_discarded() || !doc.is_array() || doc.empty()) {
    throw jsondst::Error(jsondst::ErrorCode::kInvalidArgument,
                         path + ": expected a non-empty list of turns");
  }
  std::vector<jsondst::DialogueTurn> turns;
  for (const auto& t : doc) {
    if (!t.is_object() || !t.contains("user")) {
      throw jsondst::Error(jsondst::ErrorCode::kInvalidArgument,
                           path + ": every turn needs a \"user\" utterance");
    }
    turns.push_back({t.value("system", ""), t["user"].get<std::string>()});
  }
  return {id, turns};
}

std::string ModeName(bool no_filter, bool no_framework) {
  if (no_framework) return "no_framework";
  if (no_filter) return "no_filter";
  return "full";
}

void PrintFailure(const jsondst::TurnFailure& f, const std::string& where) {
  std::cerr << where << ": failed at turn " << f.turn << ", step " << f.step
            << ": " << f.message << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-shot dialogue state tracking through text-to-JSON "
               "translation and rule-based state updates"};
  app.require_subcommand(1);

  // eval
  AssetFlags eval_assets;
  BackendFlags eval_backend;
  std::string corpus, eval_domain = "all", out_dir = "out";
  bool no_filter = false, no_framework = false, skip_errors = false;
  int workers = 1;
  size_t max_prompt_chars = 0;
  auto* eval = app.add_subcommand("eval", "Score a MultiWOZ-format corpus");
  eval->add_option("--corpus", corpus, "Corpus JSON")->required();
  eval->add_option("--domain", eval_domain, "Domain name or 'all'");
  eval->add_option("--out", out_dir, "Output directory");
  eval->add_flag("--no-filter", no_filter, "Skip system payload filtering");
  eval->add_flag("--no-framework", no_framework,
                 "Translate system and user utterances in one prompt");
  eval->add_option("--workers", workers, "Concurrent dialogues")
      ->check(CLI::PositiveNumber);
  eval->add_flag("--skip-errors", skip_errors,
                 "Exit 0 even when dialogues fail (failed turns score empty)");
  eval->add_option("--max-prompt-chars", max_prompt_chars,
                   "Flag prompts longer than this");
  eval_assets.Register(eval);
  eval_backend.Register(eval);

  // inspect-prompt
  AssetFlags inspect_assets;
  std::string side = "user", inspect_domain, state_json = "{}", utterance,
              system_json;
  auto* inspect =
      app.add_subcommand("inspect-prompt", "Print a fully built prompt");
  inspect->add_option("--side", side, "user|system")
      ->check(CLI::IsMember({"user", "system"}));
  inspect->add_option("--domain", inspect_domain, "Domain scope (comma list)")
      ->required();
  inspect->add_option("--state", state_json, "Prior state as JSON");
  inspect->add_option("--utterance", utterance, "Utterance to translate")
      ->required();
  inspect->add_option("--system-json", system_json,
                      "System payload merged into the user-side context");
  inspect_assets.Register(inspect);

  // run-dialogue
  AssetFlags run_assets;
  BackendFlags run_backend;
  std::string turns_path, run_domain;
  bool run_no_filter = false, run_no_framework = false;
  auto* run = app.add_subcommand("run-dialogue",
                                 "Run one dialogue and print every turn");
  run->add_option("--turns", turns_path, "Turns JSON")->required();
  run->add_option("--domain", run_domain, "Domain scope (comma list or all)")
      ->required();
  run->add_flag("--no-filter", run_no_filter, "Skip system payload filtering");
  run->add_flag("--no-framework", run_no_framework,
                "Translate system and user utterances in one prompt");
  run_assets.Register(run);
  run_backend.Register(run);

  // record-fixtures
  AssetFlags rec_assets;
  std::string script, rec_out, rec_corpus, rec_turns, rec_domain = "all";
  bool rec_no_filter = false, rec_no_framework = false;
  auto* record = app.add_subcommand(
      "record-fixtures",
      "Run the pipeline on hand-written translations and save the prompts "
      "as replay fixtures");
  record->add_option("--script", script, "Translation script JSON")->required();
  record->add_option("--out", rec_out, "Fixture file to append to")->required();
  auto* rc = record->add_option("--corpus", rec_corpus, "Corpus JSON");
  auto* rt = record->add_option("--turns", rec_turns, "Turns JSON");
  rc->excludes(rt);
  record->add_option("--domain", rec_domain, "Domain scope");
  record->add_flag("--no-filter", rec_no_filter, "Record the no-filter mode");
  record->add_flag("--no-framework", rec_no_framework,
                   "Record the no-framework mode");
  rec_assets.Register(record);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*eval) {
      const auto ontology = eval_assets.LoadOntology();
      const auto prompts = eval_assets.LoadPrompts();
      auto backend = jsondst::MakeBackend(eval_backend.Build());
      jsondst::BenchmarkOptions opts;
      opts.domains = SplitDomains(eval_domain, ontology);
      opts.use_filter = !no_filter;
      opts.use_framework = !no_framework;
      opts.workers = workers;
      opts.max_prompt_chars = max_prompt_chars;
      const auto result = jsondst::RunBenchmark(corpus, ontology, prompts,
                                                *backend, opts);
      jsondst::WriteBenchmarkOutputs(result, out_dir);
      std::cout << result.report.ToTable();
      for (const auto& f : result.failures) {
        PrintFailure(f.failure, f.domain + "/" + f.dialogue_id);
      }
      return result.failures.empty() || skip_errors ? kExitOk : kExitRuntime;
    }

    if (*inspect) {
      const auto ontology = inspect_assets.LoadOntology();
      const auto prompts = inspect_assets.LoadPrompts();
      const auto domains = SplitDomains(inspect_domain, ontology);
      const auto state_doc = nlohmann::json::parse(state_json, nullptr, false);
      if (state_doc.is_discarded()) {
        throw jsondst::Error(jsondst::ErrorCode::kInvalidArgument,
                             "--state is not valid JSON");
      }
      const auto state = jsondst::DialogueState::FromJson(state_doc, ontology);
      auto ctx = jsondst::StateToContextJson(state, ontology);
      const auto speaker =
          side == "system" ? jsondst::Speaker::kSystem : jsondst::Speaker::kUser;
      if (speaker == jsondst::Speaker::kUser) {
        jsondst::SystemJson sys;
        if (!system_json.empty()) {
          sys = jsondst::ParseSystemJson(system_json, ontology).value;
        }
        ctx = jsondst::MergeContext(ctx, sys);
      }
      std::cout << jsondst::BuildPrompt(speaker, domains, ctx, utterance,
                                        ontology, prompts);
      return kExitOk;
    }

    if (*run) {
      const auto ontology = run_assets.LoadOntology();
      const auto prompts = run_assets.LoadPrompts();
      auto backend = jsondst::MakeBackend(run_backend.Build());
      auto [id, turns] = LoadTurns(turns_path);
      jsondst::PipelineDeps deps{
          ontology, prompts, *backend,
          {SplitDomains(run_domain, ontology), !run_no_filter,
           !run_no_framework, 0}};
      const auto result = jsondst::RunDialogue(id, turns, deps);
      for (const auto& t : result.turns) std::cout << t.ToJson().dump(2) << "\n";
      if (result.failure) {
        PrintFailure(*result.failure, id);
        return kExitRuntime;
      }
      if (!result.turns.empty()) {
        std::cout << "final state: "
                  << result.turns.back().final_state.ToJson().dump() << "\n";
      }
      return kExitOk;
    }

    if (*record) {
      if (rec_corpus.empty() == rec_turns.empty()) {
        std::cerr << "record-fixtures needs exactly one of --corpus/--turns\n";
        return kExitConfig;
      }
      const auto ontology = rec_assets.LoadOntology();
      const auto prompts = rec_assets.LoadPrompts();
      jsondst::FixtureWriter writer(rec_out);
      jsondst::ScriptedBackend backend(
          script, ModeName(rec_no_filter, rec_no_framework), &writer);
      const auto domains = SplitDomains(rec_domain, ontology);
      if (!rec_corpus.empty()) {
        jsondst::BenchmarkOptions opts;
        opts.domains = domains;
        opts.use_filter = !rec_no_filter;
        opts.use_framework = !rec_no_framework;
        const auto result =
            jsondst::RunBenchmark(rec_corpus, ontology, prompts, backend, opts);
        for (const auto& f : result.failures) {
          PrintFailure(f.failure, f.domain + "/" + f.dialogue_id);
        }
        return result.failures.empty() ? kExitOk : kExitRuntime;
      }
      auto [id, turns] = LoadTurns(rec_turns);
      jsondst::PipelineDeps deps{ontology, prompts, backend,
                                 {domains, !rec_no_filter, !rec_no_framework, 0}};
      const auto result = jsondst::RunDialogue(id, turns, deps);
      if (result.failure) {
        PrintFailure(*result.failure, id);
        return kExitRuntime;
      }
      return kExitOk;
    }
  } catch (const jsondst::PipelineError& e) {
    std::cerr << e.what() << "\n";
    return kExitRuntime;
  } catch (const jsondst::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
