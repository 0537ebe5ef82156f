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


// Drives the built jsondst binary and checks exit codes and outputs.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>

#include "test_support.h"

namespace jsondst {
namespace {

using testing::FixtureDir;

struct Result {
  int code;
  std::string output;  // stdout and stderr together
};

Result Cli(const std::string& args) {
  const std::string cmd = std::string(JSONDST_CLI_PATH) + " " + args + " 2>&1";
  Result r{-1, ""};
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  size_t n;
  while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) r.output.append(buf, n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string Fx(const char* name) { return (FixtureDir() / name).string(); }

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(Cli("").code, 1);
  EXPECT_EQ(Cli("frobnicate").code, 1);
  EXPECT_EQ(Cli("eval --fixtures x").code, 1);  // --corpus is required
  EXPECT_EQ(Cli("eval --corpus " + Fx("mini_corpus.json") + " --backend nope").code, 1);
  EXPECT_EQ(Cli("--help").code, 0);
}

TEST(Cli, EvalReplayWritesOutputs) {
  const auto out = testing::TempDir("cli_eval");
  const auto r = Cli("eval --corpus " + Fx("mini_corpus.json") + " --fixtures " +
                     Fx("replay.ndjson") + " --out " + out.string());
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("restaurant"), std::string::npos);
  EXPECT_NE(r.output.find("AVG"), std::string::npos);
  for (const char* f : {"report.json", "predictions.ndjson", "trace.ndjson"}) {
    EXPECT_TRUE(std::filesystem::exists(out / f)) << f;
  }
}

TEST(Cli, EvalNoFilterAlsoReplays) {
  const auto out = testing::TempDir("cli_eval_nf");
  const auto r = Cli("eval --corpus " + Fx("mini_corpus.json") + " --fixtures " +
                     Fx("replay.ndjson") + " --no-filter --out " + out.string());
  EXPECT_EQ(r.code, 0) << r.output;
}

TEST(Cli, EvalFailuresExitTwoUnlessSkipped) {
  const auto dir = testing::TempDir("cli_fail");
  std::ofstream(dir / "empty.ndjson") << "";
  const std::string base = "eval --corpus " + Fx("mini_corpus.json") +
                           " --domain restaurant --fixtures " +
                           (dir / "empty.ndjson").string() + " --out ";
  const auto strict = Cli(base + (dir / "a").string());
  EXPECT_EQ(strict.code, 2) << strict.output;
  EXPECT_NE(strict.output.find("FixtureMiss"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(dir / "a" / "report.json"));
  const auto lenient = Cli(base + (dir / "b").string() + " --skip-errors");
  EXPECT_EQ(lenient.code, 0) << lenient.output;
  EXPECT_EQ(testing::ReadFile(dir / "a" / "predictions.ndjson"),
            testing::ReadFile(dir / "b" / "predictions.ndjson"));
}

TEST(Cli, EvalConfigErrorsExitOne) {
  const auto dir = testing::TempDir("cli_cfg");
  std::ofstream(dir / "cfg.json") << R"({"backend": {"api_key": "nope"}})";
  EXPECT_EQ(Cli("eval --corpus " + Fx("mini_corpus.json") + " --fixtures " +
                Fx("replay.ndjson") + " --config " + (dir / "cfg.json").string())
                .code,
            1);
  EXPECT_EQ(Cli("eval --corpus " + Fx("mini_corpus.json") + " --domain spa --fixtures " +
                Fx("replay.ndjson"))
                .code,
            1);
  EXPECT_EQ(Cli("eval --corpus /nonexistent.json --fixtures " + Fx("replay.ndjson")).code, 1);
  EXPECT_EQ(Cli("eval --corpus " + Fx("mini_corpus.json")).code, 1);  // no fixtures
}

TEST(Cli, InspectPrompt) {
  const auto r = Cli(
      "inspect-prompt --side user --domain restaurant "
      "--state '{\"restaurant\": {\"area\": \"centre\"}}' --utterance 'cheap please'");
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("{\"restaurant\": {\"direction\": [\"centre\"]}}"),
            std::string::npos);
  EXPECT_TRUE(r.output.ends_with("user: \"cheap please\"\noutput JSON:"));
  EXPECT_EQ(Cli("inspect-prompt --domain hotel --state '{bad' --utterance x").code, 1);
  EXPECT_EQ(Cli("inspect-prompt --domain hotel --state '{\"hotel\": {\"colour\": \"x\"}}' "
                "--utterance x").code,
            1);
  EXPECT_EQ(Cli("inspect-prompt --side system --domain hotel --utterance x").code, 0);
}

TEST(Cli, RunDialogueEntitySwap) {
  const std::string base = "run-dialogue --turns " + Fx("entity_swap_turns.json") +
                           " --domain hotel,attraction --fixtures " + Fx("replay.ndjson");
  const auto full = Cli(base);
  EXPECT_EQ(full.code, 0) << full.output;
  EXPECT_NE(full.output.find(
                R"(final state: {"attraction":{"name":"nusha"},"hotel":{"name":"[Delete]"}})"),
            std::string::npos);
  const auto nf = Cli(base + " --no-framework");
  EXPECT_EQ(nf.code, 0) << nf.output;
  EXPECT_NE(nf.output.find("\"pricerange\":\"moderate\""), std::string::npos);
}

TEST(Cli, RunDialogueErrors) {
  const auto dir = testing::TempDir("cli_run");
  std::ofstream(dir / "empty.ndjson") << "";
  const auto miss = Cli("run-dialogue --turns " + Fx("entity_swap_turns.json") +
                        " --domain hotel --fixtures " + (dir / "empty.ndjson").string());
  EXPECT_EQ(miss.code, 2);
  EXPECT_NE(miss.output.find("no fixture for prompt "), std::string::npos);
  std::ofstream(dir / "turns.json") << "[]";
  EXPECT_EQ(Cli("run-dialogue --turns " + (dir / "turns.json").string() +
                " --domain hotel --fixtures " + Fx("replay.ndjson"))
                .code,
            1);
}

TEST(Cli, RecordFixturesArgumentChecks) {
  const auto dir = testing::TempDir("cli_rec");
  EXPECT_EQ(Cli("record-fixtures --script " + Fx("entity_swap_script.json") + " --out " +
                (dir / "o.ndjson").string())
                .code,
            1);
  EXPECT_EQ(Cli("record-fixtures --script " + Fx("entity_swap_script.json") + " --out " +
                (dir / "o.ndjson").string() + " --turns " + Fx("entity_swap_turns.json") +
                " --corpus " + Fx("mini_corpus.json"))
                .code,
            1);
  const auto ok = Cli("record-fixtures --script " + Fx("entity_swap_script.json") +
                      " --out " + (dir / "o.ndjson").string() + " --turns " +
                      Fx("entity_swap_turns.json") + " --domain hotel,attraction");
  EXPECT_EQ(ok.code, 0) << ok.output;
  EXPECT_TRUE(std::filesystem::exists(dir / "o.ndjson"));
}

}  // namespace
}  // namespace jsondst
