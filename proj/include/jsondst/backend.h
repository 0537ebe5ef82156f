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

// Language-model backends: prompt in, completion text out.
//
// RemoteBackend talks to an OpenAI-compatible HTTP endpoint. ReplayBackend
// answers from newline-delimited fixture records keyed by the SHA-256 of the
// exact prompt, so a recorded run can be replayed bit for bit.
// ScriptedBackend answers from hand-written translations and exists to
// author those fixtures.

#ifndef JSONDST_BACKEND_H_
#define JSONDST_BACKEND_H_

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"

namespace jsondst {

inline constexpr const char* kApiKeyEnv = "LLM_API_KEY";

struct BackendConfig {
  enum class Kind { kRemote, kReplay };
  enum class ApiStyle { kChat, kCompletion };

  Kind kind = Kind::kReplay;
  ApiStyle api_style = ApiStyle::kChat;
  std::string model = "gpt-3.5-turbo";
  std::string endpoint_url = "https://api.openai.com/v1/chat/completions";
  double temperature = 0.0;
  std::vector<std::string> stop = {"[END]"};
  std::optional<int> max_tokens;
  int max_retries = 3;
  std::chrono::milliseconds timeout{60'000};
  std::chrono::milliseconds backoff_base{500};
  int max_in_flight = 4;
  std::filesystem::path fixture_path;
  // Remote completions are appended here as replay fixtures when set.
  std::filesystem::path cache_path;

  // Reads the optional JSON config document; unknown keys are rejected.
  static BackendConfig FromJson(const nlohmann::json& doc);
};

class TranslationBackend {
 public:
  virtual ~TranslationBackend() = default;
  // Safe to call concurrently.
  virtual std::string Translate(const std::string& prompt) = 0;
};

std::string Sha256Hex(std::string_view data);

struct ReplayFixture {
  std::string key;
  std::string completion;
  nlohmann::json meta;
};

// Newline-delimited {key, completion, meta}. Repeated keys are accepted only
// when they carry the same completion.
std::vector<ReplayFixture> LoadFixtures(const std::filesystem::path& path);

class ReplayBackend : public TranslationBackend {
 public:
  explicit ReplayBackend(const std::vector<ReplayFixture>& fixtures);
  explicit ReplayBackend(const std::filesystem::path& path)
      : ReplayBackend(LoadFixtures(path)) {}

  // Throws Error{kFixtureMiss} with the prompt hash and its first 120 chars.
  std::string Translate(const std::string& prompt) override;

  size_t size() const { return table_.size(); }

 private:
  std::unordered_map<std::string, std::string> table_;
};

// Appends fixture records to a file, skipping keys it already wrote.
class FixtureWriter {
 public:
  explicit FixtureWriter(const std::filesystem::path& path);

  void Append(const std::string& prompt, const std::string& completion,
              const nlohmann::json& meta);

 private:
  std::mutex mu_;
  std::ofstream out_;
  std::set<std::string> written_;
};

class RemoteBackend : public TranslationBackend {
 public:
  // Reads the API key from LLM_API_KEY when `api_key` is empty.
  explicit RemoteBackend(BackendConfig cfg, std::string api_key = {});

  // Throws Error{kRemoteError} once retries are exhausted or on a
  // non-retryable status, Error{kTimeout} when the last attempt timed out.
  std::string Translate(const std::string& prompt) override;

  // Exact request body sent for `prompt`.
  std::string RequestBody(const std::string& prompt) const;

  int attempts_made() const { return attempts_.load(); }

 private:
  void Acquire();
  void Release();
  std::chrono::milliseconds Backoff(int attempt);

  BackendConfig cfg_;
  std::string api_key_;
  std::string base_url_;
  std::string path_;
  std::unique_ptr<FixtureWriter> cache_;

  std::mutex mu_;
  std::condition_variable cv_;
  int in_flight_ = 0;
  std::mt19937 rng_{std::random_device{}()};
  std::atomic<int> attempts_{0};
};

// Hand-authored translations. Script document:
//   {"entries": [{"side": "user"|"system", "utterance": "...",
//                 "system_utterance": "..."   (merged prompts only),
//                 "domains": [...], "modes": [...]   (optional filters),
//                 "completion": "..."}]}
// The side, domain scope and dialog text are read back out of the prompt;
// the most specific matching entry wins. Every answer is also written to the
// fixture writer when one is attached.
class ScriptedBackend : public TranslationBackend {
 public:
  ScriptedBackend(const std::filesystem::path& script, std::string mode,
                  FixtureWriter* writer = nullptr);

  std::string Translate(const std::string& prompt) override;

 private:
  struct Entry {
    std::string side;
    std::string dialog;
    std::vector<std::string> domains;
    std::vector<std::string> modes;
    std::string completion;
  };
  std::vector<Entry> entries_;
  std::string mode_;
  FixtureWriter* writer_;
};

std::unique_ptr<TranslationBackend> MakeBackend(const BackendConfig& cfg);

}  // namespace jsondst

#endif  // JSONDST_BACKEND_H_
