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

#include "jsondst/backend.h"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "jsondst/error.h"
#include "jsondst/payload.h"
#include "jsondst/prompt.h"

namespace jsondst {

namespace {

std::string Preview(const std::string& prompt) {
  return prompt.substr(0, 120);
}

}  // namespace

BackendConfig BackendConfig::FromJson(const nlohmann::json& doc) {
  if (!doc.is_object()) {
    throw Error(ErrorCode::kInvalidArgument, "backend config must be an object");
  }
  BackendConfig cfg;
  for (const auto& [key, v] : doc.items()) {
    try {
      if (key == "kind") {
        const auto s = v.get<std::string>();
        if (s == "remote") {
          cfg.kind = Kind::kRemote;
        } else if (s == "replay") {
          cfg.kind = Kind::kReplay;
        } else {
          throw Error(ErrorCode::kInvalidArgument, "unknown backend kind " + s);
        }
      } else if (key == "api_style") {
        const auto s = v.get<std::string>();
        if (s == "chat") {
          cfg.api_style = ApiStyle::kChat;
        } else if (s == "completion") {
          cfg.api_style = ApiStyle::kCompletion;
        } else {
          throw Error(ErrorCode::kInvalidArgument, "unknown api_style " + s);
        }
      } else if (key == "model") {
        cfg.model = v.get<std::string>();
      } else if (key == "endpoint_url") {
        cfg.endpoint_url = v.get<std::string>();
      } else if (key == "temperature") {
        cfg.temperature = v.get<double>();
      } else if (key == "stop") {
        cfg.stop = v.get<std::vector<std::string>>();
      } else if (key == "max_tokens") {
        cfg.max_tokens = v.get<int>();
      } else if (key == "max_retries") {
        cfg.max_retries = v.get<int>();
      } else if (key == "timeout_ms") {
        cfg.timeout = std::chrono::milliseconds(v.get<int>());
      } else if (key == "backoff_ms") {
        cfg.backoff_base = std::chrono::milliseconds(v.get<int>());
      } else if (key == "max_in_flight") {
        cfg.max_in_flight = std::max(1, v.get<int>());
      } else if (key == "fixture_path") {
        cfg.fixture_path = v.get<std::string>();
      } else if (key == "cache_path") {
        cfg.cache_path = v.get<std::string>();
      } else {
        throw Error(ErrorCode::kInvalidArgument,
                    "unknown backend config key '" + key + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kInvalidArgument,
                  "backend config '" + key + "': " + e.what());
    }
  }
  return cfg;
}

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

std::vector<ReplayFixture> LoadFixtures(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kMissingFile, path.string());
  std::vector<ReplayFixture> out;
  std::unordered_map<std::string, size_t> index;
  std::string line;
  for (size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto rec = nlohmann::json::parse(line, nullptr, false);
    const std::string where = path.string() + ":" + std::to_string(lineno);
    if (rec.is_discarded() || !rec.is_object() || !rec.contains("key") ||
        !rec.contains("completion") || !rec["key"].is_string() ||
        !rec["completion"].is_string()) {
      throw Error(ErrorCode::kFormatError,
                  where + ": expected {key, completion, meta}");
    }
    ReplayFixture f{rec["key"].get<std::string>(),
                    rec["completion"].get<std::string>(),
                    rec.value("meta", nlohmann::json::object())};
    if (auto it = index.find(f.key); it != index.end()) {
      if (out[it->second].completion != f.completion) {
        throw Error(ErrorCode::kFormatError,
                    where + ": key " + f.key + " repeated with a different completion");
      }
      continue;
    }
    index.emplace(f.key, out.size());
    out.push_back(std::move(f));
  }
  return out;
}

ReplayBackend::ReplayBackend(const std::vector<ReplayFixture>& fixtures) {
  for (const auto& f : fixtures) table_.emplace(f.key, f.completion);
}

std::string ReplayBackend::Translate(const std::string& prompt) {
  const std::string key = Sha256Hex(prompt);
  auto it = table_.find(key);
  if (it == table_.end()) {
    throw Error(ErrorCode::kFixtureMiss,
                "no fixture for prompt " + key + " (\"" + Preview(prompt) +
                    "\")");
  }
  return it->second;
}

FixtureWriter::FixtureWriter(const std::filesystem::path& path) {
  // Keys already in the file are not written again.
  if (std::filesystem::exists(path)) {
    for (const auto& f : LoadFixtures(path)) written_.insert(f.key);
  }
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  out_.open(path, std::ios::app);
  if (!out_) throw Error(ErrorCode::kMissingFile, path.string());
}

void FixtureWriter::Append(const std::string& prompt,
                           const std::string& completion,
                           const nlohmann::json& meta) {
  const std::string key = Sha256Hex(prompt);
  std::lock_guard lock(mu_);
  if (!written_.insert(key).second) return;
  nlohmann::json rec = {{"key", key}, {"completion", completion}, {"meta", meta}};
  out_ << rec.dump() << '\n';
  out_.flush();
}

RemoteBackend::RemoteBackend(BackendConfig cfg, std::string api_key)
    : cfg_(std::move(cfg)), api_key_(std::move(api_key)) {
  if (api_key_.empty()) {
    if (const char* env = std::getenv(kApiKeyEnv)) api_key_ = env;
  }
  const std::string& url = cfg_.endpoint_url;
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument, "endpoint url needs a scheme: " + url);
  }
  const auto slash = url.find('/', scheme + 3);
  base_url_ = url.substr(0, slash);
  path_ = slash == std::string::npos ? "/" : url.substr(slash);
  if (!cfg_.cache_path.empty()) {
    cache_ = std::make_unique<FixtureWriter>(cfg_.cache_path);
  }
}

std::string RemoteBackend::RequestBody(const std::string& prompt) const {
  nlohmann::ordered_json body;
  body["model"] = cfg_.model;
  if (cfg_.api_style == BackendConfig::ApiStyle::kChat) {
    body["messages"] = {{{"role", "user"}, {"content", prompt}}};
  } else {
    body["prompt"] = prompt;
  }
  body["temperature"] = cfg_.temperature;
  body["stop"] = cfg_.stop;
  if (cfg_.max_tokens) body["max_tokens"] = *cfg_.max_tokens;
  return body.dump();
}

void RemoteBackend::Acquire() {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [&] { return in_flight_ < std::max(1, cfg_.max_in_flight); });
  ++in_flight_;
}

void RemoteBackend::Release() {
  {
    std::lock_guard lock(mu_);
    --in_flight_;
  }
  cv_.notify_one();
}

std::chrono::milliseconds RemoteBackend::Backoff(int attempt) {
  double jitter;
  {
    std::lock_guard lock(mu_);
    jitter = std::uniform_real_distribution<double>(0.5, 1.5)(rng_);
  }
  const double ms = static_cast<double>(cfg_.backoff_base.count()) *
                    static_cast<double>(1 << std::min(attempt, 16)) * jitter;
  return std::chrono::milliseconds(static_cast<long long>(ms));
}

std::string RemoteBackend::Translate(const std::string& prompt) {
  const std::string body = RequestBody(prompt);
  httplib::Headers headers;
  if (!api_key_.empty()) {
    headers.emplace("Authorization", "Bearer " + api_key_);
  }

  struct InFlightGuard {
    RemoteBackend* self;
    ~InFlightGuard() { self->Release(); }
  };
  Acquire();
  InFlightGuard guard{this};

  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(cfg_.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(
      cfg_.timeout - secs);
  std::string last_error;
  bool last_timed_out = false;
  for (int attempt = 0; attempt <= cfg_.max_retries; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(Backoff(attempt - 1));
    ++attempts_;
    httplib::Client client(base_url_);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    auto res = client.Post(path_, headers, body, "application/json");
    if (!res) {
      const auto err = res.error();
      last_timed_out = err == httplib::Error::ConnectionTimeout ||
                       err == httplib::Error::Read;
      last_error = "transport error: " + httplib::to_string(err);
      continue;
    }
    last_timed_out = false;
    if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw Error(ErrorCode::kRemoteError,
                  "HTTP " + std::to_string(res->status) + ": " +
                      res->body.substr(0, 200));
    }
    const auto doc = nlohmann::json::parse(res->body, nullptr, false);
    std::string completion;
    try {
      const auto& choice = doc.at("choices").at(0);
      completion = cfg_.api_style == BackendConfig::ApiStyle::kChat
                       ? choice.at("message").at("content").get<std::string>()
                       : choice.at("text").get<std::string>();
    } catch (const nlohmann::json::exception&) {
      throw Error(ErrorCode::kRemoteError,
                  "unexpected response shape: " + res->body.substr(0, 200));
    }
    if (cache_) {
      cache_->Append(prompt, completion,
                     {{"model", cfg_.model}, {"prompt_head", Preview(prompt)}});
    }
    return completion;
  }
  const std::string msg = last_error + " after " +
                          std::to_string(cfg_.max_retries + 1) + " attempts";
  throw Error(last_timed_out ? ErrorCode::kTimeout : ErrorCode::kRemoteError,
              msg);
}

namespace {

std::string ReadPromptSide(const std::string& prompt) {
  return prompt.starts_with("translate system") ? "system" : "user";
}

std::vector<std::string> ReadPromptDomains(const std::string& prompt) {
  constexpr std::string_view kPrefix = "\ndomains: ";
  const auto pos = prompt.rfind(kPrefix);
  if (pos == std::string::npos) return {};
  const auto start = pos + kPrefix.size();
  const auto end = prompt.find('\n', start);
  std::string list = prompt.substr(start, end - start);
  std::vector<std::string> out;
  size_t i = 0;
  while (i <= list.size()) {
    auto comma = list.find(", ", i);
    if (comma == std::string::npos) comma = list.size();
    out.push_back(list.substr(i, comma - i));
    i = comma + 2;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string ReadPromptDialog(const std::string& prompt) {
  constexpr std::string_view kOpen = "\ninput message:\n";
  constexpr std::string_view kClose = "\noutput JSON:";
  const auto open = prompt.rfind(kOpen);
  const auto close = prompt.rfind(kClose);
  if (open == std::string::npos || close == std::string::npos || close < open) {
    return {};
  }
  const auto start = open + kOpen.size();
  return prompt.substr(start, close - start);
}

}  // namespace

ScriptedBackend::ScriptedBackend(const std::filesystem::path& script,
                                 std::string mode, FixtureWriter* writer)
    : mode_(std::move(mode)), writer_(writer) {
  std::ifstream in(script);
  if (!in) throw Error(ErrorCode::kMissingFile, script.string());
  const auto doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.contains("entries")) {
    throw Error(ErrorCode::kFormatError,
                script.string() + ": expected {\"entries\": [...]}");
  }
  for (const auto& e : doc["entries"]) {
    try {
      Entry entry;
      entry.side = e.at("side").get<std::string>();
      const Speaker side =
          entry.side == "system" ? Speaker::kSystem : Speaker::kUser;
      const std::string utterance = e.at("utterance").get<std::string>();
      if (e.contains("system_utterance")) {
        entry.dialog =
            TagUtterance(Speaker::kSystem,
                         e["system_utterance"].get<std::string>()) +
            "\n" + TagUtterance(Speaker::kUser, utterance);
      } else {
        entry.dialog = TagUtterance(side, utterance);
      }
      entry.domains = e.value("domains", std::vector<std::string>{});
      std::sort(entry.domains.begin(), entry.domains.end());
      entry.modes = e.value("modes", std::vector<std::string>{});
      entry.completion = e.at("completion").get<std::string>();
      entries_.push_back(std::move(entry));
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorCode::kFormatError,
                  script.string() + ": bad entry: " + ex.what());
    }
  }
}

std::string ScriptedBackend::Translate(const std::string& prompt) {
  const std::string side = ReadPromptSide(prompt);
  const std::vector<std::string> domains = ReadPromptDomains(prompt);
  const std::string dialog = ReadPromptDialog(prompt);
  const Entry* best = nullptr;
  int best_score = -1;
  for (const auto& e : entries_) {
    if (e.side != side || e.dialog != dialog) continue;
    if (!e.domains.empty() && e.domains != domains) continue;
    if (!e.modes.empty() &&
        std::find(e.modes.begin(), e.modes.end(), mode_) == e.modes.end()) {
      continue;
    }
    const int score = (e.domains.empty() ? 0 : 1) + (e.modes.empty() ? 0 : 2);
    if (score > best_score) {
      best = &e;
      best_score = score;
    }
  }
  if (!best) {
    throw Error(ErrorCode::kFixtureMiss,
                "no scripted " + side + " translation for " + dialog +
                    " (mode " + mode_ + ")");
  }
  if (writer_) {
    writer_->Append(prompt, best->completion,
                    {{"side", side}, {"dialog", dialog}, {"domains", domains},
                     {"mode", mode_}});
  }
  return best->completion;
}

std::unique_ptr<TranslationBackend> MakeBackend(const BackendConfig& cfg) {
  if (cfg.kind == BackendConfig::Kind::kReplay) {
    if (cfg.fixture_path.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "replay backend needs a fixture path");
    }
    return std::make_unique<ReplayBackend>(cfg.fixture_path);
  }
  return std::make_unique<RemoteBackend>(cfg);
}

}  // namespace jsondst
