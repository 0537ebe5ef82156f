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

#ifndef JSONDST_TESTS_TEST_SUPPORT_H_
#define JSONDST_TESTS_TEST_SUPPORT_H_

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "jsondst/error.h"
#include "jsondst/ontology.h"
#include "jsondst/prompt.h"

namespace jsondst::testing {

inline std::filesystem::path AssetDir() { return JSONDST_TEST_ASSETS; }
inline std::filesystem::path FixtureDir() { return JSONDST_TEST_FIXTURES; }

inline const Ontology& TestOntology() {
  static const Ontology o = Ontology::Load(AssetDir() / "ontology.json");
  return o;
}

inline const PromptLibrary& TestPrompts() {
  static const PromptLibrary p = PromptLibrary::Load(
      AssetDir() / "templates", AssetDir() / "domain_examples.json");
  return p;
}

inline std::string ReadFile(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::filesystem::path TempDir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() /
             ("jsondst_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace jsondst::testing

// Expects `stmt` to throw jsondst::Error carrying `code_`.
#define EXPECT_JSONDST_ERROR(stmt, code_)                                  \
  do {                                                                     \
    try {                                                                  \
      stmt;                                                                \
      ADD_FAILURE() << "no exception from " #stmt;                         \
    } catch (const ::jsondst::Error& e) {                                  \
      EXPECT_EQ(e.code(), code_) << e.what();                              \
    }                                                                      \
  } while (0)

#endif  // JSONDST_TESTS_TEST_SUPPORT_H_
