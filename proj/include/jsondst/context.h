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

#ifndef JSONDST_CONTEXT_H_
#define JSONDST_CONTEXT_H_

#include <optional>
#include <string>

#include "jsondst/ontology.h"
#include "jsondst/payload.h"

namespace jsondst {

// The dialogue context shown to the model: the running state rendered as a
// user-side `request`, plus (on the user step only) this turn's filtered
// system payload.
struct ContextJson {
  UserJson state_block;
  std::optional<SystemJson> system_block;

  bool operator==(const ContextJson&) const = default;
};

// Live slots only; "[Delete]" values are left out. Domains and slots come
// out in ontology declaration order.
ContextJson StateToContextJson(const DialogueState& state,
                               const Ontology& ontology);

// Throws Error{kAlreadyMerged} if `ctx` already carries a system block.
ContextJson MergeContext(const ContextJson& ctx, const SystemJson& sys);

// State block on the first line, system block (if any) on the second.
std::string SerializeContext(const ContextJson& ctx);

}  // namespace jsondst

#endif  // JSONDST_CONTEXT_H_
