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

#include "jsondst/context.h"

#include "jsondst/error.h"

namespace jsondst {

ContextJson StateToContextJson(const DialogueState& state,
                               const Ontology& ontology) {
  ContextJson ctx;
  for (const auto& domain : ontology.domains()) {
    for (const auto& slot : domain.slots) {
      auto value = state.Get(domain.name, slot.canonical);
      if (!value || *value == kDeleteMarker) continue;
      ctx.state_block.request[domain.name][slot.surrogate] = {*value};
    }
  }
  return ctx;
}

ContextJson MergeContext(const ContextJson& ctx, const SystemJson& sys) {
  if (ctx.system_block) {
    throw Error(ErrorCode::kAlreadyMerged,
                "context already carries a system block");
  }
  ContextJson out = ctx;
  out.system_block = sys;
  return out;
}

std::string SerializeContext(const ContextJson& ctx) {
  std::string out = ToText(ctx.state_block);
  if (ctx.system_block) {
    out += '\n';
    out += ToText(*ctx.system_block);
  }
  return out;
}

}  // namespace jsondst
