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

#include "jsondst/filter.h"

namespace jsondst {

SystemJson FilterSystemJson(const SystemJson& sys, const UpdateOutcome& outcome,
                            const Ontology& ontology) {
  SystemJson out;
  for (const auto& [domain, slots] : sys.info) {
    for (const auto& [slot, values] : slots) {
      const SlotDef* def = ontology.FindSlot(domain, slot);
      if (!def) continue;
      if (def->is_entity || outcome.changed.contains({domain, def->canonical})) {
        out.info[domain][slot] = values;
      }
    }
  }
  return out;
}

}  // namespace jsondst
