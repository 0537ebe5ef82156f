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

#include "jsondst/update.h"

namespace jsondst {

std::string_view IgnoreReasonName(IgnoreReason reason) {
  switch (reason) {
    case IgnoreReason::kNonEntityNotInContext: return "NonEntityNotInContext";
    case IgnoreReason::kAskFor: return "AskFor";
    case IgnoreReason::kNotAvailable: return "NotAvailable";
    case IgnoreReason::kNoValue: return "NoValue";
    case IgnoreReason::kInformational: return "Informational";
    case IgnoreReason::kUnknownSlot: return "UnknownSlot";
  }
  return "Unknown";
}

namespace {

// Accumulates writes on a copy of the input and derives `changed` at the end
// by diffing the touched keys against the input.
class Updater {
 public:
  Updater(const DialogueState& input, const Ontology& ontology)
      : input_(input), ontology_(ontology) {
    out_.state = input;
  }

  const SlotDef* Lookup(const std::string& domain, const std::string& slot,
                        IgnoreReason* reason) const {
    const SlotDef* def = ontology_.FindSlot(domain, slot);
    if (!def) {
      *reason = IgnoreReason::kUnknownSlot;
    } else if (def->informational) {
      *reason = IgnoreReason::kInformational;
      return nullptr;
    }
    return def;
  }

  void Ignore(const std::string& domain, const std::string& slot,
              IgnoreReason reason) {
    out_.ignored.insert({domain, slot, reason});
  }

  void Write(const std::string& domain, const SlotDef& def,
             std::string_view value) {
    out_.state.Set(domain, def.canonical, value);
    touched_.insert({domain, def.canonical});
  }

  // Returns the normalized first value, or empty when there is none.
  std::string FirstValue(const std::string& domain, const std::string& slot,
                         const ValueList& values) {
    if (values.empty()) return {};
    if (values.size() > 1) {
      out_.notes.push_back(domain + "/" + slot + ": " +
                           std::to_string(values.size()) +
                           " values, kept the first");
    }
    return NormalizeValue(values.front());
  }

  const DialogueState& input() const { return input_; }

  UpdateOutcome Finish() && {
    for (const auto& key : touched_) {
      if (input_.Get(key.first, key.second) !=
          out_.state.Get(key.first, key.second)) {
        out_.changed.insert(key);
      }
    }
    std::erase_if(out_.ignored, [&](const IgnoredSlot& ig) {
      const SlotDef* def = ontology_.FindSlot(ig.domain, ig.surrogate);
      return def && out_.changed.contains({ig.domain, def->canonical});
    });
    return std::move(out_);
  }

 private:
  const DialogueState& input_;
  const Ontology& ontology_;
  UpdateOutcome out_;
  std::set<SlotKey> touched_;
};

}  // namespace

UpdateOutcome ApplySystemJson(const DialogueState& state,
                              const SystemJson& sys, const Ontology& ontology) {
  Updater up(state, ontology);
  for (const auto& [domain, slots] : sys.ask_for) {
    for (const auto& slot : slots) up.Ignore(domain, slot, IgnoreReason::kAskFor);
  }
  for (const auto& [domain, slots] : sys.not_available) {
    for (const auto& [slot, _] : slots) {
      up.Ignore(domain, slot, IgnoreReason::kNotAvailable);
    }
  }
  for (const auto& [domain, slots] : sys.info) {
    for (const auto& [slot, values] : slots) {
      IgnoreReason reason{};
      const SlotDef* def = up.Lookup(domain, slot, &reason);
      if (!def) {
        up.Ignore(domain, slot, reason);
        continue;
      }
      // Context membership is judged on the state passed in, not on writes
      // made earlier in this same message.
      if (!def->is_entity && !up.input().Contains(domain, def->canonical)) {
        up.Ignore(domain, slot, IgnoreReason::kNonEntityNotInContext);
        continue;
      }
      const std::string value = up.FirstValue(domain, slot, values);
      if (value.empty()) {
        up.Ignore(domain, slot, IgnoreReason::kNoValue);
        continue;
      }
      up.Write(domain, *def, value);
    }
  }
  return std::move(up).Finish();
}

UpdateOutcome ApplyUserJson(const DialogueState& state, const UserJson& usr,
                            const Ontology& ontology) {
  Updater up(state, ontology);
  for (const auto& [domain, slots] : usr.reject) {
    for (const auto& slot : slots) {
      IgnoreReason reason{};
      const SlotDef* def = up.Lookup(domain, slot, &reason);
      if (!def) {
        up.Ignore(domain, slot, reason);
        continue;
      }
      up.Write(domain, *def, kDeleteMarker);
    }
  }
  for (const auto& [domain, slots] : usr.request) {
    for (const auto& [slot, values] : slots) {
      IgnoreReason reason{};
      const SlotDef* def = up.Lookup(domain, slot, &reason);
      if (!def) {
        up.Ignore(domain, slot, reason);
        continue;
      }
      const std::string value = up.FirstValue(domain, slot, values);
      if (value.empty()) {
        up.Ignore(domain, slot, IgnoreReason::kNoValue);
        continue;
      }
      up.Write(domain, *def, value);
    }
  }
  return std::move(up).Finish();
}

}  // namespace jsondst
