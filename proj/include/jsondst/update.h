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

// Rule-based state updates driven by the speaker, the interaction action and
// the slot's entity flag.
//
//   user   reject         -> value becomes "[Delete]"
//   user   request        -> first value written (unless no value or
//                            request-only slot)
//   system ask_for        -> ignored
//   system not_available  -> ignored
//   system info           -> written if the slot is an entity or the key is
//                            already in the state, ignored otherwise

#ifndef JSONDST_UPDATE_H_
#define JSONDST_UPDATE_H_

#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "jsondst/ontology.h"
#include "jsondst/payload.h"

namespace jsondst {

enum class IgnoreReason {
  kNonEntityNotInContext,
  kAskFor,
  kNotAvailable,
  kNoValue,
  kInformational,
  kUnknownSlot,
};

std::string_view IgnoreReasonName(IgnoreReason reason);

struct IgnoredSlot {
  std::string domain;
  std::string surrogate;
  IgnoreReason reason;

  auto operator<=>(const IgnoredSlot&) const = default;
};

// (domain, canonical slot)
using SlotKey = std::pair<std::string, std::string>;

struct UpdateOutcome {
  DialogueState state;
  // Keys whose value differs between the input and `state`.
  std::set<SlotKey> changed;
  std::set<IgnoredSlot> ignored;
  std::vector<std::string> notes;
};

UpdateOutcome ApplySystemJson(const DialogueState& state,
                              const SystemJson& sys, const Ontology& ontology);

// Rejections are applied before requests, so a slot both rejected and
// requested in one message ends up with the requested value.
UpdateOutcome ApplyUserJson(const DialogueState& state, const UserJson& usr,
                            const Ontology& ontology);

}  // namespace jsondst

#endif  // JSONDST_UPDATE_H_
