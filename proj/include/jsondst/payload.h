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

// User-side and system-side intermediate JSON: the structured translation of
// one utterance, plus the lenient parser that turns raw model completions
// into them.

#ifndef JSONDST_PAYLOAD_H_
#define JSONDST_PAYLOAD_H_

#include <algorithm>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jsondst/ontology.h"

namespace jsondst {

enum class Speaker { kUser, kSystem };

std::string_view SpeakerName(Speaker side);

// String-keyed map that remembers insertion order. Payloads are tiny, so a
// vector of pairs is all that is needed.
template <typename V>
class OrderedMap {
 public:
  using value_type = std::pair<std::string, V>;
  using const_iterator = typename std::vector<value_type>::const_iterator;

  V& operator[](std::string_view key) {
    if (V* v = find(key)) return *v;
    items_.emplace_back(std::string(key), V{});
    return items_.back().second;
  }

  V* find(std::string_view key) {
    for (auto& [k, v] : items_) {
      if (k == key) return &v;
    }
    return nullptr;
  }
  const V* find(std::string_view key) const {
    for (const auto& [k, v] : items_) {
      if (k == key) return &v;
    }
    return nullptr;
  }
  bool contains(std::string_view key) const { return find(key) != nullptr; }

  bool erase(std::string_view key) {
    auto it = std::find_if(items_.begin(), items_.end(),
                           [&](const value_type& p) { return p.first == key; });
    if (it == items_.end()) return false;
    items_.erase(it);
    return true;
  }

  bool empty() const { return items_.empty(); }
  size_t size() const { return items_.size(); }
  const_iterator begin() const { return items_.begin(); }
  const_iterator end() const { return items_.end(); }

  bool operator==(const OrderedMap&) const = default;

 private:
  std::vector<value_type> items_;
};

using ValueList = std::vector<std::string>;
using SlotList = std::vector<std::string>;
// surrogate slot -> values
using SlotValues = OrderedMap<ValueList>;
// domain -> surrogate slot -> values
using DomainSlotValues = OrderedMap<SlotValues>;
// domain -> surrogate slots (same type as SlotValues)
using DomainSlots = OrderedMap<SlotList>;

struct UserJson {
  DomainSlots reject;
  DomainSlotValues request;

  bool empty() const { return reject.empty() && request.empty(); }
  bool operator==(const UserJson&) const = default;
};

struct SystemJson {
  DomainSlotValues not_available;
  DomainSlotValues info;
  DomainSlots ask_for;

  bool empty() const {
    return not_available.empty() && info.empty() && ask_for.empty();
  }
  bool operator==(const SystemJson&) const = default;
};

// A (domain, slot) pair removed during parsing because the ontology does not
// know it.
struct DroppedSlot {
  std::string action;
  std::string domain;
  std::string slot;

  bool operator==(const DroppedSlot&) const = default;
};

template <typename T>
struct Parsed {
  T value;
  std::vector<DroppedSlot> dropped;
  // Repairs applied on the way (brace balancing, hoisted actions, coerced
  // value types). Informational only.
  std::vector<std::string> notes;
};

struct ParseOptions {
  // Slots written directly under an action, without a domain level, are
  // attributed to this domain when it is set.
  std::string default_domain;
};

// Cuts the completion at the first stop token, takes the object starting at
// the first '{' and closes any brackets left open. Throws
// Error{kMalformedPayload} when there is no '{' at all.
std::string ExtractJsonObject(std::string_view raw,
                              std::vector<std::string>* notes = nullptr);

// Throw Error{kMalformedPayload} when nothing parseable is found and
// Error{kWrongSide} when the top-level key names the other speaker. Unknown
// domains and slots are dropped, never raised.
Parsed<UserJson> ParseUserJson(std::string_view raw, const Ontology& ontology,
                               const ParseOptions& options = {});
Parsed<SystemJson> ParseSystemJson(std::string_view raw,
                                   const Ontology& ontology,
                                   const ParseOptions& options = {});

// Single-line rendering with ", " and ": " separators, the layout used in
// the prompt demonstrations. Stable for identical inputs.
std::string ToText(const UserJson& json);
std::string ToText(const SystemJson& json);

}  // namespace jsondst

#endif  // JSONDST_PAYLOAD_H_
