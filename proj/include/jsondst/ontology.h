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

#ifndef JSONDST_ONTOLOGY_H_
#define JSONDST_ONTOLOGY_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace jsondst {

// Sentinel written into the state for a slot the user rejected. Scoring and
// context rendering treat it as absent.
inline constexpr std::string_view kDeleteMarker = "[Delete]";
inline constexpr std::string_view kDontCare = "dontcare";

// One trackable (or request-only) slot of a domain. `canonical` is the
// dataset name ("pricerange"), `surrogate` the name used inside prompts and
// model output ("price_range").
struct SlotDef {
  std::string canonical;
  std::string surrogate;
  bool is_entity = false;
  bool informational = false;
  std::vector<std::string> keywords;

  bool operator==(const SlotDef&) const = default;
};

struct DomainDef {
  std::string name;
  std::vector<SlotDef> slots;

  const SlotDef* FindBySurrogate(std::string_view surrogate) const;
  const SlotDef* FindByCanonical(std::string_view canonical) const;
};

// Immutable after construction. Lookups are linear; domains carry at most a
// dozen slots.
class Ontology {
 public:
  // Validates the document shape and the per-domain surrogate/canonical
  // bijection. Throws Error{kSchemaViolation} naming the offending key.
  static Ontology FromJson(const nlohmann::json& doc);
  static Ontology Load(const std::filesystem::path& path);

  const std::vector<DomainDef>& domains() const { return domains_; }
  std::vector<std::string> DomainNames() const;

  const DomainDef* FindDomain(std::string_view name) const;
  bool HasDomain(std::string_view name) const {
    return FindDomain(name) != nullptr;
  }

  // nullptr when the domain or slot is unknown.
  const SlotDef* FindSlot(std::string_view domain,
                          std::string_view surrogate) const;
  const SlotDef* FindCanonicalSlot(std::string_view domain,
                                   std::string_view canonical) const;

  // Throw Error{kUnknownSlot}.
  const std::string& ToCanonical(std::string_view domain,
                                 std::string_view surrogate) const;
  const std::string& FromCanonical(std::string_view domain,
                                   std::string_view canonical) const;

  nlohmann::json ToJson() const;

 private:
  std::vector<DomainDef> domains_;
};

// Lower-case, trim, collapse internal whitespace; "any" becomes "dontcare";
// the delete marker passes through untouched.
std::string NormalizeValue(std::string_view value);

// The tracked state: domain -> canonical slot -> value. Both levels are kept
// sorted so equality and serialization are order independent.
class DialogueState {
 public:
  using SlotMap = std::map<std::string, std::string, std::less<>>;
  using DomainMap = std::map<std::string, SlotMap, std::less<>>;

  DialogueState() = default;

  const DomainMap& entries() const { return entries_; }
  bool empty() const;
  size_t size() const;

  std::optional<std::string> Get(std::string_view domain,
                                 std::string_view slot) const;
  bool Contains(std::string_view domain, std::string_view slot) const;
  // Empty values are rejected with Error{kInvalidArgument}.
  void Set(std::string_view domain, std::string_view slot,
           std::string_view value);
  void Erase(std::string_view domain, std::string_view slot);

  // Drops slots whose value is the delete marker.
  DialogueState Materialized() const;
  // Keeps only the listed domains.
  DialogueState Project(const std::vector<std::string>& domains) const;

  nlohmann::json ToJson() const;
  // Accepts {"domain": {"slot": "value"}}; values are normalized. Keys not
  // in `ontology` raise Error{kSchemaViolation}.
  static DialogueState FromJson(const nlohmann::json& doc,
                                const class Ontology& ontology);

  bool operator==(const DialogueState&) const = default;

 private:
  DomainMap entries_;
};

}  // namespace jsondst

#endif  // JSONDST_ONTOLOGY_H_
