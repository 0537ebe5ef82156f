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

#include "jsondst/ontology.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

#include "jsondst/error.h"

namespace jsondst {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMissingFile: return "MissingFile";
    case ErrorCode::kSchemaViolation: return "SchemaViolation";
    case ErrorCode::kMalformedPayload: return "MalformedPayload";
    case ErrorCode::kWrongSide: return "WrongSide";
    case ErrorCode::kUnknownSlot: return "UnknownSlot";
    case ErrorCode::kAlreadyMerged: return "AlreadyMerged";
    case ErrorCode::kMissingExample: return "MissingExample";
    case ErrorCode::kUnresolvedToken: return "UnresolvedToken";
    case ErrorCode::kFixtureMiss: return "FixtureMiss";
    case ErrorCode::kRemoteError: return "RemoteError";
    case ErrorCode::kTimeout: return "Timeout";
    case ErrorCode::kKeyMismatch: return "KeyMismatch";
    case ErrorCode::kFormatError: return "FormatError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

const SlotDef* DomainDef::FindBySurrogate(std::string_view surrogate) const {
  auto it = std::find_if(slots.begin(), slots.end(), [&](const SlotDef& s) {
    return s.surrogate == surrogate;
  });
  return it == slots.end() ? nullptr : &*it;
}

const SlotDef* DomainDef::FindByCanonical(std::string_view canonical) const {
  auto it = std::find_if(slots.begin(), slots.end(), [&](const SlotDef& s) {
    return s.canonical == canonical;
  });
  return it == slots.end() ? nullptr : &*it;
}

namespace {

[[noreturn]] void Violation(const std::string& what) {
  throw Error(ErrorCode::kSchemaViolation, what);
}

const nlohmann::json& Member(const nlohmann::json& obj, const char* key,
                             const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    Violation(where + ": missing key '" + key + "'");
  }
  return obj.at(key);
}

std::string StringMember(const nlohmann::json& obj, const char* key,
                         const std::string& where) {
  const auto& v = Member(obj, key, where);
  if (!v.is_string() || v.get<std::string>().empty()) {
    Violation(where + ": '" + key + "' must be a non-empty string");
  }
  return v.get<std::string>();
}

bool BoolMember(const nlohmann::json& obj, const char* key,
                const std::string& where) {
  if (!obj.contains(key)) return false;
  const auto& v = obj.at(key);
  if (!v.is_boolean()) Violation(where + ": '" + key + "' must be a boolean");
  return v.get<bool>();
}

}  // namespace

Ontology Ontology::FromJson(const nlohmann::json& doc) {
  const auto& domains = Member(doc, "domains", "ontology");
  if (!domains.is_array() || domains.empty()) {
    Violation("ontology: 'domains' must be a non-empty list");
  }
  Ontology out;
  std::set<std::string> seen_domains;
  for (const auto& d : domains) {
    DomainDef def;
    def.name = StringMember(d, "name", "domain");
    const std::string where = "domain '" + def.name + "'";
    if (!seen_domains.insert(def.name).second) {
      Violation(where + ": duplicate domain");
    }
    const auto& slots = Member(d, "slots", where);
    if (!slots.is_array() || slots.empty()) {
      Violation(where + ": 'slots' must be a non-empty list");
    }
    std::set<std::string> surrogates, canonicals;
    for (const auto& s : slots) {
      SlotDef slot;
      slot.canonical = StringMember(s, "canonical", where + " slot");
      const std::string swhere = where + " slot '" + slot.canonical + "'";
      slot.surrogate = StringMember(s, "surrogate", swhere);
      slot.is_entity = BoolMember(s, "is_entity", swhere);
      slot.informational = BoolMember(s, "informational", swhere);
      if (s.contains("keywords")) {
        const auto& kw = s.at("keywords");
        if (!kw.is_array() || kw.empty()) {
          Violation(swhere + ": 'keywords' must be a non-empty list");
        }
        for (const auto& k : kw) {
          if (!k.is_string()) Violation(swhere + ": keyword must be a string");
          auto value = k.get<std::string>();
          if (value.empty() || NormalizeValue(value) != value) {
            Violation(swhere + ": keyword '" + value + "' is not normalized");
          }
          slot.keywords.push_back(std::move(value));
        }
      }
      if (!canonicals.insert(slot.canonical).second) {
        Violation(where + ": duplicate canonical slot '" + slot.canonical +
                  "'");
      }
      if (!surrogates.insert(slot.surrogate).second) {
        Violation(where + ": duplicate surrogate slot '" + slot.surrogate +
                  "'");
      }
      def.slots.push_back(std::move(slot));
    }
    out.domains_.push_back(std::move(def));
  }
  return out;
}

Ontology Ontology::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kMissingFile, path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    Violation(path.string() + ": " + e.what());
  }
  return FromJson(doc);
}

std::vector<std::string> Ontology::DomainNames() const {
  std::vector<std::string> names;
  for (const auto& d : domains_) names.push_back(d.name);
  return names;
}

const DomainDef* Ontology::FindDomain(std::string_view name) const {
  auto it = std::find_if(domains_.begin(), domains_.end(),
                         [&](const DomainDef& d) { return d.name == name; });
  return it == domains_.end() ? nullptr : &*it;
}

const SlotDef* Ontology::FindSlot(std::string_view domain,
                                  std::string_view surrogate) const {
  const DomainDef* d = FindDomain(domain);
  return d ? d->FindBySurrogate(surrogate) : nullptr;
}

const SlotDef* Ontology::FindCanonicalSlot(std::string_view domain,
                                           std::string_view canonical) const {
  const DomainDef* d = FindDomain(domain);
  return d ? d->FindByCanonical(canonical) : nullptr;
}

const std::string& Ontology::ToCanonical(std::string_view domain,
                                         std::string_view surrogate) const {
  const SlotDef* s = FindSlot(domain, surrogate);
  if (!s) {
    throw Error(ErrorCode::kUnknownSlot,
                std::string(domain) + "/" + std::string(surrogate));
  }
  return s->canonical;
}

const std::string& Ontology::FromCanonical(std::string_view domain,
                                           std::string_view canonical) const {
  const SlotDef* s = FindCanonicalSlot(domain, canonical);
  if (!s) {
    throw Error(ErrorCode::kUnknownSlot,
                std::string(domain) + "/" + std::string(canonical));
  }
  return s->surrogate;
}

nlohmann::json Ontology::ToJson() const {
  nlohmann::json domains = nlohmann::json::array();
  for (const auto& d : domains_) {
    nlohmann::json slots = nlohmann::json::array();
    for (const auto& s : d.slots) {
      nlohmann::json js = {{"canonical", s.canonical},
                           {"surrogate", s.surrogate},
                           {"is_entity", s.is_entity},
                           {"informational", s.informational}};
      if (!s.keywords.empty()) js["keywords"] = s.keywords;
      slots.push_back(std::move(js));
    }
    domains.push_back({{"name", d.name}, {"slots", std::move(slots)}});
  }
  return {{"domains", std::move(domains)}};
}

std::string NormalizeValue(std::string_view value) {
  std::string out;
  out.reserve(value.size());
  bool pending_space = false;
  for (char c : value) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  if (out == kDeleteMarker) return out;
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  if (out == "any") return std::string(kDontCare);
  return out;
}

bool DialogueState::empty() const { return size() == 0; }

size_t DialogueState::size() const {
  size_t n = 0;
  for (const auto& [_, slots] : entries_) n += slots.size();
  return n;
}

std::optional<std::string> DialogueState::Get(std::string_view domain,
                                              std::string_view slot) const {
  auto d = entries_.find(domain);
  if (d == entries_.end()) return std::nullopt;
  auto s = d->second.find(slot);
  if (s == d->second.end()) return std::nullopt;
  return s->second;
}

bool DialogueState::Contains(std::string_view domain,
                             std::string_view slot) const {
  return Get(domain, slot).has_value();
}

void DialogueState::Set(std::string_view domain, std::string_view slot,
                        std::string_view value) {
  if (value.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "empty value for " + std::string(domain) + "/" +
                    std::string(slot));
  }
  auto d = entries_.find(domain);
  if (d == entries_.end()) d = entries_.emplace(std::string(domain), SlotMap{}).first;
  d->second.insert_or_assign(std::string(slot), std::string(value));
}

void DialogueState::Erase(std::string_view domain, std::string_view slot) {
  auto d = entries_.find(domain);
  if (d == entries_.end()) return;
  auto s = d->second.find(slot);
  if (s != d->second.end()) d->second.erase(s);
  if (d->second.empty()) entries_.erase(d);
}

DialogueState DialogueState::Materialized() const {
  DialogueState out;
  for (const auto& [domain, slots] : entries_) {
    for (const auto& [slot, value] : slots) {
      if (value != kDeleteMarker) out.Set(domain, slot, value);
    }
  }
  return out;
}

DialogueState DialogueState::Project(
    const std::vector<std::string>& domains) const {
  DialogueState out;
  for (const auto& [domain, slots] : entries_) {
    if (std::find(domains.begin(), domains.end(), domain) == domains.end()) {
      continue;
    }
    out.entries_.emplace(domain, slots);
  }
  return out;
}

nlohmann::json DialogueState::ToJson() const {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [domain, slots] : entries_) {
    nlohmann::json js = nlohmann::json::object();
    for (const auto& [slot, value] : slots) js[slot] = value;
    out[domain] = std::move(js);
  }
  return out;
}

DialogueState DialogueState::FromJson(const nlohmann::json& doc,
                                      const Ontology& ontology) {
  if (!doc.is_object()) {
    throw Error(ErrorCode::kSchemaViolation, "state must be a JSON object");
  }
  DialogueState out;
  for (const auto& [domain, slots] : doc.items()) {
    if (!slots.is_object()) {
      throw Error(ErrorCode::kSchemaViolation,
                  "state domain '" + domain + "' must be an object");
    }
    for (const auto& [slot, value] : slots.items()) {
      if (!ontology.FindCanonicalSlot(domain, slot)) {
        throw Error(ErrorCode::kSchemaViolation,
                    "state key " + domain + "/" + slot + " not in ontology");
      }
      if (!value.is_string()) {
        throw Error(ErrorCode::kSchemaViolation,
                    "state value for " + domain + "/" + slot +
                        " must be a string");
      }
      auto v = NormalizeValue(value.get<std::string>());
      if (!v.empty()) out.Set(domain, slot, v);
    }
  }
  return out;
}

}  // namespace jsondst
