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

#include "jsondst/payload.h"

#include <array>
#include <cctype>
#include <span>

#include "jsondst/error.h"

namespace jsondst {

using ojson = nlohmann::ordered_json;

std::string_view SpeakerName(Speaker side) {
  return side == Speaker::kUser ? "user" : "system";
}

namespace {

constexpr std::string_view kStopToken = "[END]";

void Note(std::vector<std::string>* notes, std::string msg) {
  if (notes) notes->push_back(std::move(msg));
}

}  // namespace

std::string ExtractJsonObject(std::string_view raw,
                              std::vector<std::string>* notes) {
  if (auto stop = raw.find(kStopToken); stop != std::string_view::npos) {
    raw = raw.substr(0, stop);
  }
  const auto start = raw.find('{');
  if (start == std::string_view::npos) {
    throw Error(ErrorCode::kMalformedPayload, "no JSON object in completion");
  }
  std::vector<char> open;
  bool in_string = false;
  bool escaped = false;
  for (size_t i = start; i < raw.size(); ++i) {
    const char c = raw[i];
    if (in_string) {
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    switch (c) {
      case '"': in_string = true; break;
      case '{': open.push_back('}'); break;
      case '[': open.push_back(']'); break;
      case '}':
      case ']':
        if (!open.empty() && open.back() == c) open.pop_back();
        if (open.empty()) return std::string(raw.substr(start, i - start + 1));
        break;
      default: break;
    }
  }
  std::string out(raw.substr(start));
  while (!out.empty() &&
         std::isspace(static_cast<unsigned char>(out.back()))) {
    out.pop_back();
  }
  if (in_string) out.push_back('"');
  Note(notes, "closed " + std::to_string(open.size()) + " unbalanced bracket(s)");
  out.append(open.rbegin(), open.rend());
  return out;
}

namespace {

struct Sink {
  std::vector<DroppedSlot>* dropped;
  std::vector<std::string>* notes;
};

ValueList ReadValues(const ojson& v, std::string_view where, Sink& sink) {
  ValueList out;
  auto one = [&](const ojson& x) {
    if (x.is_string()) {
      out.push_back(x.get<std::string>());
    } else if (x.is_number()) {
      out.push_back(x.dump());
    } else if (x.is_boolean()) {
      out.push_back(x.get<bool>() ? "yes" : "no");
    } else if (!x.is_null()) {
      Note(sink.notes, std::string(where) + ": ignored non-scalar value");
    }
  };
  if (v.is_array()) {
    for (const auto& x : v) one(x);
  } else {
    one(v);
  }
  return out;
}

void AddSlot(SlotList& list, const std::string& slot) {
  if (std::find(list.begin(), list.end(), slot) == list.end()) {
    list.push_back(slot);
  }
}

// {domain: {slot: [values]}}
void ReadSlotValuesAction(const ojson& action, std::string_view name,
                          const Ontology& ontology, const ParseOptions& opts,
                          DomainSlotValues& out, Sink& sink) {
  if (!action.is_object()) {
    Note(sink.notes, std::string(name) + ": expected an object, ignored");
    return;
  }
  for (const auto& [key, val] : action.items()) {
    if (const DomainDef* domain = ontology.FindDomain(key)) {
      if (val.is_object()) {
        for (const auto& [slot, values] : val.items()) {
          if (domain->FindBySurrogate(slot)) {
            out[key][slot] = ReadValues(values, slot, sink);
          } else {
            sink.dropped->push_back({std::string(name), key, slot});
          }
        }
      } else if (val.is_array()) {
        Note(sink.notes, std::string(name) + "/" + key +
                             ": slot list read as slots without values");
        for (const auto& s : val) {
          if (!s.is_string()) continue;
          const auto slot = s.get<std::string>();
          if (domain->FindBySurrogate(slot)) {
            out[key][slot];
          } else {
            sink.dropped->push_back({std::string(name), key, slot});
          }
        }
      } else {
        Note(sink.notes, std::string(name) + "/" + key + ": ignored");
      }
    } else if (!opts.default_domain.empty() && !val.is_object() &&
               ontology.FindSlot(opts.default_domain, key)) {
      Note(sink.notes, std::string(name) + ": slot '" + key +
                           "' attributed to " + opts.default_domain);
      out[opts.default_domain][key] = ReadValues(val, key, sink);
    } else if (val.is_object()) {
      for (const auto& [slot, _] : val.items()) {
        sink.dropped->push_back({std::string(name), key, slot});
      }
    } else {
      // A domain-less slot with no default domain to attach it to.
      sink.dropped->push_back({std::string(name), "", key});
    }
  }
}

// {domain: [slots]}
void ReadSlotListAction(const ojson& action, std::string_view name,
                        const Ontology& ontology, DomainSlots& out,
                        Sink& sink) {
  if (!action.is_object()) {
    Note(sink.notes, std::string(name) + ": expected an object, ignored");
    return;
  }
  for (const auto& [key, val] : action.items()) {
    std::vector<std::string> slots;
    if (val.is_array()) {
      for (const auto& s : val) {
        if (s.is_string()) slots.push_back(s.get<std::string>());
      }
    } else if (val.is_string()) {
      slots.push_back(val.get<std::string>());
    } else if (val.is_object()) {
      Note(sink.notes, std::string(name) + "/" + key +
                           ": slot map read as a slot list");
      for (const auto& [slot, _] : val.items()) slots.push_back(slot);
    }
    const DomainDef* domain = ontology.FindDomain(key);
    if (!domain) {
      if (slots.empty()) {
        sink.dropped->push_back({std::string(name), "", key});
      }
      for (const auto& slot : slots) {
        sink.dropped->push_back({std::string(name), key, slot});
      }
      continue;
    }
    for (const auto& slot : slots) {
      if (domain->FindBySurrogate(slot)) {
        AddSlot(out[key], slot);
      } else {
        sink.dropped->push_back({std::string(name), key, slot});
      }
    }
  }
}

// Parses the extracted object and returns the body under the side's key,
// with known misspellings renamed and nested sibling actions hoisted to the
// top level.
ojson SideBody(std::string_view raw, Speaker side,
               std::span<const std::string_view> actions,
               std::vector<std::string>* notes) {
  const std::string text = ExtractJsonObject(raw, notes);
  ojson doc = ojson::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(ErrorCode::kMalformedPayload,
                "unparseable JSON: " + text.substr(0, 120));
  }
  const std::string own(SpeakerName(side));
  const std::string other(
      SpeakerName(side == Speaker::kUser ? Speaker::kSystem : Speaker::kUser));
  if (!doc.contains(own)) {
    if (doc.contains(other)) {
      throw Error(ErrorCode::kWrongSide,
                  "expected '" + own + "' payload, got '" + other + "'");
    }
    throw Error(ErrorCode::kMalformedPayload,
                "missing top-level '" + own + "' key");
  }
  ojson body = doc.at(own);
  if (!body.is_object()) {
    throw Error(ErrorCode::kMalformedPayload, "'" + own + "' is not an object");
  }
  if (body.contains("not_avaliabile")) {
    Note(notes, "renamed 'not_avaliabile' to 'not_available'");
    if (!body.contains("not_available")) {
      body["not_available"] = body["not_avaliabile"];
    }
    body.erase("not_avaliabile");
  }
  for (auto parent : actions) {
    const std::string p(parent);
    if (!body.contains(p) || !body[p].is_object()) continue;
    for (auto child : actions) {
      const std::string c(child);
      if (c == p || !body[p].contains(c)) continue;
      ojson moved = body[p][c];
      body[p].erase(c);
      Note(notes, "hoisted '" + c + "' out of '" + p + "'");
      if (!body.contains(c) || (body[c].is_object() && body[c].empty())) {
        body[c] = std::move(moved);
      } else if (body[c].is_object() && moved.is_object()) {
        for (auto& [k, v] : moved.items()) {
          if (!body[c].contains(k)) body[c][k] = v;
        }
      }
    }
  }
  for (const auto& [key, _] : body.items()) {
    if (std::find(actions.begin(), actions.end(), key) == actions.end()) {
      Note(notes, "ignored unknown action '" + key + "'");
    }
  }
  return body;
}

constexpr std::array<std::string_view, 2> kUserActions = {"reject", "request"};
constexpr std::array<std::string_view, 3> kSystemActions = {
    "not_available", "info", "ask_for"};

}  // namespace

Parsed<UserJson> ParseUserJson(std::string_view raw, const Ontology& ontology,
                               const ParseOptions& options) {
  Parsed<UserJson> out;
  Sink sink{&out.dropped, &out.notes};
  const ojson body = SideBody(raw, Speaker::kUser, kUserActions, &out.notes);
  if (body.contains("reject")) {
    ReadSlotListAction(body.at("reject"), "reject", ontology, out.value.reject,
                       sink);
  }
  if (body.contains("request")) {
    ReadSlotValuesAction(body.at("request"), "request", ontology, options,
                         out.value.request, sink);
  }
  return out;
}

Parsed<SystemJson> ParseSystemJson(std::string_view raw,
                                   const Ontology& ontology,
                                   const ParseOptions& options) {
  Parsed<SystemJson> out;
  Sink sink{&out.dropped, &out.notes};
  const ojson body =
      SideBody(raw, Speaker::kSystem, kSystemActions, &out.notes);
  if (body.contains("not_available")) {
    ReadSlotValuesAction(body.at("not_available"), "not_available", ontology,
                         options, out.value.not_available, sink);
  }
  if (body.contains("info")) {
    ReadSlotValuesAction(body.at("info"), "info", ontology, options,
                         out.value.info, sink);
  }
  if (body.contains("ask_for")) {
    ReadSlotListAction(body.at("ask_for"), "ask_for", ontology,
                       out.value.ask_for, sink);
  }
  return out;
}

namespace {

std::string Quote(const std::string& s) { return nlohmann::json(s).dump(); }

std::string Text(const ValueList& values) {
  std::string out = "[";
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += Quote(values[i]);
  }
  return out + "]";
}

template <typename V, typename F>
std::string Text(const OrderedMap<V>& map, F&& inner) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : map) {
    if (!first) out += ", ";
    first = false;
    out += Quote(k) + ": " + inner(v);
  }
  return out + "}";
}

std::string Text(const SlotValues& slots) {
  return Text(slots, [](const ValueList& v) { return Text(v); });
}

std::string Text(const DomainSlotValues& domains) {
  return Text(domains, [](const SlotValues& v) { return Text(v); });
}

}  // namespace

std::string ToText(const UserJson& json) {
  return "{\"user\": {\"reject\": " + Text(json.reject) +
         ", \"request\": " + Text(json.request) + "}}";
}

std::string ToText(const SystemJson& json) {
  return "{\"system\": {\"not_available\": " + Text(json.not_available) +
         ", \"info\": " + Text(json.info) +
         ", \"ask_for\": " + Text(json.ask_for) + "}}";
}

}  // namespace jsondst
