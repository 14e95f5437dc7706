#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "todg/corpus.hpp"
#include "todg/errors.hpp"
#include "todg/ontology.hpp"

namespace todg {

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

struct Placeholder {
  std::string domain;
  std::string attribute;
  int ordinal = 0;

  std::string token() const {
    return "[" + domain + "-" + attribute + std::to_string(ordinal) + "]";
  }

  bool operator==(const Placeholder&) const = default;
};

struct PlaceholderEntry {
  Placeholder placeholder;
  std::string original_value;
  std::string entity_key;  // binding group, e.g. "attraction#0"

  std::string token() const { return placeholder.token(); }

  bool operator==(const PlaceholderEntry&) const = default;
};

// A dialogue whose entity mentions (in text and annotations) are replaced by
// typed placeholder tokens, plus the table mapping them back.
struct DialogueTemplate {
  NormalizedDialogue base;
  std::vector<PlaceholderEntry> table;
  std::map<std::string, std::string> bindings;  // entity_key -> domain

  bool operator==(const DialogueTemplate&) const = default;
};

struct TemplateSet {
  Schema schema;
  std::string split;
  std::vector<DialogueTemplate> templates;
};

// ---------------------------------------------------------------------------
// Placeholder token scanning
// ---------------------------------------------------------------------------

struct TokenSpan {
  size_t pos = 0;
  size_t len = 0;
  std::string token;
};

// Matches exactly the placeholder grammar \[[a-z]+-[a-z_]+[0-9]+\].
inline std::vector<TokenSpan> find_placeholder_tokens(std::string_view text) {
  std::vector<TokenSpan> spans;
  auto lower = [](char c) { return c >= 'a' && c <= 'z'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '[') continue;
    size_t j = i + 1;
    size_t dom_begin = j;
    while (j < text.size() && lower(text[j])) ++j;
    if (j == dom_begin || j >= text.size() || text[j] != '-') continue;
    ++j;
    size_t attr_begin = j;
    while (j < text.size() && (lower(text[j]) || text[j] == '_')) ++j;
    if (j == attr_begin) continue;
    size_t dig_begin = j;
    while (j < text.size() && digit(text[j])) ++j;
    if (j == dig_begin || j >= text.size() || text[j] != ']') continue;
    spans.push_back({i, j + 1 - i, std::string(text.substr(i, j + 1 - i))});
    i = j;
  }
  return spans;
}

inline std::optional<Placeholder> parse_placeholder(const std::string& token) {
  auto spans = find_placeholder_tokens(token);
  if (spans.size() != 1 || spans[0].pos != 0 || spans[0].len != token.size())
    return std::nullopt;
  auto dash = token.find('-');
  size_t digits = token.size() - 2;  // index of last char before ']'
  while (digits > dash && token[digits - 1] >= '0' && token[digits - 1] <= '9')
    --digits;
  Placeholder p;
  p.domain = token.substr(1, dash - 1);
  p.attribute = token.substr(dash + 1, digits - dash - 1);
  p.ordinal = std::stoi(token.substr(digits, token.size() - 1 - digits));
  return p;
}

// ---------------------------------------------------------------------------
// Extraction rules
// ---------------------------------------------------------------------------

// Attributes that are globally reusable and therefore never placeholdered:
// the number of matching choices and booking reference numbers.
inline bool is_skipped_attribute(const std::string& attribute) {
  return attribute == "choice" || attribute == "ref";
}

// Times, dates and head counts are not entities: no ontology record backs
// them, so they stay verbatim in templates and in every generated dataset.
inline bool is_non_entity_attribute(const std::string& attribute) {
  static const std::set<std::string> kNonEntity = {
      "arriveby", "bookday",  "bookpeople", "bookstay", "booktime",
      "day",      "duration", "leaveat",    "people",   "stay",
      "time"};
  return kNonEntity.count(attribute) > 0;
}

// Annotation artifacts that carry no entity: yes/no flags, dontcare, etc.
inline bool is_artifact_value(const std::string& value) {
  static const std::set<std::string> kArtifacts = {
      "",     "?",        "yes",       "no",          "none",
      "dontcare", "dont care", "do n't care", "not mentioned"};
  return kArtifacts.count(to_lower_ascii(trim(value))) > 0;
}

inline bool is_extractable(const std::string& attribute, const std::string& value) {
  return !is_skipped_attribute(attribute) && !is_non_entity_attribute(attribute) &&
         !is_artifact_value(value);
}

// Identity attributes: a fresh value here introduces a new entity instance.
// Taxi endpoints are standalone entities (they name a place, not the cab).
inline bool is_name_like(const std::string& domain, const std::string& attribute) {
  if (attribute == "name") return true;
  if (domain == "train" && attribute == "trainid") return true;
  if (domain == "taxi" && (attribute == "destination" || attribute == "departure"))
    return true;
  return false;
}

inline bool is_taxi_endpoint(const std::string& domain, const std::string& attribute) {
  return domain == "taxi" && (attribute == "destination" || attribute == "departure");
}

// ---------------------------------------------------------------------------
// extract_template
// ---------------------------------------------------------------------------

namespace detail {

struct EntryDraft {
  std::string domain;      // from the first annotation of this value
  std::string attribute;
  std::string value;       // exact string of the first annotation
  std::string value_key;   // casefolded, trimmed
  int first_turn = 0;
  int first_seq = 0;       // annotation order within the dialogue
  int ordinal = -1;
  std::string entity_key;
  // text mention anchors, (turn, position) in final template text
  std::vector<std::pair<int, size_t>> anchors;
};

inline bool is_word_byte(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || u >= 0x80;
}

// Replaces the leftmost unmasked, word-bounded, case-insensitive occurrence
// of `value` in `text` with `token`. Returns true if a replacement happened;
// sets `more` if further unmasked occurrences remain and `surface` to the
// exact text that was replaced.
inline bool replace_leftmost(std::string& text, std::string& folded,
                             std::vector<char>& mask, const std::string& value_folded,
                             const std::string& token, bool& more,
                             std::string& surface) {
  more = false;
  size_t found = std::string::npos;
  for (size_t from = 0;;) {
    size_t pos = folded.find(value_folded, from);
    if (pos == std::string::npos) break;
    size_t end = pos + value_folded.size();
    bool boundary_ok =
        (pos == 0 || !is_word_byte(folded[pos - 1])) &&
        (end == folded.size() || !is_word_byte(folded[end]));
    bool unmasked = true;
    for (size_t k = pos; k < end && unmasked; ++k) unmasked = mask[k] == 0;
    if (boundary_ok && unmasked) {
      if (found == std::string::npos) {
        found = pos;
      } else {
        more = true;
        break;
      }
    }
    from = pos + 1;
  }
  if (found == std::string::npos) return false;

  const size_t end = found + value_folded.size();
  surface = text.substr(found, value_folded.size());
  text = text.substr(0, found) + token + text.substr(end);
  folded = folded.substr(0, found) + token + folded.substr(end);
  std::vector<char> new_mask(mask.begin(), mask.begin() + found);
  new_mask.insert(new_mask.end(), token.size(), 1);
  new_mask.insert(new_mask.end(), mask.begin() + end, mask.end());
  mask = std::move(new_mask);
  return true;
}

}  // namespace detail

// Builds a dialogue template: parses all act/state annotations into an
// entity -> placeholder dictionary (first annotation of a value fixes its
// placeholder; later annotations of the same string reuse it, which keeps
// taxi endpoints tied to the hotel/restaurant they refer to), rewrites
// utterances by longest-match case-insensitive word-bounded search, rewrites
// annotations exactly, and groups placeholders into entity keys.
//
// Binding: each fresh name-like value opens an entity instance; any other
// attribute joins the most recently mentioned name entity of its domain
// (text order; the co-occurrence of values inside a single record decides
// first when a source ontology is given). Taxi color/type/phone share one
// cab entity per dialogue; domains without a name mention share one
// implicit entity.
inline DialogueTemplate extract_template(const NormalizedDialogue& dialogue,
                                         const Ontology* source_ontology = nullptr,
                                         Warnings* warnings = nullptr) {
  using detail::EntryDraft;

  // Pass A: dictionary of extractable annotation values.
  std::vector<EntryDraft> entries;
  std::map<std::string, size_t> by_value;  // casefolded value -> entry index
  int seq = 0;
  auto add_instance = [&](int turn, const std::string& domain,
                          const std::string& attribute, const std::string& value) {
    if (attribute.empty() || !is_extractable(attribute, value)) return;
    std::string key = to_lower_ascii(trim(value));
    auto it = by_value.find(key);
    if (it != by_value.end()) return;  // first annotation wins
    EntryDraft e;
    e.domain = domain;
    e.attribute = attribute;
    e.value = trim(value);
    e.value_key = key;
    e.first_turn = turn;
    e.first_seq = seq++;
    by_value[key] = entries.size();
    entries.push_back(std::move(e));
  };

  for (const Turn& turn : dialogue.turns) {
    for (const Frame& frame : turn.frames) {
      for (const DialogueAct& act : frame.acts)
        add_instance(turn.index, frame.domain, act.slot, act.value);
      for (const SlotValue& sv : frame.state) {
        auto [dom, attr] = split_slot(sv.slot);
        add_instance(turn.index, dom, attr, sv.value);
      }
    }
  }

  // Ordinals: running counter per (domain, attribute), first-appearance order.
  std::map<std::pair<std::string, std::string>, int> ordinal_counter;
  for (EntryDraft& e : entries)
    e.ordinal = ordinal_counter[{e.domain, e.attribute}]++;

  auto token_of = [&](const EntryDraft& e) {
    return Placeholder{e.domain, e.attribute, e.ordinal}.token();
  };

  DialogueTemplate result;
  result.base = dialogue;

  // Pass B: rewrite utterances. Longest value first so "the gonville hotel"
  // is consumed before "gonville"; replaced spans are masked against
  // rematching. One replacement per value per utterance (leftmost wins).
  std::vector<size_t> order(entries.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (entries[a].value_key.size() != entries[b].value_key.size())
      return entries[a].value_key.size() > entries[b].value_key.size();
    return entries[a].first_seq < entries[b].first_seq;
  });

  for (Turn& turn : result.base.turns) {
    std::string folded = to_lower_ascii(turn.utterance);
    std::vector<char> mask(turn.utterance.size(), 0);
    for (size_t idx : order) {
      const EntryDraft& e = entries[idx];
      bool more = false;
      std::string surface;
      bool replaced = detail::replace_leftmost(
          turn.utterance, folded, mask, e.value_key, token_of(e), more, surface);
      if (replaced && more) {
        warn(warnings, "AmbiguousMatch",
             dialogue.dialogue_id + " turn " + std::to_string(turn.index),
             "value '" + e.value + "' occurs more than once; leftmost replaced");
      }
      // Annotation casing is authoritative: fill_identity restores e.value,
      // so a surface that differs only by case will not round-trip exactly.
      if (replaced && surface != e.value) {
        warn(warnings, "CaseMismatch",
             dialogue.dialogue_id + " turn " + std::to_string(turn.index),
             "text surface '" + surface + "' differs from annotation '" +
                 e.value + "'");
      }
    }
  }

  // Rewrite annotations: an act/state value that matches a dictionary key
  // and is itself extractable becomes the entry's token.
  auto rewrite_value = [&](const std::string& attribute, std::string& value) {
    if (attribute.empty() || !is_extractable(attribute, value)) return;
    auto it = by_value.find(to_lower_ascii(trim(value)));
    if (it == by_value.end()) return;
    value = token_of(entries[it->second]);
  };
  for (Turn& turn : result.base.turns) {
    for (Frame& frame : turn.frames) {
      for (DialogueAct& act : frame.acts) rewrite_value(act.slot, act.value);
      for (SlotValue& sv : frame.state) {
        auto [dom, attr] = split_slot(sv.slot);
        (void)dom;
        rewrite_value(attr, sv.value);
      }
    }
  }

  // Pass C: collect text mention anchors in final text order.
  std::map<std::string, size_t> by_token;
  for (size_t i = 0; i < entries.size(); ++i) by_token[token_of(entries[i])] = i;
  for (const Turn& turn : result.base.turns) {
    for (const TokenSpan& span : find_placeholder_tokens(turn.utterance)) {
      auto it = by_token.find(span.token);
      if (it != by_token.end())
        entries[it->second].anchors.emplace_back(turn.index, span.pos);
    }
  }
  for (const EntryDraft& e : entries) {
    if (e.anchors.empty()) {
      warn(warnings, "ValueNotFound", dialogue.dialogue_id,
           "annotated value '" + e.value + "' (" + e.domain + "-" + e.attribute +
               ") does not occur in any utterance");
    }
  }

  // Pass D: entity binding.
  std::map<std::string, int> key_counter;  // per-domain running id
  auto new_key = [&](const std::string& domain) {
    int k = key_counter[domain]++;
    return domain + "#" + std::to_string(k);
  };

  using Anchor = std::pair<int, size_t>;
  const Anchor kUnanchored{std::numeric_limits<int>::max(),
                           std::numeric_limits<size_t>::max()};
  auto first_anchor = [&](const EntryDraft& e) -> Anchor {
    if (!e.anchors.empty()) return e.anchors.front();
    return {e.first_turn, std::numeric_limits<size_t>::max()};
  };

  std::vector<size_t> by_seq(entries.size());
  for (size_t i = 0; i < by_seq.size(); ++i) by_seq[i] = i;
  std::sort(by_seq.begin(), by_seq.end(), [&](size_t a, size_t b) {
    return entries[a].first_seq < entries[b].first_seq;
  });

  // Names first.
  for (size_t idx : by_seq) {
    EntryDraft& e = entries[idx];
    if (is_name_like(e.domain, e.attribute)) e.entity_key = new_key(e.domain);
  }

  std::map<std::string, std::string> cab_key;       // taxi color/type/phone
  std::map<std::string, std::string> implicit_key;  // domains with no names

  for (size_t idx : by_seq) {
    EntryDraft& e = entries[idx];
    if (!e.entity_key.empty()) continue;

    if (e.domain == "taxi" && !is_taxi_endpoint(e.domain, e.attribute)) {
      auto it = cab_key.find(e.domain);
      if (it == cab_key.end()) it = cab_key.emplace(e.domain, new_key(e.domain)).first;
      e.entity_key = it->second;
      continue;
    }

    std::vector<size_t> candidates;
    for (size_t j = 0; j < entries.size(); ++j) {
      if (entries[j].domain == e.domain &&
          is_name_like(entries[j].domain, entries[j].attribute))
        candidates.push_back(j);
    }

    if (source_ontology != nullptr && !candidates.empty()) {
      std::vector<size_t> cooccur;
      for (size_t j : candidates) {
        if (source_ontology->co_occur(e.domain, entries[j].value, e.attribute,
                                      e.value))
          cooccur.push_back(j);
      }
      if (!cooccur.empty()) candidates = std::move(cooccur);
    }

    if (candidates.empty()) {
      auto it = implicit_key.find(e.domain);
      if (it == implicit_key.end())
        it = implicit_key.emplace(e.domain, new_key(e.domain)).first;
      e.entity_key = it->second;
      continue;
    }

    // Most recent name mention at or before this entry's first mention,
    // falling back to the nearest following one.
    Anchor target = first_anchor(e);
    size_t best = candidates.front();
    Anchor best_anchor = kUnanchored;
    bool have_preceding = false;
    for (size_t j : candidates) {
      std::vector<Anchor> anchors = entries[j].anchors;
      if (anchors.empty()) anchors.push_back(first_anchor(entries[j]));
      for (const Anchor& a : anchors) {
        if (a <= target) {
          if (!have_preceding || a > best_anchor) {
            best = j;
            best_anchor = a;
            have_preceding = true;
          }
        } else if (!have_preceding) {
          if (best_anchor == kUnanchored || a < best_anchor) {
            best = j;
            best_anchor = a;
          }
        }
      }
    }
    e.entity_key = entries[best].entity_key;
  }

  // Assemble table in first-appearance order.
  for (size_t idx : by_seq) {
    const EntryDraft& e = entries[idx];
    PlaceholderEntry entry;
    entry.placeholder = {e.domain, e.attribute, e.ordinal};
    entry.original_value = e.value;
    entry.entity_key = e.entity_key;
    result.table.push_back(std::move(entry));
    result.bindings[e.entity_key] = e.domain;
  }

  return result;
}

// ---------------------------------------------------------------------------
// Template validation / fill_identity
// ---------------------------------------------------------------------------

inline std::set<std::string> collect_template_tokens(const NormalizedDialogue& base) {
  std::set<std::string> tokens;
  auto scan = [&](const std::string& text) {
    for (const TokenSpan& span : find_placeholder_tokens(text))
      tokens.insert(span.token);
  };
  for (const Turn& turn : base.turns) {
    scan(turn.utterance);
    for (const Frame& frame : turn.frames) {
      for (const DialogueAct& act : frame.acts) scan(act.value);
      for (const SlotValue& sv : frame.state) scan(sv.value);
    }
  }
  return tokens;
}

inline void validate_template(const DialogueTemplate& tpl) {
  std::set<std::string> table_tokens;
  for (const PlaceholderEntry& e : tpl.table) {
    if (e.original_value.empty())
      throw SchemaError("template " + tpl.base.dialogue_id +
                        ": empty original_value for " + e.token());
    if (!table_tokens.insert(e.token()).second)
      throw SchemaError("template " + tpl.base.dialogue_id +
                        ": token " + e.token() + " appears twice in table");
    auto it = tpl.bindings.find(e.entity_key);
    if (it == tpl.bindings.end())
      throw SchemaError("template " + tpl.base.dialogue_id + ": entity_key '" +
                        e.entity_key + "' missing from bindings");
    if (it->second != e.placeholder.domain)
      throw SchemaError("template " + tpl.base.dialogue_id + ": entity_key '" +
                        e.entity_key + "' mixes domains");
  }
  for (const std::string& token : collect_template_tokens(tpl.base)) {
    if (table_tokens.count(token) == 0)
      throw DanglingPlaceholder("template " + tpl.base.dialogue_id +
                                ": token " + token + " has no table entry");
  }
}

inline std::string replace_all(std::string text, const std::string& needle,
                               const std::string& replacement) {
  for (size_t pos = 0; (pos = text.find(needle, pos)) != std::string::npos;
       pos += replacement.size()) {
    text = text.substr(0, pos) + replacement + text.substr(pos + needle.size());
  }
  return text;
}

// Substitutes every table entry's original value back for its token.
// Inverse of extract_template on the dialogue it came from.
inline NormalizedDialogue fill_identity(const DialogueTemplate& tpl) {
  validate_template(tpl);
  NormalizedDialogue out = tpl.base;
  std::map<std::string, std::string> values;
  for (const PlaceholderEntry& e : tpl.table) values[e.token()] = e.original_value;

  for (Turn& turn : out.turns) {
    for (const auto& [token, value] : values)
      turn.utterance = replace_all(turn.utterance, token, value);
    for (Frame& frame : turn.frames) {
      for (DialogueAct& act : frame.acts) {
        auto it = values.find(act.value);
        if (it != values.end()) act.value = it->second;
      }
      for (SlotValue& sv : frame.state) {
        auto it = values.find(sv.value);
        if (it != values.end()) sv.value = it->second;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Template set I/O (corpus JSON extended with "table" and "bindings")
// ---------------------------------------------------------------------------

inline json template_to_json(const DialogueTemplate& tpl) {
  json j = dialogue_to_json(tpl.base);
  json table = json::array();
  for (const PlaceholderEntry& e : tpl.table) {
    table.push_back({{"token", e.token()},
                     {"domain", e.placeholder.domain},
                     {"attribute", e.placeholder.attribute},
                     {"ordinal", e.placeholder.ordinal},
                     {"original_value", e.original_value},
                     {"entity_key", e.entity_key}});
  }
  j["table"] = table;
  j["bindings"] = tpl.bindings;
  return j;
}

inline DialogueTemplate template_from_json(const json& j) {
  DialogueTemplate tpl;
  tpl.base = dialogue_from_json(j);
  for (const json& je : j.at("table")) {
    PlaceholderEntry e;
    e.placeholder.domain = je.at("domain").get<std::string>();
    e.placeholder.attribute = je.at("attribute").get<std::string>();
    e.placeholder.ordinal = je.at("ordinal").get<int>();
    e.original_value = je.at("original_value").get<std::string>();
    e.entity_key = je.at("entity_key").get<std::string>();
    if (je.at("token").get<std::string>() != e.token())
      throw ParseError("template table token mismatch for " + e.token());
    tpl.table.push_back(std::move(e));
  }
  if (j.contains("bindings"))
    tpl.bindings = j.at("bindings").get<std::map<std::string, std::string>>();
  return tpl;
}

inline json template_set_to_json(const TemplateSet& set) {
  json dialogues = json::array();
  for (const DialogueTemplate& tpl : set.templates)
    dialogues.push_back(template_to_json(tpl));
  return {{"schema", set.schema}, {"split", set.split}, {"dialogues", dialogues}};
}

inline TemplateSet template_set_from_json(const json& j) {
  TemplateSet set;
  set.schema = j.at("schema").get<Schema>();
  set.split = j.at("split").get<std::string>();
  for (const json& jd : j.at("dialogues"))
    set.templates.push_back(template_from_json(jd));
  return set;
}

inline TemplateSet load_template_set(const std::string& path) {
  json j = read_json_file(path);
  try {
    TemplateSet set = template_set_from_json(j);
    for (const DialogueTemplate& tpl : set.templates) validate_template(tpl);
    return set;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline void write_template_set(const TemplateSet& set, const std::string& path) {
  write_text_file(path, canonical_dump(template_set_to_json(set)));
}

// Extracts templates for a whole corpus.
inline TemplateSet extract_templates(const Corpus& corpus,
                                     const Ontology* source_ontology = nullptr,
                                     Warnings* warnings = nullptr) {
  TemplateSet set;
  set.schema = corpus.schema;
  set.split = corpus.split;
  for (const NormalizedDialogue& d : corpus.dialogues)
    set.templates.push_back(extract_template(d, source_ontology, warnings));
  return set;
}

}  // namespace todg
