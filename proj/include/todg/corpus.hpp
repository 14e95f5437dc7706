#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "todg/errors.hpp"

namespace todg {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

// One dialogue act: (act_type, slot, value). Slot/value may be empty for
// acts that carry no arguments (e.g. a bare "reqmore").
struct DialogueAct {
  std::string act_type;
  std::string slot;
  std::string value;

  bool operator==(const DialogueAct&) const = default;
};

// Cumulative belief-state entry. `slot` has the form "<domain>-<attribute>".
struct SlotValue {
  std::string slot;
  std::string value;

  bool operator==(const SlotValue&) const = default;
  auto operator<=>(const SlotValue&) const = default;
};

struct Frame {
  std::string domain;
  std::vector<DialogueAct> acts;
  std::vector<SlotValue> state;  // user turns only

  bool operator==(const Frame&) const = default;
};

struct Turn {
  int index = 0;
  std::string speaker;  // "user" | "system"
  std::string utterance;
  std::vector<Frame> frames;

  bool operator==(const Turn&) const = default;
};

struct NormalizedDialogue {
  std::string dialogue_id;
  std::string language;  // ISO-639-1 of the context language
  std::vector<Turn> turns;

  bool operator==(const NormalizedDialogue&) const = default;
};

// domain -> sorted attribute names
using Schema = std::map<std::string, std::vector<std::string>>;

struct Corpus {
  Schema schema;
  std::string split;  // "train" | "dev" | "test"
  std::vector<NormalizedDialogue> dialogues;

  bool operator==(const Corpus&) const = default;
};

inline const std::vector<std::string>& known_domains() {
  static const std::vector<std::string> domains = {
      "attraction", "hospital", "hotel", "police",
      "restaurant", "taxi",     "train"};
  return domains;
}

inline bool is_known_domain(const std::string& d) {
  const auto& ds = known_domains();
  return std::find(ds.begin(), ds.end(), d) != ds.end();
}

// ---------------------------------------------------------------------------
// Text helpers
// ---------------------------------------------------------------------------

inline std::string to_lower_ascii(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

inline bool is_sentence_punct(char c) {
  return c == '.' || c == ',' || c == '!' || c == '?';
}

// The single tokenization rule shared by scoring, BLEU and audits:
// lowercase, detach . , ! ? into their own tokens, then split on
// whitespace. Placeholder tokens like "[hotel-name0]" contain none of the
// detached characters and survive intact.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::string spaced;
  spaced.reserve(text.size() + 8);
  for (char c : text) {
    if (is_sentence_punct(c)) {
      spaced.push_back(' ');
      spaced.push_back(c);
      spaced.push_back(' ');
    } else {
      spaced.push_back(c);
    }
  }
  std::vector<std::string> tokens;
  std::istringstream in(to_lower_ascii(spaced));
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

inline std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

inline std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Splits "<domain>-<attribute>" at the first dash.
inline std::pair<std::string, std::string> split_slot(const std::string& slot) {
  auto dash = slot.find('-');
  if (dash == std::string::npos || dash == 0 || dash + 1 == slot.size()) {
    throw SchemaError("slot '" + slot + "' does not parse as domain-attribute");
  }
  return {slot.substr(0, dash), slot.substr(dash + 1)};
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

inline bool schema_has(const Schema& schema, const std::string& domain,
                       const std::string& attribute) {
  auto it = schema.find(domain);
  if (it == schema.end()) return false;
  return std::find(it->second.begin(), it->second.end(), attribute) !=
         it->second.end();
}

inline void validate_dialogue(const NormalizedDialogue& d, const Schema& schema,
                              Warnings* warnings = nullptr) {
  if (d.dialogue_id.empty())
    throw SchemaError("dialogue with empty dialogue_id");
  if (d.language.empty())
    throw SchemaError("dialogue " + d.dialogue_id + " has empty language");

  std::map<std::string, std::set<SlotValue>> prev_user_state;  // per domain
  for (size_t t = 0; t < d.turns.size(); ++t) {
    const Turn& turn = d.turns[t];
    const std::string where =
        "dialogue " + d.dialogue_id + " turn " + std::to_string(turn.index);
    if (turn.index != static_cast<int>(t))
      throw SchemaError(where + ": turn indices must be contiguous from 0, got " +
                        std::to_string(turn.index) + " at position " +
                        std::to_string(t));
    const std::string expected = (t % 2 == 0) ? "user" : "system";
    if (turn.speaker != expected)
      throw SchemaError(where + ": speakers must alternate starting with user, got '" +
                        turn.speaker + "'");
    if (turn.utterance.empty())
      throw SchemaError(where + ": empty utterance");

    std::set<std::string> seen_domains;
    for (const Frame& frame : turn.frames) {
      if (schema.find(frame.domain) == schema.end())
        throw SchemaError(where + ": unknown domain '" + frame.domain + "'");
      if (!seen_domains.insert(frame.domain).second)
        throw SchemaError(where + ": more than one frame for domain '" +
                          frame.domain + "'");
      for (const DialogueAct& act : frame.acts) {
        if (act.act_type.empty())
          throw SchemaError(where + ": act with empty act_type");
        if (!act.slot.empty() && !schema_has(schema, frame.domain, act.slot))
          throw SchemaError(where + ": act slot '" + act.slot +
                            "' not in schema for domain '" + frame.domain + "'");
      }
      if (!frame.state.empty() && turn.speaker != "user")
        throw SchemaError(where + ": belief state on a system turn");
      for (const SlotValue& sv : frame.state) {
        auto [dom, attr] = split_slot(sv.slot);
        if (dom != frame.domain)
          throw SchemaError(where + ": state slot '" + sv.slot +
                            "' inside frame for domain '" + frame.domain + "'");
        if (!schema_has(schema, dom, attr))
          throw SchemaError(where + ": state slot '" + sv.slot +
                            "' not in corpus schema");
        if (sv.value.empty())
          throw SchemaError(where + ": empty value for state slot '" + sv.slot + "'");
      }
    }

    // Cumulative-state check is advisory only: source annotations are noisy.
    if (turn.speaker == "user") {
      for (const Frame& frame : turn.frames) {
        auto& prev = prev_user_state[frame.domain];
        std::set<SlotValue> cur(frame.state.begin(), frame.state.end());
        std::set<std::string> cur_slots;
        for (const auto& sv : cur) cur_slots.insert(sv.slot);
        for (const auto& sv : prev) {
          if (cur.count(sv) == 0 && cur_slots.count(sv.slot) == 0) {
            warn(warnings, "NonCumulativeState", where,
                 "slot '" + sv.slot + "' disappeared from the belief state");
          }
        }
        prev = std::move(cur);
      }
    }
  }
}

inline void validate_corpus(const Corpus& corpus, Warnings* warnings = nullptr) {
  for (const auto& [domain, attrs] : corpus.schema) {
    if (!is_known_domain(domain))
      throw SchemaError("schema declares unknown domain '" + domain + "'");
    if (attrs.empty())
      throw SchemaError("schema for domain '" + domain + "' has no attributes");
  }
  if (corpus.split != "train" && corpus.split != "dev" && corpus.split != "test")
    throw SchemaError("split must be train/dev/test, got '" + corpus.split + "'");
  std::set<std::string> ids;
  for (const NormalizedDialogue& d : corpus.dialogues) {
    if (!ids.insert(d.dialogue_id).second)
      throw SchemaError("duplicate dialogue_id " + d.dialogue_id);
    validate_dialogue(d, corpus.schema, warnings);
  }
}

// ---------------------------------------------------------------------------
// Canonical JSON serialization
// ---------------------------------------------------------------------------
// Canonical form: 2-space indent, keys in sorted order (nlohmann objects are
// ordered maps), "\n" line endings, trailing newline. load(write(c)) == c and
// repeated writes are byte-identical.

inline json dialogue_to_json(const NormalizedDialogue& d) {
  json turns = json::array();
  for (const Turn& t : d.turns) {
    json frames = json::array();
    for (const Frame& f : t.frames) {
      json acts = json::array();
      for (const DialogueAct& a : f.acts)
        acts.push_back(json::array({a.act_type, a.slot, a.value}));
      json state = json::array();
      for (const SlotValue& sv : f.state)
        state.push_back(json::array({sv.slot, sv.value}));
      frames.push_back({{"domain", f.domain}, {"acts", acts}, {"state", state}});
    }
    turns.push_back({{"index", t.index},
                     {"speaker", t.speaker},
                     {"utterance", t.utterance},
                     {"frames", frames}});
  }
  return {{"dialogue_id", d.dialogue_id},
          {"language", d.language},
          {"turns", turns}};
}

inline NormalizedDialogue dialogue_from_json(const json& j) {
  NormalizedDialogue d;
  d.dialogue_id = j.at("dialogue_id").get<std::string>();
  d.language = j.at("language").get<std::string>();
  for (const json& jt : j.at("turns")) {
    Turn t;
    t.index = jt.at("index").get<int>();
    t.speaker = jt.at("speaker").get<std::string>();
    t.utterance = jt.at("utterance").get<std::string>();
    for (const json& jf : jt.at("frames")) {
      Frame f;
      f.domain = jf.at("domain").get<std::string>();
      for (const json& ja : jf.at("acts")) {
        if (!ja.is_array() || ja.size() != 3)
          throw ParseError("act entries must be [act, slot, value] triples");
        f.acts.push_back({ja[0].get<std::string>(), ja[1].get<std::string>(),
                          ja[2].get<std::string>()});
      }
      for (const json& js : jf.at("state")) {
        if (!js.is_array() || js.size() != 2)
          throw ParseError("state entries must be [slot, value] pairs");
        f.state.push_back({js[0].get<std::string>(), js[1].get<std::string>()});
      }
      t.frames.push_back(std::move(f));
    }
    d.turns.push_back(std::move(t));
  }
  return d;
}

inline json corpus_to_json(const Corpus& corpus) {
  json dialogues = json::array();
  for (const NormalizedDialogue& d : corpus.dialogues)
    dialogues.push_back(dialogue_to_json(d));
  return {{"schema", corpus.schema},
          {"split", corpus.split},
          {"dialogues", dialogues}};
}

inline Corpus corpus_from_json(const json& j) {
  Corpus corpus;
  corpus.schema = j.at("schema").get<Schema>();
  corpus.split = j.at("split").get<std::string>();
  for (const json& jd : j.at("dialogues"))
    corpus.dialogues.push_back(dialogue_from_json(jd));
  return corpus;
}

inline std::string canonical_dump(const json& j) {
  return j.dump(2) + "\n";
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

inline void write_text_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << bytes;
  if (!out) throw IoError("failed writing " + path);
}

inline Corpus load_corpus(const std::string& path, Warnings* warnings = nullptr) {
  json j = read_json_file(path);
  Corpus corpus;
  try {
    corpus = corpus_from_json(j);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  validate_corpus(corpus, warnings);
  return corpus;
}

inline void write_corpus(const Corpus& corpus, const std::string& path) {
  write_text_file(path, canonical_dump(corpus_to_json(corpus)));
}

}  // namespace todg
