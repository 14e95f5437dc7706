#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "todg/corpus.hpp"
#include "todg/errors.hpp"

namespace todg {

// One-way, best-effort importer for MultiWoZ-2.2-style data. The dialogue
// file is a JSON array of dialogues with "dialogue_id" and "turns"
// ("turn_id", "speaker" USER/SYSTEM, "utterance", "frames" with "service"
// and "state.slot_values"). Dialogue acts live in a separate file keyed by
// dialogue id and turn id. Anything that does not map onto the normalized
// schema (unknown services, span offsets, request acts, multi-valued slots
// beyond the first) is dropped with a warning.

namespace detail {

inline std::string act_domain(const std::string& act_name) {
  auto dash = act_name.find('-');
  return to_lower_ascii(dash == std::string::npos ? act_name
                                                  : act_name.substr(0, dash));
}

inline std::string act_kind(const std::string& act_name) {
  auto dash = act_name.find('-');
  return to_lower_ascii(dash == std::string::npos ? act_name
                                                  : act_name.substr(dash + 1));
}

}  // namespace detail

inline Corpus import_multiwoz(const json& dialogues_json, const json* acts_json,
                              const std::string& split,
                              Warnings* warnings = nullptr) {
  Corpus corpus;
  corpus.split = split;
  std::map<std::string, std::set<std::string>> attrs_seen;

  for (const json& jd : dialogues_json) {
    NormalizedDialogue d;
    d.dialogue_id = jd.at("dialogue_id").get<std::string>();
    d.language = "en";

    const json* dialogue_acts = nullptr;
    if (acts_json != nullptr && acts_json->contains(d.dialogue_id))
      dialogue_acts = &acts_json->at(d.dialogue_id);

    for (const json& jt : jd.at("turns")) {
      Turn turn;
      turn.index = static_cast<int>(d.turns.size());
      std::string speaker = jt.at("speaker").get<std::string>();
      turn.speaker = to_lower_ascii(speaker);
      turn.utterance = jt.at("utterance").get<std::string>();

      std::map<std::string, Frame> frames;  // per domain

      if (jt.contains("frames")) {
        for (const json& jf : jt.at("frames")) {
          std::string service = to_lower_ascii(jf.at("service").get<std::string>());
          if (!is_known_domain(service)) {
            warn(warnings, "DroppedService", d.dialogue_id,
                 "service '" + service + "' is not a normalized domain");
            continue;
          }
          Frame& frame = frames[service];
          frame.domain = service;
          if (turn.speaker == "user" && jf.contains("state") &&
              jf.at("state").contains("slot_values")) {
            for (const auto& [slot, values] :
                 jf.at("state").at("slot_values").items()) {
              if (!values.is_array() || values.empty()) continue;
              if (values.size() > 1) {
                warn(warnings, "MultiValueSlot",
                     d.dialogue_id + " turn " + std::to_string(turn.index),
                     "slot '" + slot + "' keeps only its first value");
              }
              std::string slot_name = to_lower_ascii(slot);
              auto [dom, attr] = split_slot(slot_name);
              if (dom != service) {
                warn(warnings, "DroppedSlot", d.dialogue_id,
                     "state slot '" + slot + "' outside its frame domain");
                continue;
              }
              std::string value = values[0].get<std::string>();
              if (value.empty()) continue;
              frame.state.push_back({slot_name, value});
              attrs_seen[dom].insert(attr);
            }
          }
        }
      }

      // Acts arrive in the side file as {"Hotel-Inform": [["area","centre"]]}.
      if (dialogue_acts != nullptr) {
        std::string turn_key = jt.contains("turn_id")
                                   ? jt.at("turn_id").get<std::string>()
                                   : std::to_string(turn.index);
        if (dialogue_acts->contains(turn_key)) {
          const json& jacts = dialogue_acts->at(turn_key).contains("dialog_act")
                                  ? dialogue_acts->at(turn_key).at("dialog_act")
                                  : dialogue_acts->at(turn_key);
          for (const auto& [act_name, slot_pairs] : jacts.items()) {
            std::string domain = detail::act_domain(act_name);
            std::string kind = detail::act_kind(act_name);
            if (!is_known_domain(domain)) {
              warn(warnings, "DroppedAct", d.dialogue_id,
                   "act '" + act_name + "' has no normalized domain");
              continue;
            }
            Frame& frame = frames[domain];
            frame.domain = domain;
            for (const json& pair : slot_pairs) {
              if (!pair.is_array() || pair.size() != 2) continue;
              std::string slot = to_lower_ascii(pair[0].get<std::string>());
              std::string value = pair[1].get<std::string>();
              if (slot == "none" || value == "none") {
                frame.acts.push_back({kind, "", ""});
                continue;
              }
              if (value == "?") {
                warn(warnings, "DroppedAct", d.dialogue_id,
                     "request act for '" + slot + "' carries no value");
                continue;
              }
              frame.acts.push_back({kind, slot, value});
              attrs_seen[domain].insert(slot);
            }
          }
        }
      }

      for (auto& [domain, frame] : frames) turn.frames.push_back(std::move(frame));
      d.turns.push_back(std::move(turn));
    }
    corpus.dialogues.push_back(std::move(d));
  }

  for (const auto& [domain, attrs] : attrs_seen)
    corpus.schema[domain] = std::vector<std::string>(attrs.begin(), attrs.end());
  // Domains that never carried a slot still need a schema entry.
  for (const NormalizedDialogue& d : corpus.dialogues) {
    for (const Turn& t : d.turns) {
      for (const Frame& f : t.frames) {
        if (corpus.schema.find(f.domain) == corpus.schema.end())
          corpus.schema[f.domain] = {"name"};
      }
    }
  }

  validate_corpus(corpus, warnings);
  return corpus;
}

inline Corpus import_multiwoz_files(const std::string& data_path,
                                    const std::string& acts_path,
                                    const std::string& split,
                                    Warnings* warnings = nullptr) {
  json data = read_json_file(data_path);
  if (acts_path.empty()) return import_multiwoz(data, nullptr, split, warnings);
  json acts = read_json_file(acts_path);
  return import_multiwoz(data, &acts, split, warnings);
}

}  // namespace todg
