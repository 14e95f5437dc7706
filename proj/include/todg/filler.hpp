#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "todg/corpus.hpp"
#include "todg/errors.hpp"
#include "todg/ontology.hpp"
#include "todg/rng.hpp"
#include "todg/templater.hpp"
#include "todg/xlate.hpp"

namespace todg {

// ---------------------------------------------------------------------------
// Use cases
// ---------------------------------------------------------------------------

enum class UseCase { FF, FE, EF, EE };

inline std::string use_case_name(UseCase c) {
  switch (c) {
    case UseCase::FF: return "FF";
    case UseCase::FE: return "FE";
    case UseCase::EF: return "EF";
    case UseCase::EE: return "EE";
  }
  return "?";
}

inline UseCase use_case_from_string(const std::string& s) {
  if (s == "FF" || s == "ff") return UseCase::FF;
  if (s == "FE" || s == "fe") return UseCase::FE;
  if (s == "EF" || s == "ef") return UseCase::EF;
  if (s == "EE" || s == "ee") return UseCase::EE;
  throw ConfigError("unknown use case '" + s + "' (expected FF/FE/EF/EE)");
}

// Which language the dialogue context is written in and which language the
// entities come from. F stands for any non-English target language.
struct UseCaseSpec {
  UseCase use_case = UseCase::EE;
  std::string context_language = "en";
  std::string entity_language = "en";

  void validate() const {
    const bool ctx_en = context_language == "en";
    const bool ent_en = entity_language == "en";
    switch (use_case) {
      case UseCase::FF:
        if (ctx_en || ent_en || context_language != entity_language)
          throw ConfigError("FF needs matching non-English context and entities");
        break;
      case UseCase::FE:
        if (ctx_en || !ent_en)
          throw ConfigError("FE needs non-English context and English entities");
        break;
      case UseCase::EF:
        if (!ctx_en || ent_en)
          throw ConfigError("EF needs English context and non-English entities");
        break;
      case UseCase::EE:
        if (!ctx_en || !ent_en)
          throw ConfigError("EE needs English context and entities");
        break;
    }
  }
};

// ---------------------------------------------------------------------------
// Provenance
// ---------------------------------------------------------------------------

struct EntityProvenance {
  std::string record_id;
  std::string language;
  bool machine_translated = false;

  bool operator==(const EntityProvenance&) const = default;
};

// dialogue_id -> entity_key -> provenance of the record that filled it
using Provenance = std::map<std::string, std::map<std::string, EntityProvenance>>;

inline json provenance_to_json(const Provenance& prov) {
  json j = json::object();
  for (const auto& [dialogue_id, keys] : prov) {
    json jk = json::object();
    for (const auto& [key, p] : keys) {
      jk[key] = {{"record_id", p.record_id},
                 {"language", p.language},
                 {"machine_translated", p.machine_translated}};
    }
    j[dialogue_id] = jk;
  }
  return j;
}

inline Provenance provenance_from_json(const json& j) {
  Provenance prov;
  for (const auto& [dialogue_id, keys] : j.items()) {
    for (const auto& [key, jp] : keys.items()) {
      prov[dialogue_id][key] = {jp.at("record_id").get<std::string>(),
                                jp.at("language").get<std::string>(),
                                jp.at("machine_translated").get<bool>()};
    }
  }
  return prov;
}

// ---------------------------------------------------------------------------
// fill_template
// ---------------------------------------------------------------------------

// Resampling bound when a drawn record lacks a needed attribute.
inline constexpr int kResampleLimit = 10;

struct FilledDialogue {
  NormalizedDialogue dialogue;
  std::map<std::string, EntityProvenance> entities;  // per entity_key
};

namespace detail {

struct KeyPlan {
  std::string entity_key;
  std::string domain;
  std::vector<size_t> entry_indices;  // into template table
  bool taxi_endpoints = false;        // draw from the place-name union
};

inline std::vector<KeyPlan> plan_keys(const DialogueTemplate& tpl) {
  std::vector<KeyPlan> plans;
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < tpl.table.size(); ++i) {
    const PlaceholderEntry& e = tpl.table[i];
    auto it = index.find(e.entity_key);
    if (it == index.end()) {
      KeyPlan plan;
      plan.entity_key = e.entity_key;
      plan.domain = e.placeholder.domain;
      plan.taxi_endpoints = true;
      index[e.entity_key] = plans.size();
      plans.push_back(std::move(plan));
      it = index.find(e.entity_key);
    }
    KeyPlan& plan = plans[it->second];
    plan.entry_indices.push_back(i);
    if (!is_taxi_endpoint(e.placeholder.domain, e.placeholder.attribute))
      plan.taxi_endpoints = false;
  }
  return plans;
}

}  // namespace detail

// Fills one template: one ontology record is drawn per entity key and every
// placeholder bound to that key takes its value from that single record, in
// utterances, act values and state values alike. Taxi endpoint keys draw
// from the union of restaurant/hotel/attraction names. With the identity
// ontology this reduces to fill_identity.
inline FilledDialogue fill_template(const DialogueTemplate& tpl,
                                    const Ontology& ontology, Rng& rng) {
  validate_template(tpl);
  FilledDialogue out;

  if (ontology.is_identity()) {
    out.dialogue = fill_identity(tpl);
    for (const PlaceholderEntry& e : tpl.table) {
      out.entities[e.entity_key] = {tpl.base.dialogue_id + ":" + e.entity_key,
                                    ontology.language, false};
    }
    return out;
  }

  std::map<std::string, std::string> substitution;  // token -> value
  for (const detail::KeyPlan& plan : detail::plan_keys(tpl)) {
    std::optional<EntityRecord> chosen;
    std::string chosen_id;

    if (plan.taxi_endpoints) {
      const EntityRecord& r = sample_place_name(ontology, rng);
      auto it = r.attributes.find("name");
      if (it == r.attributes.end())
        throw MissingAttribute("record " + r.domain + "/" + r.record_id +
                               " has no name for taxi endpoint");
      chosen = r;
      chosen_id = r.domain + "/" + r.record_id;
      for (size_t i : plan.entry_indices)
        substitution[tpl.table[i].token()] = it->second;
    } else {
      for (int attempt = 0; attempt <= kResampleLimit; ++attempt) {
        const EntityRecord& r = sample_entity(ontology, plan.domain, rng);
        bool complete = true;
        for (size_t i : plan.entry_indices) {
          if (r.attributes.find(tpl.table[i].placeholder.attribute) ==
              r.attributes.end()) {
            complete = false;
            break;
          }
        }
        if (complete) {
          chosen = r;
          chosen_id = plan.domain + "/" + r.record_id;
          break;
        }
      }
      if (!chosen) {
        std::string attrs;
        for (size_t i : plan.entry_indices)
          attrs += (attrs.empty() ? "" : ",") + tpl.table[i].placeholder.attribute;
        throw MissingAttribute("dialogue " + tpl.base.dialogue_id + " key " +
                               plan.entity_key + ": no " + plan.domain +
                               " record with attributes {" + attrs + "} after " +
                               std::to_string(kResampleLimit + 1) + " draws");
      }
      for (size_t i : plan.entry_indices) {
        substitution[tpl.table[i].token()] =
            chosen->attributes.at(tpl.table[i].placeholder.attribute);
      }
    }
    out.entities[plan.entity_key] = {chosen_id, ontology.language, false};
  }

  out.dialogue = tpl.base;
  for (Turn& turn : out.dialogue.turns) {
    for (const auto& [token, value] : substitution)
      turn.utterance = replace_all(turn.utterance, token, value);
    for (Frame& frame : turn.frames) {
      for (DialogueAct& act : frame.acts) {
        auto it = substitution.find(act.value);
        if (it != substitution.end()) act.value = it->second;
      }
      for (SlotValue& sv : frame.state) {
        auto it = substitution.find(sv.value);
        if (it != substitution.end()) sv.value = it->second;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dataset generation
// ---------------------------------------------------------------------------

struct GeneratedCorpus {
  Corpus corpus;
  Provenance provenance;
  // templates that could not be filled: (dialogue_id, reason)
  std::vector<std::pair<std::string, std::string>> quarantined;
};

namespace detail {

inline void append_fill(GeneratedCorpus& out, const DialogueTemplate& tpl,
                        const Ontology& ontology, uint64_t master_seed,
                        int copies, bool machine_translated = false) {
  for (int copy = 0; copy < copies; ++copy) {
    Rng rng = stream_rng(master_seed, tpl.base.dialogue_id,
                         static_cast<uint64_t>(copy));
    try {
      FilledDialogue filled = fill_template(tpl, ontology, rng);
      filled.dialogue.dialogue_id += "#" + std::to_string(copy);
      for (auto& [key, p] : filled.entities) p.machine_translated |= machine_translated;
      out.provenance[filled.dialogue.dialogue_id] = std::move(filled.entities);
      out.corpus.dialogues.push_back(std::move(filled.dialogue));
    } catch (const Error& e) {
      out.quarantined.emplace_back(
          tpl.base.dialogue_id + "#" + std::to_string(copy), e.what());
    }
  }
}

}  // namespace detail

// Builds the dataset for one use case. FF/FE fill the translated templates,
// EF/EE the English ones; the entity ontology is chosen by entity language.
// Every template is filled `copies` times with independent per-(dialogue,
// copy) draws; ids get "#0".."#copies-1" suffixes.
inline GeneratedCorpus generate_use_case(
    const TemplateSet& templates_en, const TemplateSet* templates_xx,
    const UseCaseSpec& spec, const std::map<std::string, Ontology>& ontologies,
    uint64_t seed, int copies) {
  spec.validate();
  if (copies < 1) throw ConfigError("copies must be >= 1");

  const bool foreign_context = spec.use_case == UseCase::FF || spec.use_case == UseCase::FE;
  const TemplateSet* source = foreign_context ? templates_xx : &templates_en;
  if (source == nullptr)
    throw MissingComponent("use case " + use_case_name(spec.use_case) +
                           " needs translated templates");
  auto ont_it = ontologies.find(spec.entity_language);
  if (ont_it == ontologies.end())
    throw MissingComponent("no ontology for entity language '" +
                           spec.entity_language + "'");

  GeneratedCorpus out;
  out.corpus.schema = source->schema;
  out.corpus.split = source->split;
  for (const DialogueTemplate& tpl : source->templates) {
    if (foreign_context && tpl.base.language != spec.context_language)
      throw ConfigError("template " + tpl.base.dialogue_id + " has language '" +
                        tpl.base.language + "', expected '" +
                        spec.context_language + "'");
    detail::append_fill(out, tpl, ont_it->second, seed, copies);
  }
  return out;
}

// Translate-Train: contexts are the translated templates, but instead of
// local entities every original entity VALUE goes through the translator.
// Produces pseudo-labeled data with no access to any real local entity.
inline GeneratedCorpus generate_translate_train(const TemplateSet& templates_xx,
                                                const Translator& translator) {
  GeneratedCorpus out;
  out.corpus.schema = templates_xx.schema;
  out.corpus.split = templates_xx.split;
  const std::string& lang = translator.spec().target_language;

  for (const DialogueTemplate& tpl : templates_xx.templates) {
    validate_template(tpl);
    std::map<std::string, std::string> substitution;
    for (const PlaceholderEntry& e : tpl.table)
      substitution[e.token()] = translator.translate_line(e.original_value);

    NormalizedDialogue d = tpl.base;
    for (Turn& turn : d.turns) {
      for (const auto& [token, value] : substitution)
        turn.utterance = replace_all(turn.utterance, token, value);
      for (Frame& frame : turn.frames) {
        for (DialogueAct& act : frame.acts) {
          auto it = substitution.find(act.value);
          if (it != substitution.end()) act.value = it->second;
        }
        for (SlotValue& sv : frame.state) {
          auto it = substitution.find(sv.value);
          if (it != substitution.end()) sv.value = it->second;
        }
      }
    }
    d.dialogue_id += "#0";
    std::map<std::string, EntityProvenance> entities;
    for (const PlaceholderEntry& e : tpl.table)
      entities[e.entity_key] = {tpl.base.dialogue_id + ":" + e.entity_key, lang, true};
    out.provenance[d.dialogue_id] = std::move(entities);
    out.corpus.dialogues.push_back(std::move(d));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Training mixtures
// ---------------------------------------------------------------------------

enum class MixtureMethod {
  ZeroShotEE,
  TranslateTrain,
  SUC,
  BBUC,
  MBUC,
  MMUC,
  ContextOnly,
  EntitiesOnly,
};

inline std::string mixture_method_name(MixtureMethod m) {
  switch (m) {
    case MixtureMethod::ZeroShotEE: return "zero-shot-ee";
    case MixtureMethod::TranslateTrain: return "translate-train";
    case MixtureMethod::SUC: return "suc";
    case MixtureMethod::BBUC: return "bbuc";
    case MixtureMethod::MBUC: return "mbuc";
    case MixtureMethod::MMUC: return "mmuc";
    case MixtureMethod::ContextOnly: return "context-only";
    case MixtureMethod::EntitiesOnly: return "entities-only";
  }
  return "?";
}

inline MixtureMethod mixture_method_from_string(const std::string& s) {
  for (MixtureMethod m :
       {MixtureMethod::ZeroShotEE, MixtureMethod::TranslateTrain, MixtureMethod::SUC,
        MixtureMethod::BBUC, MixtureMethod::MBUC, MixtureMethod::MMUC,
        MixtureMethod::ContextOnly, MixtureMethod::EntitiesOnly}) {
    if (mixture_method_name(m) == s) return m;
  }
  throw ConfigError("unknown mixture method '" + s + "'");
}

struct MixtureComponent {
  std::string dataset;  // key into the datasets map, e.g. "zh-ff"
  std::string language;
  std::string use_case;  // "FF"/"FE"/"EF"/"EE"/"TT"/...

  bool operator==(const MixtureComponent&) const = default;
};

struct MixtureRecipe {
  MixtureMethod method;
  std::vector<MixtureComponent> components;
};

// Component lists follow the data-accessibility matrix of the method
// definitions: SUC uses one use case in one language; BBUC adds gold E&E;
// MBUC joins all languages for one use case plus E&E; MMUC joins everything.
inline MixtureRecipe make_recipe(MixtureMethod method,
                                 const std::vector<std::string>& languages,
                                 std::optional<UseCase> use_case = std::nullopt,
                                 const std::string& language = "") {
  auto case_component = [](const std::string& lang, UseCase c) {
    return MixtureComponent{lang + "-" + to_lower_ascii(use_case_name(c)), lang,
                            use_case_name(c)};
  };
  const MixtureComponent gold{"en-ee", "en", "EE"};
  MixtureRecipe recipe{method, {}};
  switch (method) {
    case MixtureMethod::ZeroShotEE:
      recipe.components = {gold};
      break;
    case MixtureMethod::TranslateTrain:
      if (language.empty()) throw ConfigError("translate-train needs a language");
      recipe.components = {{language + "-tt", language, "TT"}};
      break;
    case MixtureMethod::SUC:
      if (!use_case || language.empty())
        throw ConfigError("suc needs a use case and a language");
      recipe.components = {case_component(language, *use_case)};
      break;
    case MixtureMethod::BBUC:
      if (!use_case || language.empty())
        throw ConfigError("bbuc needs a use case and a language");
      recipe.components = {gold, case_component(language, *use_case)};
      break;
    case MixtureMethod::MBUC:
      if (!use_case) throw ConfigError("mbuc needs a use case");
      recipe.components = {gold};
      for (const std::string& lang : languages)
        recipe.components.push_back(case_component(lang, *use_case));
      break;
    case MixtureMethod::MMUC:
      recipe.components = {gold};
      for (UseCase c : {UseCase::FF, UseCase::FE, UseCase::EF})
        for (const std::string& lang : languages)
          recipe.components.push_back(case_component(lang, c));
      break;
    case MixtureMethod::ContextOnly:
    case MixtureMethod::EntitiesOnly:
      if (language.empty()) throw ConfigError("ablations need a language");
      recipe.components = {{language + "-" + mixture_method_name(method), language,
                            mixture_method_name(method)}};
      break;
  }
  return recipe;
}

struct Mixture {
  Corpus corpus;
  // manifest rows: (dataset, language, use_case, dialogue count)
  std::vector<std::tuple<std::string, std::string, std::string, size_t>> manifest;
};

// Concatenates the recipe's datasets with "<dataset>:<id>" namespacing.
inline Mixture assemble_mixture(const MixtureRecipe& recipe,
                                const std::map<std::string, Corpus>& datasets) {
  Mixture mix;
  mix.corpus.split = "train";
  for (const MixtureComponent& comp : recipe.components) {
    auto it = datasets.find(comp.dataset);
    if (it == datasets.end())
      throw MissingComponent("mixture component '" + comp.dataset +
                             "' not among supplied datasets");
    const Corpus& src = it->second;
    for (const auto& [domain, attrs] : src.schema) {
      std::vector<std::string>& merged = mix.corpus.schema[domain];
      for (const std::string& a : attrs)
        if (std::find(merged.begin(), merged.end(), a) == merged.end())
          merged.push_back(a);
    }
    for (NormalizedDialogue d : src.dialogues) {
      d.dialogue_id = comp.dataset + ":" + d.dialogue_id;
      mix.corpus.dialogues.push_back(std::move(d));
    }
    mix.manifest.emplace_back(comp.dataset, comp.language, comp.use_case,
                              src.dialogues.size());
  }
  for (auto& [domain, attrs] : mix.corpus.schema) std::sort(attrs.begin(), attrs.end());
  return mix;
}

inline std::string mixture_manifest_tsv(const Mixture& mix) {
  std::string tsv = "dataset\tlanguage\tuse_case\tdialogues\n";
  for (const auto& [dataset, language, use_case, count] : mix.manifest) {
    tsv += dataset + "\t" + language + "\t" + use_case + "\t" +
           std::to_string(count) + "\n";
  }
  return tsv;
}

// ---------------------------------------------------------------------------
// Local-context / local-entities ablations
// ---------------------------------------------------------------------------

enum class AblationKind { context_only, entities_only };

// context_only: target-language contexts, entities drawn from the other
// languages round-robin. entities_only: contexts cycle through the other
// languages, entities from the target ontology.
inline GeneratedCorpus make_ablation(
    AblationKind kind, const std::string& target_language,
    const std::map<std::string, TemplateSet>& templates,
    const std::map<std::string, Ontology>& ontologies, uint64_t seed) {
  std::vector<std::string> other_langs;
  if (kind == AblationKind::context_only) {
    for (const auto& [lang, ont] : ontologies)
      if (lang != target_language) other_langs.push_back(lang);
    if (other_langs.empty())
      throw MissingComponent("context_only needs at least one non-target ontology");
  } else {
    for (const auto& [lang, tpls] : templates)
      if (lang != target_language) other_langs.push_back(lang);
    if (other_langs.empty())
      throw MissingComponent("entities_only needs at least one non-target "
                             "template set");
  }

  GeneratedCorpus out;
  if (kind == AblationKind::context_only) {
    auto tpl_it = templates.find(target_language);
    if (tpl_it == templates.end())
      throw MissingComponent("no templates for target language '" +
                             target_language + "'");
    out.corpus.schema = tpl_it->second.schema;
    out.corpus.split = tpl_it->second.split;
    size_t i = 0;
    for (const DialogueTemplate& tpl : tpl_it->second.templates) {
      const Ontology& ont = ontologies.at(other_langs[i++ % other_langs.size()]);
      detail::append_fill(out, tpl, ont, seed, 1);
    }
  } else {
    auto ont_it = ontologies.find(target_language);
    if (ont_it == ontologies.end())
      throw MissingComponent("no ontology for target language '" +
                             target_language + "'");
    bool first = true;
    for (const std::string& lang : other_langs) {
      const TemplateSet& set = templates.at(lang);
      if (first) {
        out.corpus.schema = set.schema;
        out.corpus.split = set.split;
        first = false;
      }
      // Same source dialogues appear once per context language; prefix ids
      // so the concatenation stays unique.
      GeneratedCorpus part;
      part.corpus.schema = set.schema;
      part.corpus.split = set.split;
      for (const DialogueTemplate& tpl : set.templates)
        detail::append_fill(part, tpl, ont_it->second, seed, 1);
      for (NormalizedDialogue& d : part.corpus.dialogues) {
        std::string old_id = d.dialogue_id;
        d.dialogue_id = lang + ":" + old_id;
        out.provenance[d.dialogue_id] = std::move(part.provenance[old_id]);
        out.corpus.dialogues.push_back(std::move(d));
      }
      for (auto& q : part.quarantined)
        out.quarantined.emplace_back(lang + ":" + q.first, q.second);
    }
  }
  return out;
}

}  // namespace todg
