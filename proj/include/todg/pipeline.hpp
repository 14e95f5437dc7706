#pragma once

#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "todg/corpus.hpp"
#include "todg/errors.hpp"
#include "todg/filler.hpp"
#include "todg/metrics.hpp"
#include "todg/ontology.hpp"
#include "todg/selector.hpp"
#include "todg/templater.hpp"
#include "todg/xlate.hpp"

namespace todg {

// ---------------------------------------------------------------------------
// Run configuration
// ---------------------------------------------------------------------------

struct RunConfig {
  std::string corpus_path;
  std::vector<std::string> table_corpora;       // defaults to {corpus_path}
  std::map<std::string, std::string> ontologies;  // language -> path
  std::string templates_path;                   // optional: reuse extraction
  std::string output_dir;
  std::vector<std::string> target_languages;
  uint64_t master_seed = 0;
  bool seed_set = false;
  TranslatorSpec translator;
  size_t test_k = 500;
  size_t fewshot_k = 100;
  int copies_test = 2;
  int copies_train = 1;
  int workers = 1;

  json to_json() const {
    json jont = json::object();
    for (const auto& [lang, path] : ontologies) jont[lang] = path;
    return {
        {"corpus", corpus_path},
        {"table_corpora", table_corpora},
        {"ontologies", jont},
        {"templates", templates_path},
        {"output_dir", output_dir},
        {"target_languages", target_languages},
        {"master_seed", master_seed},
        {"translator",
         {{"kind", translator.kind == TranslatorKind::mock      ? "mock"
                   : translator.kind == TranslatorKind::file    ? "file"
                                                                : "command"},
          {"dictionary", translator.dictionary_path},
          {"mapping", translator.mapping_path},
          {"command", translator.command}}},
        {"selection", {{"test_k", test_k}, {"fewshot_k", fewshot_k}}},
        {"copies", {{"test", copies_test}, {"train", copies_train}}},
        {"workers", workers},
    };
  }
};

inline RunConfig run_config_from_json(const json& j) {
  RunConfig config;
  config.corpus_path = j.at("corpus").get<std::string>();
  if (j.contains("table_corpora"))
    config.table_corpora = j.at("table_corpora").get<std::vector<std::string>>();
  if (config.table_corpora.empty()) config.table_corpora = {config.corpus_path};
  for (const auto& [lang, path] : j.at("ontologies").items())
    config.ontologies[lang] = path.get<std::string>();
  if (j.contains("templates"))
    config.templates_path = j.at("templates").get<std::string>();
  config.output_dir = j.at("output_dir").get<std::string>();
  config.target_languages =
      j.at("target_languages").get<std::vector<std::string>>();
  if (config.target_languages.empty())
    throw ConfigError("target_languages must not be empty");
  if (!j.contains("master_seed"))
    throw ConfigError("master_seed is required; implicit time-based seeding is "
                      "not supported");
  config.master_seed = j.at("master_seed").get<uint64_t>();
  config.seed_set = true;
  if (j.contains("translator")) {
    const json& jt = j.at("translator");
    config.translator.kind =
        translator_kind_from_string(jt.value("kind", std::string("mock")));
    config.translator.dictionary_path = jt.value("dictionary", std::string());
    config.translator.mapping_path = jt.value("mapping", std::string());
    config.translator.command = jt.value("command", std::string());
  }
  if (j.contains("selection")) {
    config.test_k = j.at("selection").value("test_k", config.test_k);
    config.fewshot_k = j.at("selection").value("fewshot_k", config.fewshot_k);
  }
  if (j.contains("copies")) {
    config.copies_test = j.at("copies").value("test", config.copies_test);
    config.copies_train = j.at("copies").value("train", config.copies_train);
  }
  if (j.contains("workers")) config.workers = j.at("workers").get<int>();
  return config;
}

inline RunConfig load_run_config(const std::string& path) {
  return run_config_from_json(read_json_file(path));
}

// ---------------------------------------------------------------------------
// Run report
// ---------------------------------------------------------------------------

struct RunReport {
  std::string config_hash;
  std::vector<std::pair<std::string, size_t>> datasets;  // name -> dialogue count
  std::vector<std::pair<std::string, std::string>> quarantined;  // id, reason
  size_t warning_count = 0;

  json to_json() const {
    json jd = json::object();
    for (const auto& [name, count] : datasets) jd[name] = count;
    json jq = json::array();
    for (const auto& [id, reason] : quarantined)
      jq.push_back({{"id", id}, {"reason", reason}});
    return {{"config_hash", config_hash},
            {"datasets", jd},
            {"quarantined", jq},
            {"warnings", warning_count}};
  }
};

// ---------------------------------------------------------------------------
// run_pipeline
// ---------------------------------------------------------------------------

namespace detail {

class StageTimer {
 public:
  explicit StageTimer(std::string name)
      : name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}
  ~StageTimer() {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start_)
                  .count();
    // timing is log-only so output trees stay byte-identical across runs
    std::cerr << "[todg] " << name_ << " took " << ms << " ms\n";
  }

 private:
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

inline std::string selection_tsv(const std::vector<ScoredDialogue>& rows) {
  std::string tsv = "dialogue_id\tngram_sum\tword_length\tscore\n";
  for (const ScoredDialogue& s : rows) {
    tsv += s.dialogue_id + "\t" + std::to_string(s.ngram_sum) + "\t" +
           std::to_string(s.word_length) + "\t" + format_fixed(s.score(), 6) + "\n";
  }
  return tsv;
}

}  // namespace detail

// Executes extract -> select -> translate -> fill for every target language
// and use case, writing datasets, provenance sidecars, a manifest and a
// deterministic run report under config.output_dir. Rerunning with the same
// config overwrites every file with identical bytes.
inline RunReport run_pipeline(const RunConfig& config) {
  namespace fs = std::filesystem;

  // Validation first: fail before any write.
  if (!config.seed_set) throw ConfigError("master_seed is required");
  if (config.target_languages.empty())
    throw ConfigError("target_languages must not be empty");
  if (!fs::exists(config.corpus_path))
    throw MissingComponent("stage validate: corpus not found: " + config.corpus_path);
  for (const std::string& path : config.table_corpora)
    if (!fs::exists(path))
      throw MissingComponent("stage validate: table corpus not found: " + path);
  auto require_ontology = [&](const std::string& lang) {
    auto it = config.ontologies.find(lang);
    if (it == config.ontologies.end())
      throw MissingComponent("stage validate: no ontology declared for language '" +
                             lang + "'");
    if (!fs::exists(it->second))
      throw MissingComponent("stage validate: ontology for '" + lang +
                             "' not found: " + it->second);
  };
  require_ontology("en");
  for (const std::string& lang : config.target_languages) {
    if (lang == "en")
      throw ConfigError("target languages must be non-English");
    require_ontology(lang);
  }

  RunReport report;
  report.config_hash = line_hash_hex(canonical_dump(config.to_json()));
  Warnings warnings;

  fs::create_directories(config.output_dir);
  fs::create_directories(fs::path(config.output_dir) / "templates");
  fs::create_directories(fs::path(config.output_dir) / "select");
  fs::create_directories(fs::path(config.output_dir) / "data");
  auto out_path = [&](const std::string& rel) {
    return (fs::path(config.output_dir) / rel).string();
  };

  // Load inputs.
  Corpus corpus = [&] {
    detail::StageTimer timer("load corpus");
    return load_corpus(config.corpus_path, &warnings);
  }();
  std::map<std::string, Ontology> ontologies;
  {
    detail::StageTimer timer("load ontologies");
    for (const auto& [lang, path] : config.ontologies)
      ontologies.emplace(lang, load_ontology(path, corpus.schema, &warnings));
  }

  // Stage 1: templates.
  TemplateSet all_templates;
  {
    detail::StageTimer timer("extract templates");
    if (!config.templates_path.empty()) {
      all_templates = load_template_set(config.templates_path);
    } else {
      const Ontology& source = ontologies.at("en");
      all_templates = extract_templates(corpus, &source, &warnings);
    }
  }

  // Stage 2: selection. Test runs generate from the top test_k subset; train
  // and dev runs generate from every template, with the train run also
  // emitting the few-shot post-editing candidate list.
  const bool is_test_split = corpus.split == "test";
  std::vector<ScoredDialogue> selection;
  {
    detail::StageTimer timer("score and select");
    NgramFrequencyTable table;
    table.n = 4;
    for (const std::string& path : config.table_corpora) {
      Corpus table_corpus =
          path == config.corpus_path ? corpus : load_corpus(path, &warnings);
      for (const NormalizedDialogue& d : table_corpus.dialogues)
        for (const Turn& t : d.turns) add_ngrams(table, tokenize(t.utterance));
    }
    const size_t k = is_test_split ? config.test_k : config.fewshot_k;
    selection = select_top_k(corpus, k, table);
    write_text_file(out_path(is_test_split ? "select/test_top.tsv"
                                           : "select/fewshot_top.tsv"),
                    detail::selection_tsv(selection));
  }

  TemplateSet selected;
  selected.schema = all_templates.schema;
  selected.split = all_templates.split;
  if (is_test_split) {
    std::set<std::string> chosen;
    for (const ScoredDialogue& s : selection) chosen.insert(s.dialogue_id);
    for (const DialogueTemplate& tpl : all_templates.templates)
      if (chosen.count(tpl.base.dialogue_id)) selected.templates.push_back(tpl);
  } else {
    selected.templates = all_templates.templates;
  }
  write_template_set(all_templates, out_path("templates/en.json"));
  // copies bootstrap evaluation data only; training data stays 1:1
  const int copies =
      corpus.split == "train" ? config.copies_train : config.copies_test;

  // Stage 3: translation per target language.
  std::map<std::string, TemplateSet> translated;
  {
    detail::StageTimer timer("translate templates");
    for (const std::string& lang : config.target_languages) {
      TranslatorSpec spec = config.translator;
      spec.target_language = lang;
      Translator translator(spec);
      TranslationOutcome outcome =
          translate_templates(selected.templates, translator, config.workers);
      TemplateSet set;
      set.schema = selected.schema;
      set.split = selected.split;
      set.templates = std::move(outcome.translated);
      write_template_set(set, out_path("templates/" + lang + ".json"));
      if (!outcome.quarantined.empty()) {
        fs::create_directories(fs::path(config.output_dir) / "quarantine");
        TemplateSet bad;
        bad.schema = selected.schema;
        bad.split = selected.split;
        for (auto& [tpl, reason] : outcome.quarantined) {
          report.quarantined.emplace_back(lang + ":" + tpl.base.dialogue_id, reason);
          bad.templates.push_back(std::move(tpl));
        }
        write_template_set(bad, out_path("quarantine/" + lang + ".json"));
      }
      translated.emplace(lang, std::move(set));
    }
  }

  // Stage 4: fills.
  auto emit = [&](const std::string& name, const GeneratedCorpus& generated) {
    write_corpus(generated.corpus, out_path("data/" + name + ".json"));
    write_text_file(out_path("data/" + name + ".provenance.json"),
                    canonical_dump(provenance_to_json(generated.provenance)));
    report.datasets.emplace_back(name, generated.corpus.dialogues.size());
    for (const auto& q : generated.quarantined) report.quarantined.push_back(q);
  };

  {
    detail::StageTimer timer("fill templates");
    for (const std::string& lang : config.target_languages) {
      const TemplateSet& tpl_xx = translated.at(lang);
      UseCaseSpec ff{UseCase::FF, lang, lang};
      UseCaseSpec fe{UseCase::FE, lang, "en"};
      UseCaseSpec ef{UseCase::EF, "en", lang};
      emit(lang + "_ff", generate_use_case(selected, &tpl_xx, ff, ontologies,
                                           config.master_seed, copies));
      emit(lang + "_fe", generate_use_case(selected, &tpl_xx, fe, ontologies,
                                           config.master_seed, copies));
      emit(lang + "_ef", generate_use_case(selected, nullptr, ef, ontologies,
                                           config.master_seed, copies));
    }
    // E&E pass-through: identity fill reproduces the selected originals.
    std::map<std::string, Ontology> identity{{"en", identity_ontology("en")}};
    UseCaseSpec ee{UseCase::EE, "en", "en"};
    emit("en_ee",
         generate_use_case(selected, nullptr, ee, identity, config.master_seed, 1));
  }

  // Manifest + report.
  {
    std::string manifest = "dataset\tlanguage\tuse_case\tdialogues\n";
    for (const auto& [name, count] : report.datasets) {
      std::string lang = name.substr(0, name.find('_'));
      std::string use_case = to_lower_ascii(name.substr(name.find('_') + 1));
      manifest += name + "\t" + lang + "\t" + use_case + "\t" +
                  std::to_string(count) + "\n";
    }
    write_text_file(out_path("manifest.tsv"), manifest);
  }
  report.warning_count = warnings.size();
  write_text_file(out_path("report.json"), canonical_dump(report.to_json()));
  return report;
}

}  // namespace todg
