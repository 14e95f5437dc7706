// todg: globalize an annotated task-oriented-dialogue corpus into
// multilingual datasets with local entities, plus the evaluation utilities
// used to validate the generated data.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "todg/corpus.hpp"
#include "todg/errors.hpp"
#include "todg/filler.hpp"
#include "todg/fixtures.hpp"
#include "todg/metrics.hpp"
#include "todg/multiwoz.hpp"
#include "todg/ontology.hpp"
#include "todg/pipeline.hpp"
#include "todg/selector.hpp"
#include "todg/templater.hpp"
#include "todg/xlate.hpp"

namespace {

void print_warnings(const todg::Warnings& warnings) {
  for (const todg::Warning& w : warnings)
    std::cerr << "warning: " << w.kind << " (" << w.context << "): " << w.message
              << "\n";
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    todg::write_text_file(out_path, text);
  }
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw todg::IoError("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

struct TranslatorFlags {
  std::string kind = "mock";
  std::string target_lang = "xx";
  std::string dictionary;
  std::string mapping;
  std::string command;

  todg::TranslatorSpec to_spec() const {
    todg::TranslatorSpec spec;
    spec.kind = todg::translator_kind_from_string(kind);
    spec.target_language = target_lang;
    spec.dictionary_path = dictionary;
    spec.mapping_path = mapping;
    spec.command = command;
    return spec;
  }
};

void add_translator_flags(CLI::App* app, TranslatorFlags& flags) {
  app->add_option("--translator", flags.kind, "mock, file or command")
      ->envname("TODG_TRANSLATOR");
  app->add_option("--target-lang", flags.target_lang, "target language code");
  app->add_option("--dict", flags.dictionary, "mock translator word dictionary (TSV)");
  app->add_option("--map", flags.mapping,
                  "file translator line table (TSV line-hash\\ttranslation)");
  app->add_option("--cmd", flags.command,
                  "command translator: reads stdin lines, writes stdout lines");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multilingual dialogue dataset globalization toolkit"};
  app.require_subcommand(1);

  // ---- import-multiwoz ----
  struct {
    std::string data, acts, split = "train", out;
  } imp;
  auto* cmd_import = app.add_subcommand(
      "import-multiwoz", "convert MultiWoZ-2.2-style files to the normalized corpus");
  cmd_import->add_option("--data", imp.data, "dialogues JSON file")->required();
  cmd_import->add_option("--acts", imp.acts, "dialogue acts JSON file");
  cmd_import->add_option("--split", imp.split, "train/dev/test");
  cmd_import->add_option("-o,--out", imp.out, "output corpus path")->required();

  // ---- extract ----
  struct {
    std::string corpus, source_ontology, out;
  } ext;
  auto* cmd_extract =
      app.add_subcommand("extract", "replace annotated entities with placeholders");
  cmd_extract->add_option("--corpus", ext.corpus, "normalized corpus")->required();
  cmd_extract->add_option("--source-ontology", ext.source_ontology,
                          "source-language ontology used to group attributes "
                          "into entities");
  cmd_extract->add_option("-o,--out", ext.out, "output template set")->required();

  // ---- select ----
  struct {
    std::string corpus, out;
    std::vector<std::string> tables;
    size_t k = 500;
    int n = 4;
  } sel;
  auto* cmd_select = app.add_subcommand(
      "select", "rank dialogues by n-gram representativeness, emit the top k");
  cmd_select->add_option("--corpus", sel.corpus, "corpus to score")->required();
  cmd_select->add_option("--table", sel.tables,
                         "corpora the frequency table is built from "
                         "(default: the scored corpus)");
  cmd_select->add_option("-k,--k", sel.k, "how many dialogues to keep");
  cmd_select->add_option("-n", sel.n, "n-gram order");
  cmd_select->add_option("-o,--out", sel.out, "output TSV (default stdout)");

  // ---- translate ----
  struct {
    std::string templates, out, quarantine_dir;
    TranslatorFlags translator;
    int workers = 1;
  } tra;
  auto* cmd_translate = app.add_subcommand(
      "translate", "translate template utterances, placeholders preserved");
  cmd_translate->add_option("--templates", tra.templates, "template set")->required();
  add_translator_flags(cmd_translate, tra.translator);
  cmd_translate->add_option("--workers", tra.workers, "parallel translations")
      ->envname("TODG_WORKERS");
  cmd_translate->add_option("--quarantine-dir", tra.quarantine_dir,
                            "where to park templates that fail integrity");
  cmd_translate->add_option("-o,--out", tra.out, "output template set")->required();

  // ---- ontology stats ----
  struct {
    std::vector<std::string> ontologies;
    std::string corpus, out;
  } ost;
  auto* cmd_ontology = app.add_subcommand("ontology", "ontology utilities");
  auto* cmd_stats =
      cmd_ontology->add_subcommand("stats", "per-domain entity counts as TSV");
  cmd_stats->add_option("ontologies", ost.ontologies, "ontology files or CSV dirs")
      ->required();
  cmd_stats->add_option("--corpus", ost.corpus,
                        "corpus whose schema validates the ontologies");
  cmd_stats->add_option("-o,--out", ost.out, "output TSV (default stdout)");

  // ---- fill ----
  struct {
    std::string templates_en, templates_xx, use_case = "EE";
    std::string context_lang = "en", entity_lang = "en", out, provenance;
    std::vector<std::string> ontology_args;
    uint64_t seed = 0;
    int copies = 1;
    bool identity = false;
  } fil;
  auto* cmd_fill =
      app.add_subcommand("fill", "fill templates with entities for one use case");
  cmd_fill->add_option("--templates-en", fil.templates_en, "English template set")
      ->required();
  cmd_fill->add_option("--templates-xx", fil.templates_xx,
                       "translated template set (FF/FE)");
  cmd_fill->add_option("--case", fil.use_case, "FF, FE, EF or EE")->required();
  cmd_fill->add_option("--context-lang", fil.context_lang, "context language");
  cmd_fill->add_option("--entity-lang", fil.entity_lang, "entity language");
  cmd_fill->add_option("--ontology", fil.ontology_args,
                       "lang=path, repeat per language");
  cmd_fill->add_flag("--identity-entities", fil.identity,
                     "restore each placeholder's original value");
  cmd_fill->add_option("--seed", fil.seed, "master seed")->required()
      ->envname("TODG_SEED");
  cmd_fill->add_option("--copies", fil.copies, "independent fills per template");
  cmd_fill->add_option("-o,--out", fil.out, "output corpus")->required();
  cmd_fill->add_option("--provenance", fil.provenance,
                       "entity provenance sidecar (default <out>.provenance.json)");

  // ---- translate-train ----
  struct {
    std::string templates_xx, out, provenance;
    TranslatorFlags translator;
  } ttr;
  auto* cmd_ttrain = app.add_subcommand(
      "translate-train",
      "fill translated templates with machine-translated entity values");
  cmd_ttrain->add_option("--templates-xx", ttr.templates_xx,
                         "translated template set")
      ->required();
  add_translator_flags(cmd_ttrain, ttr.translator);
  cmd_ttrain->add_option("-o,--out", ttr.out, "output corpus")->required();
  cmd_ttrain->add_option("--provenance", ttr.provenance,
                         "provenance sidecar (default <out>.provenance.json)");

  // ---- ablate ----
  struct {
    std::string kind, target_lang, out, provenance;
    std::vector<std::string> template_args;
    std::vector<std::string> ontology_args;
    uint64_t seed = 0;
  } abl;
  auto* cmd_ablate = app.add_subcommand(
      "ablate", "build a local-context-only or local-entities-only train set");
  cmd_ablate->add_option("--kind", abl.kind, "context-only or entities-only")
      ->required();
  cmd_ablate->add_option("--target-lang", abl.target_lang, "language under study")
      ->required();
  cmd_ablate->add_option("--templates", abl.template_args,
                         "lang=path, repeat per language");
  cmd_ablate->add_option("--ontology", abl.ontology_args,
                         "lang=path, repeat per language");
  cmd_ablate->add_option("--seed", abl.seed, "master seed")->required();
  cmd_ablate->add_option("-o,--out", abl.out, "output corpus")->required();
  cmd_ablate->add_option("--provenance", abl.provenance,
                         "provenance sidecar (default <out>.provenance.json)");

  // ---- mixture ----
  struct {
    std::string method, use_case, language, out, manifest;
    std::vector<std::string> languages;
    std::vector<std::string> dataset_args;
  } mix;
  auto* cmd_mixture =
      app.add_subcommand("mixture", "assemble a training mixture from datasets");
  cmd_mixture
      ->add_option("--method", mix.method,
                   "zero-shot-ee, translate-train, suc, bbuc, mbuc, mmuc, "
                   "context-only, entities-only")
      ->required();
  cmd_mixture->add_option("--case", mix.use_case, "use case for suc/bbuc/mbuc");
  cmd_mixture->add_option("--language", mix.language, "language for suc/bbuc");
  cmd_mixture->add_option("--languages", mix.languages,
                          "all target languages (mbuc/mmuc)");
  cmd_mixture->add_option("--dataset", mix.dataset_args,
                          "name=path, repeat per component");
  cmd_mixture->add_option("-o,--out", mix.out, "output corpus")->required();
  cmd_mixture->add_option("--manifest", mix.manifest,
                          "manifest TSV (default <out>.manifest.tsv)");

  // ---- eval ----
  auto* cmd_eval = app.add_subcommand("eval", "evaluation utilities");
  struct {
    std::string pred, gold;
    bool per_dialogue = false;
  } jga;
  auto* cmd_jga = cmd_eval->add_subcommand("jga", "joint goal accuracy");
  cmd_jga->add_option("--pred", jga.pred, "prediction JSON")->required();
  cmd_jga->add_option("--gold", jga.gold, "gold corpus")->required();
  cmd_jga->add_flag("--per-dialogue", jga.per_dialogue,
                    "count whole dialogues instead of turns");

  struct {
    std::string table_a, table_b, out;
  } corr;
  auto* cmd_correlate = cmd_eval->add_subcommand(
      "correlate", "Spearman/Pearson between two method-by-language tables");
  cmd_correlate->add_option("table_a", corr.table_a, "first result TSV")->required();
  cmd_correlate->add_option("table_b", corr.table_b, "second result TSV")->required();
  cmd_correlate->add_option("-o,--out", corr.out, "output TSV (default stdout)");

  struct {
    std::string hyp, ref;
  } bleu;
  auto* cmd_bleu = cmd_eval->add_subcommand("bleu", "corpus BLEU-4 of line files");
  cmd_bleu->add_option("--hyp", bleu.hyp, "hypothesis lines")->required();
  cmd_bleu->add_option("--ref", bleu.ref, "reference lines")->required();

  // ---- audit ----
  struct {
    std::string tallies, out;
  } aud;
  auto* cmd_audit = app.add_subcommand(
      "audit", "failure rates of translated-entity search tallies");
  cmd_audit->add_option("tallies", aud.tallies, "tally JSON file")->required();
  cmd_audit->add_option("-o,--out", aud.out, "output TSV (default stdout)");

  // ---- run ----
  struct {
    std::string config;
    bool allow_quarantine = false;
    int workers = 0;
  } run;
  auto* cmd_run = app.add_subcommand("run", "execute the full pipeline from a config");
  cmd_run->add_option("--config", run.config, "run config JSON")->required();
  cmd_run->add_flag("--allow-quarantine", run.allow_quarantine,
                    "exit 0 even when dialogues were quarantined");
  cmd_run->add_option("--workers", run.workers, "override config workers")
      ->envname("TODG_WORKERS");

  // ---- fixtures ----
  struct {
    std::string out_dir = "fixtures";
    uint64_t seed = 0;
  } fix;
  auto* cmd_fixtures =
      app.add_subcommand("fixtures", "write the bundled corpus/ontology fixtures");
  cmd_fixtures->add_option("--out-dir", fix.out_dir, "target directory");
  cmd_fixtures->add_option("--seed", fix.seed, "mini corpus seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion")
      return app.exit(e);
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    todg::Warnings warnings;

    if (cmd_import->parsed()) {
      todg::Corpus corpus =
          todg::import_multiwoz_files(imp.data, imp.acts, imp.split, &warnings);
      todg::write_corpus(corpus, imp.out);
      print_warnings(warnings);
      std::cerr << "imported " << corpus.dialogues.size() << " dialogues\n";
    }

    if (cmd_extract->parsed()) {
      todg::Corpus corpus = todg::load_corpus(ext.corpus, &warnings);
      std::optional<todg::Ontology> source;
      if (!ext.source_ontology.empty())
        source = todg::load_ontology(ext.source_ontology, corpus.schema, &warnings);
      todg::TemplateSet set = todg::extract_templates(
          corpus, source ? &*source : nullptr, &warnings);
      todg::write_template_set(set, ext.out);
      print_warnings(warnings);
    }

    if (cmd_select->parsed()) {
      todg::Corpus corpus = todg::load_corpus(sel.corpus, &warnings);
      todg::NgramFrequencyTable table;
      table.n = sel.n;
      if (sel.tables.empty()) {
        table = todg::build_frequency_table(corpus, sel.n);
      } else {
        for (const std::string& path : sel.tables) {
          todg::Corpus tc = path == sel.corpus ? corpus
                                               : todg::load_corpus(path, &warnings);
          for (const auto& d : tc.dialogues)
            for (const auto& t : d.turns)
              todg::add_ngrams(table, todg::tokenize(t.utterance));
        }
      }
      std::string tsv = "dialogue_id\tngram_sum\tword_length\tscore\n";
      for (const todg::ScoredDialogue& s : todg::select_top_k(corpus, sel.k, table)) {
        tsv += s.dialogue_id + "\t" + std::to_string(s.ngram_sum) + "\t" +
               std::to_string(s.word_length) + "\t" +
               todg::format_fixed(s.score(), 6) + "\n";
      }
      emit(sel.out, tsv);
    }

    if (cmd_translate->parsed()) {
      todg::TemplateSet set = todg::load_template_set(tra.templates);
      todg::Translator translator(tra.translator.to_spec());
      todg::TranslationOutcome outcome =
          todg::translate_templates(set.templates, translator, tra.workers);
      todg::TemplateSet out_set{set.schema, set.split, std::move(outcome.translated)};
      todg::write_template_set(out_set, tra.out);
      if (!outcome.quarantined.empty()) {
        if (tra.quarantine_dir.empty())
          throw todg::TranslatorError(
              std::to_string(outcome.quarantined.size()) +
              " template(s) failed placeholder integrity; rerun with "
              "--quarantine-dir to park them");
        std::filesystem::create_directories(tra.quarantine_dir);
        todg::TemplateSet bad{set.schema, set.split, {}};
        for (auto& [tpl, reason] : outcome.quarantined) {
          std::cerr << "quarantined " << tpl.base.dialogue_id << ": " << reason
                    << "\n";
          bad.templates.push_back(std::move(tpl));
        }
        todg::write_template_set(
            bad, (std::filesystem::path(tra.quarantine_dir) /
                  (tra.translator.target_lang + ".json"))
                     .string());
      }
    }

    if (cmd_stats->parsed()) {
      todg::Schema schema = ost.corpus.empty()
                                ? todg::fixtures::fixture_schema()
                                : todg::load_corpus(ost.corpus, &warnings).schema;
      std::string tsv =
          "language\trestaurant\thotel\tattraction\ttrain\ttaxi\thospital\t"
          "police\tnotes\n";
      for (const std::string& path : ost.ontologies) {
        todg::Ontology o = todg::load_ontology(path, schema, &warnings);
        std::map<std::string, todg::DomainStat> by_domain;
        std::string notes;
        for (const todg::DomainStat& s : todg::ontology_stats(o)) {
          by_domain[s.domain] = s;
          if (!s.note.empty())
            notes += (notes.empty() ? "" : ";") + s.domain + "=" + s.note;
        }
        tsv += o.language;
        for (const char* domain : {"restaurant", "hotel", "attraction", "train",
                                   "taxi", "hospital", "police"})
          tsv += "\t" + std::to_string(by_domain[domain].entities);
        tsv += "\t" + (notes.empty() ? "-" : notes) + "\n";
      }
      emit(ost.out, tsv);
      print_warnings(warnings);
    }

    if (cmd_fill->parsed()) {
      todg::TemplateSet templates_en = todg::load_template_set(fil.templates_en);
      std::optional<todg::TemplateSet> templates_xx;
      if (!fil.templates_xx.empty())
        templates_xx = todg::load_template_set(fil.templates_xx);
      todg::UseCaseSpec spec{todg::use_case_from_string(fil.use_case),
                             fil.context_lang, fil.entity_lang};
      std::map<std::string, todg::Ontology> ontologies;
      if (fil.identity) {
        ontologies.emplace(fil.entity_lang, todg::identity_ontology(fil.entity_lang));
      }
      for (const std::string& arg : fil.ontology_args) {
        auto eq = arg.find('=');
        if (eq == std::string::npos)
          throw todg::ConfigError("--ontology expects lang=path, got '" + arg + "'");
        ontologies.emplace(
            arg.substr(0, eq),
            todg::load_ontology(arg.substr(eq + 1), templates_en.schema, &warnings));
      }
      todg::GeneratedCorpus generated = todg::generate_use_case(
          templates_en, templates_xx ? &*templates_xx : nullptr, spec, ontologies,
          fil.seed, fil.copies);
      todg::write_corpus(generated.corpus, fil.out);
      std::string prov_path = fil.provenance.empty() ? fil.out + ".provenance.json"
                                                     : fil.provenance;
      todg::write_text_file(
          prov_path, todg::canonical_dump(todg::provenance_to_json(
                         generated.provenance)));
      for (const auto& [id, reason] : generated.quarantined)
        std::cerr << "quarantined " << id << ": " << reason << "\n";
      print_warnings(warnings);
      if (!generated.quarantined.empty()) return 1;
    }

    if (cmd_ttrain->parsed()) {
      todg::TemplateSet set = todg::load_template_set(ttr.templates_xx);
      todg::Translator translator(ttr.translator.to_spec());
      todg::GeneratedCorpus out = todg::generate_translate_train(set, translator);
      todg::write_corpus(out.corpus, ttr.out);
      todg::write_text_file(
          ttr.provenance.empty() ? ttr.out + ".provenance.json" : ttr.provenance,
          todg::canonical_dump(todg::provenance_to_json(out.provenance)));
    }

    if (cmd_ablate->parsed()) {
      todg::AblationKind kind;
      if (abl.kind == "context-only" || abl.kind == "context_only")
        kind = todg::AblationKind::context_only;
      else if (abl.kind == "entities-only" || abl.kind == "entities_only")
        kind = todg::AblationKind::entities_only;
      else
        throw todg::ConfigError("--kind must be context-only or entities-only");

      std::map<std::string, todg::TemplateSet> templates;
      for (const std::string& arg : abl.template_args) {
        auto eq = arg.find('=');
        if (eq == std::string::npos)
          throw todg::ConfigError("--templates expects lang=path, got '" + arg + "'");
        templates.emplace(arg.substr(0, eq),
                          todg::load_template_set(arg.substr(eq + 1)));
      }
      if (templates.empty()) throw todg::ConfigError("no --templates given");
      const todg::Schema& schema = templates.begin()->second.schema;
      std::map<std::string, todg::Ontology> ontologies;
      for (const std::string& arg : abl.ontology_args) {
        auto eq = arg.find('=');
        if (eq == std::string::npos)
          throw todg::ConfigError("--ontology expects lang=path, got '" + arg + "'");
        ontologies.emplace(arg.substr(0, eq),
                           todg::load_ontology(arg.substr(eq + 1), schema, &warnings));
      }
      todg::GeneratedCorpus out =
          todg::make_ablation(kind, abl.target_lang, templates, ontologies, abl.seed);
      todg::write_corpus(out.corpus, abl.out);
      todg::write_text_file(
          abl.provenance.empty() ? abl.out + ".provenance.json" : abl.provenance,
          todg::canonical_dump(todg::provenance_to_json(out.provenance)));
      for (const auto& [id, reason] : out.quarantined)
        std::cerr << "quarantined " << id << ": " << reason << "\n";
      if (!out.quarantined.empty()) return 1;
    }

    if (cmd_mixture->parsed()) {
      std::map<std::string, todg::Corpus> datasets;
      for (const std::string& arg : mix.dataset_args) {
        auto eq = arg.find('=');
        if (eq == std::string::npos)
          throw todg::ConfigError("--dataset expects name=path, got '" + arg + "'");
        datasets.emplace(arg.substr(0, eq),
                         todg::load_corpus(arg.substr(eq + 1), &warnings));
      }
      std::optional<todg::UseCase> use_case;
      if (!mix.use_case.empty())
        use_case = todg::use_case_from_string(mix.use_case);
      todg::MixtureRecipe recipe =
          todg::make_recipe(todg::mixture_method_from_string(mix.method),
                            mix.languages, use_case, mix.language);
      todg::Mixture mixture = todg::assemble_mixture(recipe, datasets);
      todg::write_corpus(mixture.corpus, mix.out);
      todg::write_text_file(
          mix.manifest.empty() ? mix.out + ".manifest.tsv" : mix.manifest,
          todg::mixture_manifest_tsv(mixture));
    }

    if (cmd_jga->parsed()) {
      todg::PredictionFile predictions = todg::load_predictions(jga.pred);
      todg::Corpus gold = todg::load_corpus(jga.gold, &warnings);
      double accuracy =
          todg::joint_goal_accuracy(predictions, gold, jga.per_dialogue);
      std::cout << "joint_goal_accuracy\t" << todg::format_fixed(accuracy, 2)
                << "\n";
    }

    if (cmd_correlate->parsed()) {
      todg::ResultTable a = todg::load_result_table(corr.table_a);
      todg::ResultTable b = todg::load_result_table(corr.table_b);
      emit(corr.out, todg::correlation_report_tsv(todg::correlation_report(a, b)));
    }

    if (cmd_bleu->parsed()) {
      double score = todg::corpus_bleu(read_lines(bleu.hyp), read_lines(bleu.ref));
      std::cout << "bleu\t" << todg::format_fixed(score, 2) << "\n";
    }

    if (cmd_audit->parsed()) {
      std::vector<todg::AuditTally> tallies =
          todg::tallies_from_json(todg::read_json_file(aud.tallies));
      emit(aud.out, todg::audit_report_tsv(todg::failure_rate_audit(tallies)));
    }

    if (cmd_run->parsed()) {
      todg::RunConfig config = todg::load_run_config(run.config);
      if (run.workers > 0) config.workers = run.workers;
      todg::RunReport report = todg::run_pipeline(config);
      for (const auto& [name, count] : report.datasets)
        std::cerr << name << ": " << count << " dialogues\n";
      if (!report.quarantined.empty()) {
        for (const auto& [id, reason] : report.quarantined)
          std::cerr << "quarantined " << id << ": " << reason << "\n";
        if (!run.allow_quarantine) return 1;
      }
    }

    if (cmd_fixtures->parsed()) {
      namespace fs = std::filesystem;
      fs::create_directories(fix.out_dir);
      fs::create_directories(fs::path(fix.out_dir) / "ontologies");
      todg::write_corpus(todg::fixtures::generate_mini_corpus(fix.seed),
                         (fs::path(fix.out_dir) / "mini_corpus.json").string());
      for (const char* lang : {"en", "zh", "es", "id"}) {
        todg::write_ontology(
            todg::fixtures::fixture_ontology(lang),
            (fs::path(fix.out_dir) / "ontologies" / (std::string(lang) + ".json"))
                .string());
      }
      todg::fixtures::write_stats_fixture(
          (fs::path(fix.out_dir) / "stats" / "zh").string(), "zh", 3000, 496, 1000,
          100);
      todg::fixtures::write_stats_fixture(
          (fs::path(fix.out_dir) / "stats" / "id").string(), "id", 3000, 999, 792,
          100);
    }
  } catch (const todg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
