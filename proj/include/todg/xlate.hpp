#pragma once

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "todg/corpus.hpp"
#include "todg/errors.hpp"
#include "todg/rng.hpp"
#include "todg/selector.hpp"
#include "todg/templater.hpp"

namespace todg {

// ---------------------------------------------------------------------------
// Translator contract
// ---------------------------------------------------------------------------

enum class TranslatorKind { mock, file, command };

struct TranslatorSpec {
  TranslatorKind kind = TranslatorKind::mock;
  std::string target_language = "xx";
  // mock: optional word dictionary (TSV word\ttranslation)
  std::string dictionary_path;
  // file: required line table (TSV fnv1a64-hex-of-source\ttranslation)
  std::string mapping_path;
  // command: shell command reading source lines on stdin, writing one
  // translated line per input line on stdout
  std::string command;
};

inline TranslatorKind translator_kind_from_string(const std::string& s) {
  if (s == "mock") return TranslatorKind::mock;
  if (s == "file") return TranslatorKind::file;
  if (s == "command") return TranslatorKind::command;
  throw ConfigError("unknown translator kind '" + s + "'");
}

inline std::string line_hash_hex(const std::string& line) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(line)));
  return buf;
}

class Translator {
 public:
  explicit Translator(TranslatorSpec spec) : spec_(std::move(spec)) {
    switch (spec_.kind) {
      case TranslatorKind::mock:
        if (!spec_.dictionary_path.empty()) load_dictionary();
        break;
      case TranslatorKind::file:
        load_mapping();
        break;
      case TranslatorKind::command:
        if (spec_.command.empty())
          throw TranslatorError("command translator needs a command");
        break;
    }
  }

  const TranslatorSpec& spec() const { return spec_; }

  std::vector<std::string> translate_lines(const std::vector<std::string>& lines) const {
    switch (spec_.kind) {
      case TranslatorKind::mock: {
        std::vector<std::string> out;
        out.reserve(lines.size());
        for (const std::string& line : lines) out.push_back(mock_line(line));
        return out;
      }
      case TranslatorKind::file: {
        std::vector<std::string> out;
        out.reserve(lines.size());
        for (const std::string& line : lines) {
          auto it = mapping_.find(line_hash_hex(line));
          if (it == mapping_.end())
            throw TranslatorError("no mapping for line '" + line + "' (hash " +
                                  line_hash_hex(line) + ")");
          out.push_back(it->second);
        }
        return out;
      }
      case TranslatorKind::command:
        return run_command(lines);
    }
    return {};
  }

  std::string translate_line(const std::string& line) const {
    return translate_lines({line}).front();
  }

 private:
  // Offline stand-in for an MT system: placeholder tokens pass through
  // verbatim, every other whitespace token is lowercased and prefixed with
  // "xx:" (or mapped through the user dictionary).
  std::string mock_line(const std::string& line) const {
    std::vector<std::string> pieces;
    auto spans = find_placeholder_tokens(line);
    size_t cursor = 0;
    auto flush_text = [&](size_t until) {
      std::istringstream in(line.substr(cursor, until - cursor));
      std::string word;
      while (in >> word) {
        std::string folded = to_lower_ascii(word);
        auto it = dictionary_.find(folded);
        pieces.push_back(it != dictionary_.end() ? it->second : "xx:" + folded);
      }
    };
    for (const TokenSpan& span : spans) {
      flush_text(span.pos);
      pieces.push_back(span.token);
      cursor = span.pos + span.len;
    }
    flush_text(line.size());
    return join_tokens(pieces);
  }

  std::vector<std::string> run_command(const std::vector<std::string>& lines) const {
    namespace fs = std::filesystem;
    static std::atomic<uint64_t> counter{0};
    fs::path dir = fs::temp_directory_path();
    uint64_t tag = fnv1a64_u64(counter++) ^ fnv1a64(spec_.command);
    fs::path in_path = dir / ("todg-xlate-" + std::to_string(tag) + ".in");
    fs::path out_path = dir / ("todg-xlate-" + std::to_string(tag) + ".out");
    {
      std::ofstream out(in_path, std::ios::binary);
      for (const std::string& line : lines) out << line << "\n";
    }
    std::string cmd = spec_.command + " < " + in_path.string() + " > " +
                      out_path.string();
    int rc = std::system(cmd.c_str());
    std::vector<std::string> result;
    if (rc == 0) {
      std::ifstream in(out_path, std::ios::binary);
      std::string line;
      while (std::getline(in, line)) result.push_back(line);
    }
    fs::remove(in_path);
    fs::remove(out_path);
    if (rc != 0)
      throw TranslatorError("command '" + spec_.command + "' exited with " +
                            std::to_string(rc));
    if (result.size() != lines.size())
      throw TranslatorError("command produced " + std::to_string(result.size()) +
                            " lines for " + std::to_string(lines.size()) +
                            " inputs");
    return result;
  }

  void load_dictionary() {
    std::ifstream in(spec_.dictionary_path);
    if (!in) throw TranslatorError("cannot open dictionary " + spec_.dictionary_path);
    std::string line;
    while (std::getline(in, line)) {
      auto tab = line.find('\t');
      if (tab == std::string::npos) continue;
      dictionary_[to_lower_ascii(line.substr(0, tab))] = line.substr(tab + 1);
    }
  }

  void load_mapping() {
    std::ifstream in(spec_.mapping_path);
    if (!in) throw TranslatorError("cannot open mapping " + spec_.mapping_path);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      auto tab = line.find('\t');
      if (tab == std::string::npos) continue;
      mapping_[line.substr(0, tab)] = line.substr(tab + 1);
    }
  }

  TranslatorSpec spec_;
  std::map<std::string, std::string> dictionary_;
  std::map<std::string, std::string> mapping_;
};

// ---------------------------------------------------------------------------
// Placeholder integrity
// ---------------------------------------------------------------------------

struct IntegrityReport {
  std::vector<std::string> missing;
  std::vector<std::string> extra;
  std::vector<std::pair<std::string, std::string>> mutated;  // (expected, found)

  bool ok() const { return missing.empty() && extra.empty() && mutated.empty(); }

  std::string describe() const {
    std::string s;
    auto add = [&](const std::string& label, const std::vector<std::string>& v) {
      if (v.empty()) return;
      s += label + "=[";
      for (size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i];
      s += "] ";
    };
    add("missing", missing);
    add("extra", extra);
    if (!mutated.empty()) {
      s += "mutated=[";
      for (size_t i = 0; i < mutated.size(); ++i)
        s += (i ? " " : "") + mutated[i].first + "->" + mutated[i].second;
      s += "]";
    }
    return s.empty() ? "ok" : s;
  }
};

class IntegrityError : public Error {
 public:
  IntegrityError(int turn_index, IntegrityReport report)
      : Error("IntegrityError", "turn " + std::to_string(turn_index) + ": " +
                                    report.describe()),
        turn_index_(turn_index),
        report_(std::move(report)) {}

  int turn_index() const { return turn_index_; }
  const IntegrityReport& report() const { return report_; }

 private:
  int turn_index_;
  IntegrityReport report_;
};

namespace detail {

inline size_t levenshtein(const std::string& a, const std::string& b) {
  std::vector<size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

// Any bracketed whitespace-free chunk; where damaged placeholders hide.
inline std::vector<std::string> find_bracketed_chunks(const std::string& text) {
  std::vector<std::string> chunks;
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '[') continue;
    size_t j = i + 1;
    while (j < text.size() && text[j] != ']' && text[j] != '[' &&
           !std::isspace(static_cast<unsigned char>(text[j])))
      ++j;
    if (j < text.size() && text[j] == ']' && j > i + 1)
      chunks.push_back(text.substr(i, j + 1 - i));
    i = j;
  }
  return chunks;
}

// "[hotel-name0]" -> "[hotel-name": the part a mutation rarely destroys.
inline std::string token_stem(const std::string& token) {
  size_t end = token.size() - 1;  // skip ']'
  while (end > 0 && token[end - 1] >= '0' && token[end - 1] <= '9') --end;
  return token.substr(0, end);
}

}  // namespace detail

// Compares the multisets of placeholder tokens in source and translation
// (translations reorder freely). Leftover source tokens are paired with
// damaged bracketed chunks by nearest edit distance; a pair counts as a
// mutation when the distance is at most 2 or the chunk still starts with the
// token's domain-attribute stem.
inline IntegrityReport verify_placeholder_integrity(const std::string& source,
                                                    const std::string& translated) {
  std::multiset<std::string> expected;
  for (const TokenSpan& span : find_placeholder_tokens(source))
    expected.insert(span.token);

  std::multiset<std::string> found_strict;
  for (const TokenSpan& span : find_placeholder_tokens(translated))
    found_strict.insert(span.token);

  IntegrityReport report;
  std::vector<std::string> unmatched_expected;
  for (const std::string& token : expected) {
    auto it = found_strict.find(token);
    if (it != found_strict.end()) {
      found_strict.erase(it);
    } else {
      unmatched_expected.push_back(token);
    }
  }
  std::vector<std::string> unmatched_found(found_strict.begin(), found_strict.end());

  // Strict tokens are exact; mutation candidates also include loose chunks
  // ("[a-namezero]" is not a valid token but clearly a damaged one).
  std::vector<std::string> loose;
  {
    std::multiset<std::string> strict_all;
    for (const TokenSpan& span : find_placeholder_tokens(translated))
      strict_all.insert(span.token);
    for (const std::string& chunk : detail::find_bracketed_chunks(translated)) {
      auto it = strict_all.find(chunk);
      if (it != strict_all.end()) {
        strict_all.erase(it);
        continue;
      }
      loose.push_back(chunk);
    }
  }

  std::vector<std::string> candidates = unmatched_found;
  candidates.insert(candidates.end(), loose.begin(), loose.end());
  std::vector<bool> used(candidates.size(), false);

  for (const std::string& token : unmatched_expected) {
    size_t best = candidates.size();
    size_t best_dist = std::numeric_limits<size_t>::max();
    for (size_t i = 0; i < candidates.size(); ++i) {
      if (used[i]) continue;
      size_t d = detail::levenshtein(token, candidates[i]);
      bool stem_ok = candidates[i].rfind(detail::token_stem(token), 0) == 0;
      if (d > 2 && !stem_ok) continue;
      if (d < best_dist) {
        best = i;
        best_dist = d;
      }
    }
    if (best < candidates.size()) {
      used[best] = true;
      report.mutated.emplace_back(token, candidates[best]);
    } else {
      report.missing.push_back(token);
    }
  }
  for (size_t i = 0; i < candidates.size(); ++i) {
    // Unpaired strict tokens were introduced by the translator; unpaired
    // loose chunks are ordinary bracketed text and are ignored.
    if (!used[i] && i < unmatched_found.size()) report.extra.push_back(candidates[i]);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Template translation with integrity enforcement
// ---------------------------------------------------------------------------

namespace detail {

inline std::string armor_placeholders(const std::string& line,
                                      std::vector<std::string>& tokens) {
  std::string out;
  size_t cursor = 0;
  for (const TokenSpan& span : find_placeholder_tokens(line)) {
    out += line.substr(cursor, span.pos - cursor);
    out += "<ph id=" + std::to_string(tokens.size()) + "/>";
    tokens.push_back(span.token);
    cursor = span.pos + span.len;
  }
  out += line.substr(cursor);
  return out;
}

inline std::string unarmor_placeholders(const std::string& line,
                                        const std::vector<std::string>& tokens) {
  std::string out;
  size_t cursor = 0;
  while (true) {
    size_t pos = line.find("<ph id=", cursor);
    if (pos == std::string::npos) break;
    size_t digits = pos + 7;
    size_t end = digits;
    while (end < line.size() && std::isdigit(static_cast<unsigned char>(line[end])))
      ++end;
    if (end == digits || end + 1 >= line.size() || line[end] != '/' ||
        line[end + 1] != '>') {
      cursor = pos + 1;
      continue;
    }
    out += line.substr(cursor, pos - cursor);
    size_t id = std::stoul(line.substr(digits, end - digits));
    if (id < tokens.size()) out += tokens[id];
    cursor = end + 2;
  }
  out += line.substr(cursor);
  return out;
}

}  // namespace detail

// Translates every utterance of a template. Each line is verified; a failing
// line is retried once with placeholders armored as "<ph id=N/>" tags. The
// placeholder table and bindings are carried over unchanged.
inline DialogueTemplate translate_template(const DialogueTemplate& tpl,
                                           const Translator& translator) {
  DialogueTemplate out = tpl;
  out.base.language = translator.spec().target_language;

  std::vector<std::string> lines;
  lines.reserve(tpl.base.turns.size());
  for (const Turn& t : tpl.base.turns) lines.push_back(t.utterance);
  std::vector<std::string> translated = translator.translate_lines(lines);
  if (translated.size() != lines.size())
    throw TranslatorError("translator returned " + std::to_string(translated.size()) +
                          " lines for " + std::to_string(lines.size()));

  for (size_t i = 0; i < lines.size(); ++i) {
    IntegrityReport report = verify_placeholder_integrity(lines[i], translated[i]);
    if (report.ok()) {
      out.base.turns[i].utterance = translated[i];
      continue;
    }
    // One armored retry before giving up on this dialogue.
    std::vector<std::string> tokens;
    std::string armored = detail::armor_placeholders(lines[i], tokens);
    std::string retry =
        detail::unarmor_placeholders(translator.translate_line(armored), tokens);
    IntegrityReport retry_report = verify_placeholder_integrity(lines[i], retry);
    if (!retry_report.ok())
      throw IntegrityError(static_cast<int>(i), retry_report);
    out.base.turns[i].utterance = retry;
  }
  return out;
}

struct TranslationOutcome {
  std::vector<DialogueTemplate> translated;
  // (template, failure description) pairs set aside instead of dropped
  std::vector<std::pair<DialogueTemplate, std::string>> quarantined;
};

// Batch translation. Distinct templates may translate in parallel; results
// keep input order regardless of completion order.
inline TranslationOutcome translate_templates(const std::vector<DialogueTemplate>& tpls,
                                              const Translator& translator,
                                              int workers = 1) {
  TranslationOutcome outcome;
  std::vector<std::pair<bool, DialogueTemplate>> slots(tpls.size());
  std::vector<std::string> failures(tpls.size());

  auto work = [&](size_t i) {
    try {
      slots[i] = {true, translate_template(tpls[i], translator)};
    } catch (const Error& e) {
      slots[i] = {false, tpls[i]};
      failures[i] = e.what();
    }
  };

  if (workers <= 1) {
    for (size_t i = 0; i < tpls.size(); ++i) work(i);
  } else {
    std::vector<std::future<void>> pending;
    for (size_t i = 0; i < tpls.size(); ++i) {
      pending.push_back(std::async(std::launch::async, work, i));
      if (pending.size() >= static_cast<size_t>(workers)) {
        pending.front().get();
        pending.erase(pending.begin());
      }
    }
    for (auto& f : pending) f.get();
  }

  for (size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].first)
      outcome.translated.push_back(std::move(slots[i].second));
    else
      outcome.quarantined.emplace_back(std::move(slots[i].second), failures[i]);
  }
  return outcome;
}

// ---------------------------------------------------------------------------
// Corpus BLEU
// ---------------------------------------------------------------------------

// Corpus-level BLEU-4 with uniform weights, standard brevity penalty, a
// single reference per hypothesis and no smoothing: any zero n-gram
// precision zeroes the score. Tokenization is the shared corpus rule.
// Returns a value in [0, 100].
inline double corpus_bleu(const std::vector<std::string>& hypotheses,
                          const std::vector<std::string>& references) {
  if (hypotheses.size() != references.size() || hypotheses.empty())
    throw LengthMismatch("need equal, non-zero hypothesis and reference counts (" +
                         std::to_string(hypotheses.size()) + " vs " +
                         std::to_string(references.size()) + ")");
  constexpr int kMaxOrder = 4;
  double match[kMaxOrder + 1] = {0};
  double total[kMaxOrder + 1] = {0};
  int64_t hyp_len = 0, ref_len = 0;

  for (size_t i = 0; i < hypotheses.size(); ++i) {
    std::vector<std::string> hyp = tokenize(hypotheses[i]);
    std::vector<std::string> ref = tokenize(references[i]);
    hyp_len += static_cast<int64_t>(hyp.size());
    ref_len += static_cast<int64_t>(ref.size());
    for (int n = 1; n <= kMaxOrder; ++n) {
      if (hyp.size() < static_cast<size_t>(n)) continue;
      std::unordered_map<std::string, int64_t> ref_counts;
      if (ref.size() >= static_cast<size_t>(n))
        for (size_t j = 0; j + n <= ref.size(); ++j)
          ++ref_counts[ngram_key(ref, j, n)];
      std::unordered_map<std::string, int64_t> hyp_counts;
      for (size_t j = 0; j + n <= hyp.size(); ++j)
        ++hyp_counts[ngram_key(hyp, j, n)];
      for (const auto& [gram, count] : hyp_counts) {
        auto it = ref_counts.find(gram);
        if (it != ref_counts.end())
          match[n] += static_cast<double>(std::min(count, it->second));
        total[n] += static_cast<double>(count);
      }
    }
  }

  if (hyp_len == 0) return 0.0;
  double log_precision = 0.0;
  for (int n = 1; n <= kMaxOrder; ++n) {
    if (total[n] == 0) continue;  // corpus has no n-grams of this order
    if (match[n] == 0) return 0.0;
    log_precision += std::log(match[n] / total[n]) / kMaxOrder;
  }
  double brevity = hyp_len >= ref_len
                       ? 1.0
                       : std::exp(1.0 - static_cast<double>(ref_len) /
                                            static_cast<double>(hyp_len));
  return 100.0 * brevity * std::exp(log_precision);
}

}  // namespace todg
