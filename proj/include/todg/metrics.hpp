#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "todg/corpus.hpp"
#include "todg/errors.hpp"

namespace todg {

// ---------------------------------------------------------------------------
// Joint goal accuracy
// ---------------------------------------------------------------------------

// dialogue_id -> per-user-turn predicted states
using PredictionFile = std::map<std::string, std::vector<std::vector<SlotValue>>>;

inline PredictionFile predictions_from_json(const json& j) {
  PredictionFile preds;
  for (const auto& [dialogue_id, jturns] : j.items()) {
    std::vector<std::vector<SlotValue>> turns;
    for (const json& jt : jturns) {
      std::vector<SlotValue> state;
      for (const json& jp : jt) {
        if (!jp.is_array() || jp.size() != 2)
          throw ParseError("prediction entries must be [slot, value] pairs");
        state.push_back({jp[0].get<std::string>(), jp[1].get<std::string>()});
      }
      turns.push_back(std::move(state));
    }
    preds[dialogue_id] = std::move(turns);
  }
  return preds;
}

inline PredictionFile load_predictions(const std::string& path) {
  return predictions_from_json(read_json_file(path));
}

// lowercase, trim, collapse runs of internal whitespace
inline std::string normalize_value(const std::string& value) {
  std::string folded = to_lower_ascii(trim(value));
  std::string out;
  bool in_space = false;
  for (char c : folded) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      in_space = true;
    } else {
      if (in_space && !out.empty()) out.push_back(' ');
      in_space = false;
      out.push_back(c);
    }
  }
  return out;
}

inline std::set<std::pair<std::string, std::string>> normalized_state(
    const std::vector<SlotValue>& state) {
  std::set<std::pair<std::string, std::string>> out;
  for (const SlotValue& sv : state)
    out.emplace(normalize_value(sv.slot), normalize_value(sv.value));
  return out;
}

inline std::vector<std::vector<SlotValue>> gold_user_states(
    const NormalizedDialogue& d) {
  std::vector<std::vector<SlotValue>> states;
  for (const Turn& t : d.turns) {
    if (t.speaker != "user") continue;
    std::vector<SlotValue> state;
    for (const Frame& f : t.frames)
      state.insert(state.end(), f.state.begin(), f.state.end());
    states.push_back(std::move(state));
  }
  return states;
}

// Percentage of user turns whose predicted slot-value set exactly matches
// the gold set after normalization. With per_dialogue=true a dialogue counts
// as one unit that is correct only when all of its turns match.
inline double joint_goal_accuracy(const PredictionFile& predictions,
                                  const Corpus& gold, bool per_dialogue = false) {
  int64_t total = 0, correct = 0;
  for (const NormalizedDialogue& d : gold.dialogues) {
    auto it = predictions.find(d.dialogue_id);
    if (it == predictions.end())
      throw AlignmentError("no predictions for dialogue " + d.dialogue_id);
    std::vector<std::vector<SlotValue>> gold_states = gold_user_states(d);
    if (it->second.size() != gold_states.size())
      throw AlignmentError("dialogue " + d.dialogue_id + " has " +
                           std::to_string(gold_states.size()) +
                           " user turns but " + std::to_string(it->second.size()) +
                           " predictions");
    bool all_match = true;
    for (size_t t = 0; t < gold_states.size(); ++t) {
      bool match = normalized_state(it->second[t]) == normalized_state(gold_states[t]);
      all_match = all_match && match;
      if (!per_dialogue) {
        ++total;
        if (match) ++correct;
      }
    }
    if (per_dialogue) {
      ++total;
      if (all_match) ++correct;
    }
  }
  if (total == 0) throw AlignmentError("gold corpus has no user turns");
  return 100.0 * static_cast<double>(correct) / static_cast<double>(total);
}

// ---------------------------------------------------------------------------
// Correlation coefficients
// ---------------------------------------------------------------------------

inline std::vector<double> average_ranks(const std::vector<double>& values) {
  std::vector<size_t> order(values.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

inline double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size())
    throw LengthMismatch("pearson needs vectors of equal length");
  if (xs.size() < 2) throw DegenerateInput("pearson needs at least two points");
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0 || syy == 0)
    throw DegenerateInput("pearson is undefined for a constant vector");
  return sxy / std::sqrt(sxx * syy);
}

// Pearson of the average-rank vectors; ties get the mean of their ranks.
inline double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size())
    throw LengthMismatch("spearman needs vectors of equal length");
  if (xs.size() < 2) throw DegenerateInput("spearman needs at least two points");
  return pearson(average_ranks(xs), average_ranks(ys));
}

// ---------------------------------------------------------------------------
// Result tables
// ---------------------------------------------------------------------------

// method x language grid of accuracy percentages. The "avg" column is always
// recomputed from the language cells, never read from input.
struct ResultTable {
  std::vector<std::string> methods;
  std::vector<std::string> languages;
  std::map<std::string, std::map<std::string, double>> cells;  // method -> lang -> %

  double cell(const std::string& method, const std::string& language) const {
    return cells.at(method).at(language);
  }

  double row_average(const std::string& method) const {
    double sum = 0;
    for (const std::string& lang : languages) sum += cell(method, lang);
    return sum / static_cast<double>(languages.size());
  }
};

inline std::vector<std::string> split_tsv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == '\t') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

inline ResultTable result_table_from_tsv(std::istream& in, const std::string& name) {
  ResultTable table;
  std::string line;
  if (!std::getline(in, line)) throw ParseError(name + ": empty result table");
  std::vector<std::string> header = split_tsv_line(line);
  if (header.size() < 2)
    throw ParseError(name + ": header needs a method column and >=1 language");
  for (size_t i = 1; i < header.size(); ++i) {
    if (header[i] == "avg") continue;  // recomputed
    table.languages.push_back(header[i]);
  }
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split_tsv_line(line);
    if (fields.size() != header.size())
      throw ParseError(name + ": row '" + fields[0] + "' has " +
                       std::to_string(fields.size()) + " fields, expected " +
                       std::to_string(header.size()));
    const std::string& method = fields[0];
    if (table.cells.count(method))
      throw ParseError(name + ": duplicate method '" + method + "'");
    table.methods.push_back(method);
    for (size_t i = 1; i < header.size(); ++i) {
      if (header[i] == "avg") continue;
      try {
        table.cells[method][header[i]] = std::stod(fields[i]);
      } catch (const std::exception&) {
        throw ParseError(name + ": cell '" + fields[i] + "' is not a number");
      }
    }
  }
  if (table.methods.empty()) throw ParseError(name + ": table has no rows");
  return table;
}

inline ResultTable load_result_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return result_table_from_tsv(in, path);
}

inline std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

inline std::string result_table_to_tsv(const ResultTable& table) {
  std::string tsv = "method";
  for (const std::string& lang : table.languages) tsv += "\t" + lang;
  tsv += "\tavg\n";
  for (const std::string& method : table.methods) {
    tsv += method;
    for (const std::string& lang : table.languages)
      tsv += "\t" + format_fixed(table.cell(method, lang), 2);
    tsv += "\t" + format_fixed(table.row_average(method), 2) + "\n";
  }
  return tsv;
}

// ---------------------------------------------------------------------------
// Correlation report
// ---------------------------------------------------------------------------

struct CorrelationRow {
  std::string column;  // language code or "avg"
  double spearman = 0;
  double pearson = 0;
};

// Per-language and recomputed-average Spearman/Pearson over the method axis.
// Rows are joined by method label, so row order in either table is free.
inline std::vector<CorrelationRow> correlation_report(const ResultTable& a,
                                                      const ResultTable& b) {
  std::set<std::string> methods_a(a.methods.begin(), a.methods.end());
  std::set<std::string> methods_b(b.methods.begin(), b.methods.end());
  if (methods_a != methods_b)
    throw ShapeMismatch("tables disagree on methods");
  std::set<std::string> langs_a(a.languages.begin(), a.languages.end());
  std::set<std::string> langs_b(b.languages.begin(), b.languages.end());
  if (langs_a != langs_b)
    throw ShapeMismatch("tables disagree on languages");

  std::vector<CorrelationRow> rows;
  auto add_row = [&](const std::string& column, auto&& getter) {
    std::vector<double> xs, ys;
    for (const std::string& method : a.methods) {
      xs.push_back(getter(a, method));
      ys.push_back(getter(b, method));
    }
    rows.push_back({column, spearman(xs, ys), pearson(xs, ys)});
  };
  for (const std::string& lang : a.languages) {
    add_row(lang, [&lang](const ResultTable& t, const std::string& m) {
      return t.cell(m, lang);
    });
  }
  add_row("avg", [](const ResultTable& t, const std::string& m) {
    return t.row_average(m);
  });
  return rows;
}

inline std::string correlation_report_tsv(const std::vector<CorrelationRow>& rows) {
  std::string tsv = "column\tspearman\tpearson\n";
  for (const CorrelationRow& row : rows) {
    tsv += row.column + "\t" + format_fixed(row.spearman, 4) + "\t" +
           format_fixed(row.pearson, 4) + "\n";
  }
  return tsv;
}

// ---------------------------------------------------------------------------
// Failure-rate audit
// ---------------------------------------------------------------------------

// Outcome counts for one translation direction of the entity search study.
// Keys: first flag = translation found the entity, second = web search did.
struct AuditTally {
  std::string direction;  // e.g. "En->Zh"
  int64_t tt = 0;         // translate ok, search ok
  int64_t tf = 0;         // translate ok, search failed
  int64_t ft = 0;
  int64_t ff = 0;
  int64_t original_failures = -1;  // searches of the untranslated entity; -1 unknown

  int64_t total() const { return tt + tf + ft + ff; }
};

struct AuditRow {
  std::string direction;
  int64_t tt, tf, ft, ff;
  int64_t total;
  int64_t failure_cases;
  double failure_rate;           // percent
  double original_failure_rate;  // percent, NaN when unknown
};

inline std::vector<AuditTally> tallies_from_json(const json& j) {
  std::vector<AuditTally> tallies;
  for (const json& jt : j) {
    AuditTally t;
    t.direction = jt.at("direction").get<std::string>();
    const json& counts = jt.at("counts");
    t.tt = counts.at("TT").get<int64_t>();
    t.tf = counts.at("TF").get<int64_t>();
    t.ft = counts.at("FT").get<int64_t>();
    t.ff = counts.at("FF").get<int64_t>();
    if (jt.contains("original_failures"))
      t.original_failures = jt.at("original_failures").get<int64_t>();
    tallies.push_back(std::move(t));
  }
  return tallies;
}

// A translated entity fails unless both its translation and the search for
// it succeeded: failure_cases = TF + FT + FF = total - TT.
inline std::vector<AuditRow> failure_rate_audit(const std::vector<AuditTally>& tallies) {
  std::vector<AuditRow> rows;
  for (const AuditTally& t : tallies) {
    if (t.total() == 0)
      throw EmptyTally("tally '" + t.direction + "' has no observations");
    AuditRow row;
    row.direction = t.direction;
    row.tt = t.tt;
    row.tf = t.tf;
    row.ft = t.ft;
    row.ff = t.ff;
    row.total = t.total();
    row.failure_cases = t.total() - t.tt;
    row.failure_rate =
        100.0 * static_cast<double>(row.failure_cases) / static_cast<double>(row.total);
    row.original_failure_rate =
        t.original_failures < 0
            ? std::nan("")
            : 100.0 * static_cast<double>(t.original_failures) /
                  static_cast<double>(row.total);
    rows.push_back(std::move(row));
  }
  return rows;
}

// Rates are printed as whole percents, the way the audited source tables
// report them; the raw counts in the row carry the full resolution.
inline std::string audit_report_tsv(const std::vector<AuditRow>& rows) {
  std::string tsv =
      "direction\ttt\ttf\tft\tff\ttotal\tfailure_cases\tfailure_rate\t"
      "original_failure_rate\n";
  for (const AuditRow& row : rows) {
    tsv += row.direction + "\t" + std::to_string(row.tt) + "\t" +
           std::to_string(row.tf) + "\t" + std::to_string(row.ft) + "\t" +
           std::to_string(row.ff) + "\t" + std::to_string(row.total) + "\t" +
           std::to_string(row.failure_cases) + "\t" +
           std::to_string(std::llround(row.failure_rate)) + "%\t" +
           (std::isnan(row.original_failure_rate)
                ? "-"
                : std::to_string(std::llround(row.original_failure_rate)) + "%") +
           "\n";
  }
  return tsv;
}

}  // namespace todg
