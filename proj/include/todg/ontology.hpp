#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "todg/corpus.hpp"
#include "todg/errors.hpp"
#include "todg/rng.hpp"

namespace todg {

struct EntityRecord {
  std::string record_id;
  std::string domain;
  std::map<std::string, std::string> attributes;

  bool operator==(const EntityRecord&) const = default;
};

// Per-language database of local entities for one city.
struct Ontology {
  std::string language;     // ISO-639-1
  std::string locale_name;  // city, or "@identity" for the pass-through marker
  std::map<std::string, std::vector<EntityRecord>> records;  // per domain

  bool is_identity() const { return locale_name == "@identity"; }

  const std::vector<EntityRecord>& domain_records(const std::string& domain) const {
    static const std::vector<EntityRecord> kEmpty;
    auto it = records.find(domain);
    return it == records.end() ? kEmpty : it->second;
  }

  // True when some record of `domain` holds both name==name_value and
  // attribute==value (case-insensitive). Drives entity grouping during
  // template extraction when a source ontology is available.
  bool co_occur(const std::string& domain, const std::string& name_value,
                const std::string& attribute, const std::string& value) const {
    std::string name_key = to_lower_ascii(trim(name_value));
    std::string value_key = to_lower_ascii(trim(value));
    for (const EntityRecord& r : domain_records(domain)) {
      auto name_it = r.attributes.find("name");
      if (name_it == r.attributes.end()) continue;
      if (to_lower_ascii(trim(name_it->second)) != name_key) continue;
      auto attr_it = r.attributes.find(attribute);
      if (attr_it != r.attributes.end() &&
          to_lower_ascii(trim(attr_it->second)) == value_key)
        return true;
    }
    return false;
  }
};

// Marker ontology: filling with it returns each placeholder's original
// value, i.e. reduces to fill_identity. Used for the E&E pass-through.
inline Ontology identity_ontology(const std::string& language = "en") {
  Ontology o;
  o.language = language;
  o.locale_name = "@identity";
  return o;
}

// ---------------------------------------------------------------------------
// Loading
// ---------------------------------------------------------------------------

inline void validate_ontology(const Ontology& ontology, const Schema& schema,
                              Warnings* warnings = nullptr) {
  for (const auto& [domain, recs] : ontology.records) {
    if (schema.find(domain) == schema.end())
      throw SchemaError("ontology domain '" + domain + "' not in corpus schema");
    std::set<std::string> ids;
    for (const EntityRecord& r : recs) {
      if (r.attributes.empty())
        throw SchemaError("ontology record " + domain + "/" + r.record_id +
                          " has no attributes");
      if (!ids.insert(r.record_id).second)
        throw SchemaError("duplicate record_id " + r.record_id + " in domain " +
                          domain);
      for (const auto& [attr, value] : r.attributes) {
        if (!schema_has(schema, domain, attr))
          throw SchemaError("ontology record " + domain + "/" + r.record_id +
                            ": attribute '" + attr + "' not in schema");
        (void)value;
      }
    }
    if (recs.empty())
      warn(warnings, "EmptyDomain", domain, "ontology has no records");
  }
}

inline Ontology ontology_from_json(const json& j) {
  Ontology o;
  o.language = j.at("language").get<std::string>();
  o.locale_name = j.at("locale_name").get<std::string>();
  for (const auto& [domain, jrecords] : j.at("domains").items()) {
    std::vector<EntityRecord> recs;
    for (const json& jr : jrecords) {
      EntityRecord r;
      r.record_id = jr.at("record_id").get<std::string>();
      r.domain = domain;
      r.attributes =
          jr.at("attributes").get<std::map<std::string, std::string>>();
      recs.push_back(std::move(r));
    }
    o.records[domain] = std::move(recs);
  }
  return o;
}

inline json ontology_to_json(const Ontology& o) {
  json domains = json::object();
  for (const auto& [domain, recs] : o.records) {
    json arr = json::array();
    for (const EntityRecord& r : recs)
      arr.push_back({{"record_id", r.record_id}, {"attributes", r.attributes}});
    domains[domain] = arr;
  }
  return {{"language", o.language},
          {"locale_name", o.locale_name},
          {"domains", domains}};
}

namespace detail {

// Minimal CSV: comma-separated, double quotes for fields containing commas,
// "" for an embedded quote. Good enough for the entity tables we ingest.
inline std::vector<std::string> parse_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace detail

// Directory layout: one "<domain>.csv" per domain, header row = attribute
// names. Record ids are "<domain>-<row>". Language/locale come from the
// directory name "ll_Locale" or are passed by the caller.
inline Ontology load_ontology_csv_dir(const std::string& dir,
                                      const std::string& language,
                                      const std::string& locale_name,
                                      Warnings* warnings = nullptr) {
  namespace fs = std::filesystem;
  Ontology o;
  o.language = language;
  o.locale_name = locale_name;
  if (!fs::is_directory(dir)) throw IoError(dir + " is not a directory");

  for (const std::string& domain : known_domains()) {
    fs::path file = fs::path(dir) / (domain + ".csv");
    if (!fs::exists(file)) {
      warn(warnings, "EmptyDomain", domain, "missing " + file.string());
      continue;
    }
    std::ifstream in(file);
    if (!in) throw IoError("cannot open " + file.string());
    std::string line;
    if (!std::getline(in, line))
      throw ParseError(file.string() + ": empty file, expected a header row");
    std::vector<std::string> header = detail::parse_csv_line(line);
    std::vector<EntityRecord> recs;
    size_t row = 0;
    while (std::getline(in, line)) {
      if (trim(line).empty()) continue;
      std::vector<std::string> fields = detail::parse_csv_line(line);
      if (fields.size() != header.size())
        throw ParseError(file.string() + ": row " + std::to_string(row + 1) +
                         " has " + std::to_string(fields.size()) +
                         " fields, header has " + std::to_string(header.size()));
      EntityRecord r;
      r.domain = domain;
      r.record_id = domain + "-" + std::to_string(row++);
      for (size_t i = 0; i < header.size(); ++i) {
        if (!trim(fields[i]).empty()) r.attributes[trim(header[i])] = fields[i];
      }
      recs.push_back(std::move(r));
    }
    o.records[domain] = std::move(recs);
  }
  return o;
}

// Loads either the JSON form or a CSV directory, then validates against the
// corpus schema.
inline Ontology load_ontology(const std::string& path, const Schema& schema,
                              Warnings* warnings = nullptr) {
  namespace fs = std::filesystem;
  Ontology o;
  if (fs::is_directory(path)) {
    std::string stem = fs::path(path).filename().string();
    std::string language = stem.substr(0, stem.find('_'));
    std::string locale =
        stem.find('_') == std::string::npos ? stem : stem.substr(stem.find('_') + 1);
    o = load_ontology_csv_dir(path, language, locale, warnings);
  } else {
    o = ontology_from_json(read_json_file(path));
  }
  validate_ontology(o, schema, warnings);
  return o;
}

inline void write_ontology(const Ontology& o, const std::string& path) {
  write_text_file(path, canonical_dump(ontology_to_json(o)));
}

// ---------------------------------------------------------------------------
// Statistics
// ---------------------------------------------------------------------------

struct DomainStat {
  std::string domain;
  size_t entities = 0;
  std::string note;
};

// True when the taxi table carries only cab descriptors, in which case the
// taxi entity count is reported as restaurant+hotel+attraction: taxi
// endpoints refer to entities of those domains.
inline bool taxi_is_descriptor_only(const Ontology& o) {
  const auto& recs = o.domain_records("taxi");
  for (const EntityRecord& r : recs) {
    for (const auto& [attr, value] : r.attributes) {
      (void)value;
      if (attr != "color" && attr != "colour" && attr != "type" && attr != "phone")
        return false;
    }
  }
  return true;
}

inline std::vector<DomainStat> ontology_stats(const Ontology& o) {
  std::vector<DomainStat> stats;
  size_t name_pool = o.domain_records("restaurant").size() +
                     o.domain_records("hotel").size() +
                     o.domain_records("attraction").size();
  for (const std::string& domain : known_domains()) {
    DomainStat s;
    s.domain = domain;
    s.entities = o.domain_records(domain).size();
    if (domain == "taxi" && taxi_is_descriptor_only(o)) {
      s.entities = name_pool;
      s.note = "proxy:restaurant+hotel+attraction";
    } else if (s.entities > 0 && s.entities <= 100) {
      s.note = "small-pool:sampling-with-replacement";
    }
    stats.push_back(std::move(s));
  }
  return stats;
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

inline const EntityRecord& sample_entity(const Ontology& ontology,
                                         const std::string& domain, Rng& rng) {
  const auto& recs = ontology.domain_records(domain);
  if (recs.empty())
    throw EmptyDomainError("ontology " + ontology.language +
                           " has no records for domain '" + domain + "'");
  return recs[rng.next_below(recs.size())];
}

// Draw from the union of restaurant/hotel/attraction names; used for taxi
// destination/departure placeholders. Returns the record so provenance can
// point at it.
inline const EntityRecord& sample_place_name(const Ontology& ontology, Rng& rng) {
  static const char* kPlaceDomains[] = {"attraction", "hotel", "restaurant"};
  size_t total = 0;
  for (const char* d : kPlaceDomains) total += ontology.domain_records(d).size();
  if (total == 0)
    throw EmptyDomainError("ontology " + ontology.language +
                           " has no restaurant/hotel/attraction records to draw "
                           "taxi endpoints from");
  size_t pick = rng.next_below(total);
  for (const char* d : kPlaceDomains) {
    const auto& recs = ontology.domain_records(d);
    if (pick < recs.size()) return recs[pick];
    pick -= recs.size();
  }
  return ontology.domain_records("restaurant").back();  // unreachable
}

}  // namespace todg
