#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "todg/corpus.hpp"
#include "todg/fixtures.hpp"
#include "todg/templater.hpp"

using namespace todg;

namespace {

// The worked single-turn example: a recommendation naming an attraction and
// its postcode.
NormalizedDialogue recommendation_dialogue() {
  NormalizedDialogue d;
  d.dialogue_id = "rec";
  d.language = "en";
  Turn user;
  user.index = 0;
  user.speaker = "user";
  user.utterance = "Can you recommend an attraction?";
  user.frames.push_back({"attraction", {}, {}});
  Turn system;
  system.index = 1;
  system.speaker = "system";
  system.utterance = "I recommend Whale of a time and the post code is cb238el.";
  system.frames.push_back(
      {"attraction",
       {{"recommend", "name", "Whale of a time"},
        {"inform", "postcode", "cb238el"}},
       {}});
  d.turns = {user, system};
  return d;
}

const PlaceholderEntry* find_entry(const DialogueTemplate& tpl,
                                   const std::string& token) {
  for (const PlaceholderEntry& e : tpl.table)
    if (e.token() == token) return &e;
  return nullptr;
}

}  // namespace

TEST_CASE("recommendation sentence extracts name and postcode placeholders") {
  DialogueTemplate tpl = extract_template(recommendation_dialogue());
  CHECK(tpl.base.turns[1].utterance ==
        "I recommend [attraction-name0] and the post code is "
        "[attraction-postcode0].");
  REQUIRE(tpl.table.size() == 2);
  const PlaceholderEntry* name = find_entry(tpl, "[attraction-name0]");
  const PlaceholderEntry* postcode = find_entry(tpl, "[attraction-postcode0]");
  REQUIRE(name != nullptr);
  REQUIRE(postcode != nullptr);
  CHECK(name->original_value == "Whale of a time");
  CHECK(postcode->original_value == "cb238el");
  // both attributes belong to the same entity
  CHECK(name->entity_key == postcode->entity_key);
  // acts were rewritten alongside the text
  CHECK(tpl.base.turns[1].frames[0].acts[0].value == "[attraction-name0]");
  CHECK(tpl.base.turns[1].frames[0].acts[1].value == "[attraction-postcode0]");
  // and the template round-trips to the original sentence
  CHECK(fill_identity(tpl) == recommendation_dialogue());
}

TEST_CASE("choice and ref annotations are never placeholdered") {
  NormalizedDialogue d;
  d.dialogue_id = "ref-only";
  d.language = "en";
  Turn user;
  user.index = 0;
  user.speaker = "user";
  user.utterance = "Book it please.";
  user.frames.push_back({"restaurant", {}, {}});
  Turn system;
  system.index = 1;
  system.speaker = "system";
  system.utterance = "Done, your reference is ABC123.";
  system.frames.push_back({"restaurant", {{"book", "ref", "ABC123"}}, {}});
  d.turns = {user, system};

  DialogueTemplate tpl = extract_template(d);
  CHECK(tpl.table.empty());
  CHECK(tpl.base == d);
}

TEST_CASE("dialogue without annotations is its own template") {
  NormalizedDialogue d;
  d.dialogue_id = "plain";
  d.language = "en";
  Turn user;
  user.index = 0;
  user.speaker = "user";
  user.utterance = "Hello there.";
  Turn system;
  system.index = 1;
  system.speaker = "system";
  system.utterance = "Hi, how can I help?";
  d.turns = {user, system};
  DialogueTemplate tpl = extract_template(d);
  CHECK(tpl.table.empty());
  CHECK(tpl.base == d);
  CHECK(fill_identity(tpl) == d);
}

TEST_CASE("round trip holds for the mini corpus and randomized variants") {
  for (uint64_t seed = 0; seed < 8; ++seed) {
    Corpus corpus = fixtures::generate_mini_corpus(seed);
    for (const NormalizedDialogue& d : corpus.dialogues) {
      Warnings warnings;
      DialogueTemplate tpl = extract_template(d, nullptr, &warnings);
      CHECK(fill_identity(tpl) == d);
    }
  }
}

TEST_CASE("dangling placeholder without table entry is rejected") {
  DialogueTemplate tpl = extract_template(recommendation_dialogue());
  tpl.table.erase(tpl.table.begin());  // drop one entry, token stays in text
  CHECK_THROWS_AS(fill_identity(tpl), DanglingPlaceholder);
}

TEST_CASE("empty-table template fills to its own base") {
  DialogueTemplate tpl;
  tpl.base = recommendation_dialogue();
  tpl.base.turns[1].utterance = "I recommend nothing.";
  tpl.base.turns[1].frames[0].acts.clear();
  CHECK(fill_identity(tpl) == tpl.base);
}

TEST_CASE("longest value wins over its own substring") {
  NormalizedDialogue d;
  d.dialogue_id = "longest";
  d.language = "en";
  Turn user;
  user.index = 0;
  user.speaker = "user";
  user.utterance = "Is the Gonville Hotel in the centre?";
  user.frames.push_back({"hotel",
                         {},
                         {{"hotel-name", "Gonville Hotel"},
                          {"hotel-area", "centre"}}});
  Turn system;
  system.index = 1;
  system.speaker = "system";
  system.utterance = "Gonville is indeed in the centre.";
  system.frames.push_back({"hotel", {{"inform", "name", "Gonville"}}, {}});
  d.turns = {user, system};

  DialogueTemplate tpl = extract_template(d);
  // "Gonville Hotel" must be consumed as a whole, not captured by "Gonville"
  CHECK(tpl.base.turns[0].utterance.find("[hotel-name0]") != std::string::npos);
  CHECK(tpl.base.turns[0].utterance.find("Gonville") == std::string::npos);
  CHECK(tpl.base.turns[1].utterance.find("[hotel-name1]") != std::string::npos);
  CHECK(fill_identity(tpl) == d);
}

TEST_CASE("matching is case-insensitive with word boundaries") {
  NormalizedDialogue d;
  d.dialogue_id = "case";
  d.language = "en";
  Turn user;
  user.index = 0;
  user.speaker = "user";
  user.utterance = "I'd like thai food, something thailandish.";
  user.frames.push_back({"restaurant", {}, {{"restaurant-food", "Thai"}}});
  Turn system;
  system.index = 1;
  system.speaker = "system";
  system.utterance = "Sure.";
  d.turns = {user, system};

  Warnings warnings;
  DialogueTemplate tpl = extract_template(d, nullptr, &warnings);
  // "thai" replaced despite the case difference; "thailandish" untouched
  CHECK(tpl.base.turns[0].utterance ==
        "I'd like [restaurant-food0] food, something thailandish.");
  bool case_warning = false;
  for (const Warning& w : warnings) case_warning |= w.kind == "CaseMismatch";
  CHECK(case_warning);
}

TEST_CASE("annotated value absent from text still placeholders the annotation") {
  NormalizedDialogue d;
  d.dialogue_id = "absent";
  d.language = "en";
  Turn user;
  user.index = 0;
  user.speaker = "user";
  user.utterance = "Somewhere cheap please.";
  user.frames.push_back({"restaurant",
                         {},
                         {{"restaurant-pricerange", "cheap"},
                          {"restaurant-name", "Golden Wok"}}});
  Turn system;
  system.index = 1;
  system.speaker = "system";
  system.utterance = "Noted.";
  d.turns = {user, system};

  Warnings warnings;
  DialogueTemplate tpl = extract_template(d, nullptr, &warnings);
  bool found = false;
  for (const Warning& w : warnings) found |= w.kind == "ValueNotFound";
  CHECK(found);
  // the state is rewritten even though the text never mentioned the name
  bool state_has_token = false;
  for (const SlotValue& sv : tpl.base.turns[0].frames[0].state)
    state_has_token |= sv.value == "[restaurant-name0]";
  CHECK(state_has_token);
}

TEST_CASE("repeated value in one utterance warns and replaces leftmost") {
  NormalizedDialogue d;
  d.dialogue_id = "twice";
  d.language = "en";
  Turn user;
  user.index = 0;
  user.speaker = "user";
  user.utterance = "centre, yes the centre of town.";
  user.frames.push_back({"attraction", {}, {{"attraction-area", "centre"}}});
  Turn system;
  system.index = 1;
  system.speaker = "system";
  system.utterance = "Understood.";
  d.turns = {user, system};

  Warnings warnings;
  DialogueTemplate tpl = extract_template(d, nullptr, &warnings);
  CHECK(tpl.base.turns[0].utterance ==
        "[attraction-area0], yes the centre of town.");
  bool ambiguous = false;
  for (const Warning& w : warnings) ambiguous |= w.kind == "AmbiguousMatch";
  CHECK(ambiguous);
}

TEST_CASE("placeholder grammar matches all and only placeholder tokens") {
  CHECK(parse_placeholder("[hotel-name0]").has_value());
  CHECK(parse_placeholder("[train-trainid12]").has_value());
  CHECK(parse_placeholder("[a-b_c3]").has_value());
  CHECK_FALSE(parse_placeholder("[hotel-name]").has_value());   // no ordinal
  CHECK_FALSE(parse_placeholder("[hotelname0]").has_value());   // no dash
  CHECK_FALSE(parse_placeholder("[Hotel-name0]").has_value());  // uppercase
  CHECK_FALSE(parse_placeholder("hotel-name0").has_value());    // no brackets
  CHECK_FALSE(parse_placeholder("[hotel-name0] ").has_value()); // trailing junk

  Placeholder p = *parse_placeholder("[attraction-postcode1]");
  CHECK(p.domain == "attraction");
  CHECK(p.attribute == "postcode");
  CHECK(p.ordinal == 1);
  CHECK(p.token() == "[attraction-postcode1]");
}

TEST_CASE("ordinals per (domain, attribute) are contiguous from zero") {
  for (uint64_t seed = 0; seed < 8; ++seed) {
    Corpus corpus = fixtures::generate_mini_corpus(seed);
    for (const NormalizedDialogue& d : corpus.dialogues) {
      DialogueTemplate tpl = extract_template(d);
      std::map<std::pair<std::string, std::string>, std::set<int>> ordinals;
      for (const PlaceholderEntry& e : tpl.table)
        ordinals[{e.placeholder.domain, e.placeholder.attribute}].insert(
            e.placeholder.ordinal);
      for (const auto& [key, seen] : ordinals) {
        CHECK(*seen.begin() == 0);
        CHECK(*seen.rbegin() == static_cast<int>(seen.size()) - 1);
      }
    }
  }
}

TEST_CASE("choice and ref never enter a placeholder table") {
  for (uint64_t seed = 0; seed < 8; ++seed) {
    Corpus corpus = fixtures::generate_mini_corpus(seed);
    for (const NormalizedDialogue& d : corpus.dialogues) {
      DialogueTemplate tpl = extract_template(d);
      for (const PlaceholderEntry& e : tpl.table) {
        CHECK(e.placeholder.attribute != "choice");
        CHECK(e.placeholder.attribute != "ref");
      }
    }
  }
}

TEST_CASE("second hotel's postcode binds to the second hotel") {
  Corpus corpus = fixtures::generate_mini_corpus(0);
  const NormalizedDialogue* two_hotels = nullptr;
  for (const NormalizedDialogue& d : corpus.dialogues)
    if (d.dialogue_id == "d02") two_hotels = &d;
  REQUIRE(two_hotels != nullptr);

  DialogueTemplate tpl = extract_template(*two_hotels);
  const PlaceholderEntry* name1 = find_entry(tpl, "[hotel-name1]");
  const PlaceholderEntry* postcode = find_entry(tpl, "[hotel-postcode0]");
  REQUIRE(name1 != nullptr);
  REQUIRE(postcode != nullptr);
  CHECK(postcode->entity_key == name1->entity_key);
  const PlaceholderEntry* name0 = find_entry(tpl, "[hotel-name0]");
  REQUIRE(name0 != nullptr);
  CHECK(name0->entity_key != name1->entity_key);
}

TEST_CASE("taxi destination equal to a hotel name reuses the hotel placeholder") {
  Corpus corpus = fixtures::generate_mini_corpus(0);
  const NormalizedDialogue* cross = nullptr;
  for (const NormalizedDialogue& d : corpus.dialogues)
    if (d.dialogue_id == "d06") cross = &d;
  REQUIRE(cross != nullptr);

  DialogueTemplate tpl = extract_template(*cross);
  // the taxi-destination state slot carries the hotel token
  bool destination_is_hotel_token = false;
  for (const Turn& t : tpl.base.turns)
    for (const Frame& f : t.frames)
      for (const SlotValue& sv : f.state)
        if (sv.slot == "taxi-destination")
          destination_is_hotel_token |= sv.value == "[hotel-name0]";
  CHECK(destination_is_hotel_token);
  // taxi color/type share one cab entity distinct from the endpoints
  const PlaceholderEntry* color = find_entry(tpl, "[taxi-color0]");
  const PlaceholderEntry* type = find_entry(tpl, "[taxi-type0]");
  REQUIRE(color != nullptr);
  REQUIRE(type != nullptr);
  CHECK(color->entity_key == type->entity_key);
  const PlaceholderEntry* departure = find_entry(tpl, "[taxi-departure0]");
  REQUIRE(departure != nullptr);
  CHECK(departure->entity_key != color->entity_key);
}

TEST_CASE("source ontology groups attributes by record co-occurrence") {
  Ontology ontology = fixtures::fixture_ontology("en");
  // A dialogue mentioning two hotels where the first hotel's postcode
  // appears after the second hotel's name. Recency alone would bind it to
  // the second hotel; record co-occurrence corrects that.
  const EntityRecord& h0 = ontology.records.at("hotel")[0];
  const EntityRecord& h1 = ontology.records.at("hotel")[1];
  NormalizedDialogue d;
  d.dialogue_id = "cooccur";
  d.language = "en";
  Turn user;
  user.index = 0;
  user.speaker = "user";
  user.utterance = "Compare " + h0.attributes.at("name") + " and " +
                   h1.attributes.at("name") + " please.";
  user.frames.push_back({"hotel", {}, {{"hotel-name", h0.attributes.at("name")}}});
  Turn system;
  system.index = 1;
  system.speaker = "system";
  system.utterance = "The first one's postcode is " + h0.attributes.at("postcode") +
                     ".";
  system.frames.push_back(
      {"hotel",
       {{"inform", "name", h1.attributes.at("name")},
        {"inform", "postcode", h0.attributes.at("postcode")}},
       {}});
  d.turns = {user, system};

  DialogueTemplate with_ontology = extract_template(d, &ontology);
  const PlaceholderEntry* name0 = find_entry(with_ontology, "[hotel-name0]");
  const PlaceholderEntry* postcode = find_entry(with_ontology, "[hotel-postcode0]");
  REQUIRE(name0 != nullptr);
  REQUIRE(postcode != nullptr);
  CHECK(postcode->entity_key == name0->entity_key);

  DialogueTemplate without = extract_template(d);
  const PlaceholderEntry* name1 = find_entry(without, "[hotel-name1]");
  const PlaceholderEntry* postcode_r = find_entry(without, "[hotel-postcode0]");
  REQUIRE(name1 != nullptr);
  REQUIRE(postcode_r != nullptr);
  CHECK(postcode_r->entity_key == name1->entity_key);
}

TEST_CASE("template set json round-trips") {
  Corpus corpus = fixtures::generate_mini_corpus(2);
  TemplateSet set = extract_templates(corpus);
  json j = template_set_to_json(set);
  TemplateSet back = template_set_from_json(j);
  REQUIRE(back.templates.size() == set.templates.size());
  for (size_t i = 0; i < set.templates.size(); ++i) {
    CHECK(back.templates[i].base == set.templates[i].base);
    CHECK(back.templates[i].table == set.templates[i].table);
    CHECK(back.templates[i].bindings == set.templates[i].bindings);
  }
}

TEST_CASE("entity keys in one table never mix domains") {
  for (uint64_t seed = 0; seed < 8; ++seed) {
    Corpus corpus = fixtures::generate_mini_corpus(seed);
    for (const NormalizedDialogue& d : corpus.dialogues) {
      DialogueTemplate tpl = extract_template(d);
      validate_template(tpl);  // includes the same-domain-per-key invariant
      for (const PlaceholderEntry& e : tpl.table)
        CHECK(tpl.bindings.at(e.entity_key) == e.placeholder.domain);
    }
  }
}
