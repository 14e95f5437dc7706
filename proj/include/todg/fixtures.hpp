#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "todg/corpus.hpp"
#include "todg/ontology.hpp"
#include "todg/rng.hpp"

namespace todg::fixtures {

// ---------------------------------------------------------------------------
// Shared schema for all fixtures
// ---------------------------------------------------------------------------

inline Schema fixture_schema() {
  return {
      {"attraction",
       {"address", "area", "choice", "entrancefee", "name", "phone", "postcode",
        "type"}},
      {"hospital", {"address", "department", "name", "phone", "postcode"}},
      {"hotel",
       {"address", "area", "bookday", "bookpeople", "bookstay", "choice",
        "internet", "name", "parking", "phone", "postcode", "pricerange", "ref",
        "stars", "type"}},
      {"police", {"address", "name", "phone", "postcode"}},
      {"restaurant",
       {"address", "area", "bookday", "bookpeople", "booktime", "choice", "food",
        "name", "phone", "postcode", "pricerange", "ref"}},
      {"taxi",
       {"arriveby", "color", "departure", "destination", "leaveat", "phone",
        "type"}},
      {"train",
       {"arriveby", "bookpeople", "choice", "day", "departure", "destination",
        "duration", "leaveat", "price", "ref", "trainid"}},
  };
}

// ---------------------------------------------------------------------------
// Entity pools (English / Cambridge flavor, mirrored in the en ontology)
// ---------------------------------------------------------------------------

namespace pool {

inline const std::vector<std::string>& attraction_names() {
  static const std::vector<std::string> v = {
      "Whale of a time", "Fitzwilliam Museum", "ADC Theatre",
      "Milton Country Park", "Cambridge Museum of Technology"};
  return v;
}
inline const std::vector<std::string>& hotel_names() {
  static const std::vector<std::string> v = {
      "Gonville Hotel", "Alpha-Milton Guest House", "Lensfield Hotel",
      "Worth House", "Acorn Guest House"};
  return v;
}
inline const std::vector<std::string>& restaurant_names() {
  static const std::vector<std::string> v = {
      "Midsummer House", "Pizza Hut City Centre", "Charlie Chan",
      "La Margherita", "Golden Wok"};
  return v;
}
inline const std::vector<std::string>& areas() {
  static const std::vector<std::string> v = {"centre", "north", "south", "east",
                                             "west"};
  return v;
}
inline const std::vector<std::string>& foods() {
  static const std::vector<std::string> v = {"british", "chinese", "italian",
                                             "indian", "european"};
  return v;
}
inline const std::vector<std::string>& postcodes() {
  static const std::vector<std::string> v = {"cb238el", "cb41xa", "cb21ab",
                                             "cb58sx", "cb12lj"};
  return v;
}
inline const std::vector<std::string>& phones() {
  static const std::vector<std::string> v = {"01223312345", "01223356666",
                                             "01223462354", "01223353888",
                                             "01223903339"};
  return v;
}
inline const std::vector<std::string>& addresses() {
  static const std::vector<std::string> v = {
      "Gonville Place", "Trumpington Street", "Park Terrace", "Regent Street",
      "Mill Road"};
  return v;
}
inline const std::vector<std::string>& hotel_types() {
  static const std::vector<std::string> v = {"guesthouse", "boutique hotel"};
  return v;
}
inline const std::vector<std::string>& attraction_types() {
  static const std::vector<std::string> v = {"museum", "theatre", "park",
                                             "boat ride"};
  return v;
}
inline const std::vector<std::string>& stars() {
  static const std::vector<std::string> v = {"3", "4", "5"};
  return v;
}
inline const std::vector<std::string>& priceranges() {
  static const std::vector<std::string> v = {"cheap", "moderate", "expensive"};
  return v;
}
inline const std::vector<std::string>& entrance_fees() {
  static const std::vector<std::string> v = {"2.50 pounds", "5 pounds",
                                             "free of charge"};
  return v;
}
inline const std::vector<std::string>& train_ids() {
  static const std::vector<std::string> v = {"TR1234", "TR7075", "TR0315",
                                             "TR9702"};
  return v;
}
inline const std::vector<std::string>& stations() {
  static const std::vector<std::string> v = {"cambridge", "london kings cross",
                                             "ely", "norwich"};
  return v;
}
inline const std::vector<std::string>& train_prices() {
  static const std::vector<std::string> v = {"23.60 pounds", "16.50 pounds",
                                             "10.10 pounds"};
  return v;
}
inline const std::vector<std::string>& cab_colors() {
  static const std::vector<std::string> v = {"black", "white", "yellow", "grey"};
  return v;
}
inline const std::vector<std::string>& cab_types() {
  static const std::vector<std::string> v = {"toyota", "skoda", "volkswagen",
                                             "tesla"};
  return v;
}
inline const std::vector<std::string>& departments() {
  static const std::vector<std::string> v = {"cardiology", "neurology",
                                             "paediatrics"};
  return v;
}
inline const std::vector<std::string>& refs() {
  static const std::vector<std::string> v = {"QUL23PLM", "A7GH20XZ", "Y2K9PP0Q"};
  return v;
}

}  // namespace pool

// ---------------------------------------------------------------------------
// Mini corpus
// ---------------------------------------------------------------------------

namespace detail {

class Picker {
 public:
  explicit Picker(uint64_t seed) : rng_(seed) {}

  const std::string& pick(const std::vector<std::string>& pool) {
    return pool[rng_.next_below(pool.size())];
  }

  // Two distinct values from one pool.
  std::pair<std::string, std::string> pick2(const std::vector<std::string>& pool) {
    size_t a = rng_.next_below(pool.size());
    size_t b = rng_.next_below(pool.size());
    while (b == a) b = rng_.next_below(pool.size());
    return {pool[a], pool[b]};
  }

 private:
  Rng rng_;
};

// Accumulates cumulative per-domain belief state across user turns.
class DialogueAssembler {
 public:
  explicit DialogueAssembler(std::string id) { d_.dialogue_id = std::move(id); d_.language = "en"; }

  DialogueAssembler& user(const std::string& utterance) {
    return turn("user", utterance);
  }
  DialogueAssembler& system(const std::string& utterance) {
    return turn("system", utterance);
  }

  DialogueAssembler& act(const std::string& domain, const std::string& act_type,
                         const std::string& slot, const std::string& value) {
    frame(domain).acts.push_back({act_type, slot, value});
    return *this;
  }

  // Adds to the cumulative state of `domain`; the frame snapshot is taken
  // when the turn is sealed.
  DialogueAssembler& slot(const std::string& domain, const std::string& attribute,
                          const std::string& value) {
    state_[domain][domain + "-" + attribute] = value;
    touched_.insert(domain);
    return *this;
  }

  NormalizedDialogue finish() {
    seal();
    return std::move(d_);
  }

 private:
  DialogueAssembler& turn(const std::string& speaker, const std::string& utterance) {
    seal();
    Turn t;
    t.index = static_cast<int>(d_.turns.size());
    t.speaker = speaker;
    t.utterance = utterance;
    d_.turns.push_back(std::move(t));
    return *this;
  }

  Frame& frame(const std::string& domain) {
    Turn& t = d_.turns.back();
    for (Frame& f : t.frames)
      if (f.domain == domain) return f;
    t.frames.push_back({domain, {}, {}});
    touched_.insert(domain);
    return t.frames.back();
  }

  void seal() {
    if (d_.turns.empty()) return;
    Turn& t = d_.turns.back();
    if (t.speaker == "user") {
      // Every user turn carries the full cumulative state of all domains
      // seen so far, mirroring how the source annotations behave.
      for (const auto& [domain, slots] : state_) {
        Frame& f = frame(domain);
        f.state.clear();
        for (const auto& [slot_name, value] : slots)
          f.state.push_back({slot_name, value});
      }
    }
    touched_.clear();
  }

  NormalizedDialogue d_;
  std::map<std::string, std::map<std::string, std::string>> state_;
  std::set<std::string> touched_;
};

}  // namespace detail

// Ten synthetic dialogues over all seven domains: an attraction lookup, a
// two-hotel comparison (multi-entity binding), a restaurant booking with
// choice/ref slots, a train booking, a standalone taxi, a hotel+taxi
// cross-reference, hospital, police, a two-domain attraction+hotel dialogue
// and a restaurant dialogue with a dontcare slot. The seed varies which
// entities appear; structure is fixed.
inline Corpus generate_mini_corpus(uint64_t seed) {
  using detail::DialogueAssembler;
  detail::Picker pick(seed);
  Corpus corpus;
  corpus.schema = fixture_schema();
  corpus.split = "test";

  {  // d01: attraction lookup
    const std::string area = pick.pick(pool::areas());
    const std::string name = pick.pick(pool::attraction_names());
    const std::string post = pick.pick(pool::postcodes());
    const std::string phone = pick.pick(pool::phones());
    DialogueAssembler d("d01");
    d.user("I am looking for an attraction in the " + area + " of town.")
        .slot("attraction", "area", area);
    d.system("I recommend " + name + " and the post code is " + post + ".")
        .act("attraction", "recommend", "name", name)
        .act("attraction", "inform", "postcode", post);
    d.user("Sounds great. What is the phone number?")
        .slot("attraction", "name", name);
    d.system("The phone number is " + phone + ".")
        .act("attraction", "inform", "phone", phone);
    corpus.dialogues.push_back(d.finish());
  }

  {  // d02: two hotels; postcode must bind to the second one
    auto [h1, h2] = pick.pick2(pool::hotel_names());
    const std::string post = pick.pick(pool::postcodes());
    DialogueAssembler d("d02");
    d.user("Does the " + h1 + " have free parking?").slot("hotel", "name", h1);
    d.system("Yes, the " + h1 + " has parking. The " + h2 + " does not.")
        .act("hotel", "inform", "name", h1)
        .act("hotel", "inform", "name", h2)
        .act("hotel", "inform", "parking", "yes");
    d.user("What is the postcode of the " + h2 + "?");
    d.system("The postcode is " + post + ".")
        .act("hotel", "inform", "postcode", post);
    corpus.dialogues.push_back(d.finish());
  }

  {  // d03: restaurant booking; choice and ref stay verbatim
    const std::string food = pick.pick(pool::foods());
    const std::string area = pick.pick(pool::areas());
    const std::string name = pick.pick(pool::restaurant_names());
    const std::string ref = pick.pick(pool::refs());
    DialogueAssembler d("d03");
    d.user("I need a " + food + " restaurant in the " + area + ".")
        .slot("restaurant", "food", food)
        .slot("restaurant", "area", area);
    d.system("There are 3 options. How about " + name + "?")
        .act("restaurant", "inform", "choice", "3")
        .act("restaurant", "recommend", "name", name);
    d.user("Book a table for 2 people at 18:45 on tuesday at " + name + ".")
        .slot("restaurant", "name", name)
        .slot("restaurant", "bookpeople", "2")
        .slot("restaurant", "booktime", "18:45")
        .slot("restaurant", "bookday", "tuesday");
    d.system("Booking was successful. Your reference number is " + ref + ".")
        .act("restaurant", "book", "ref", ref);
    corpus.dialogues.push_back(d.finish());
  }

  {  // d04: train; times stay verbatim, the rest fills from one record
    auto [dep, dest] = pick.pick2(pool::stations());
    const std::string trainid = pick.pick(pool::train_ids());
    const std::string price = pick.pick(pool::train_prices());
    const std::string ref = pick.pick(pool::refs());
    DialogueAssembler d("d04");
    d.user("I need a train from " + dep + " to " + dest + " on monday.")
        .slot("train", "departure", dep)
        .slot("train", "destination", dest)
        .slot("train", "day", "monday");
    d.system(trainid + " leaves at 09:00 and arrives by 09:51. The price is " +
             price + ".")
        .act("train", "inform", "trainid", trainid)
        .act("train", "inform", "leaveat", "09:00")
        .act("train", "inform", "arriveby", "09:51")
        .act("train", "inform", "price", price);
    d.user("That works. Book it for 3 people please.")
        .slot("train", "bookpeople", "3");
    d.system("Done. Your reference is " + ref + ".")
        .act("train", "book", "ref", ref);
    corpus.dialogues.push_back(d.finish());
  }

  {  // d05: standalone taxi; endpoints draw from the place-name union
    const std::string from = pick.pick(pool::attraction_names());
    const std::string to = pick.pick(pool::restaurant_names());
    const std::string color = pick.pick(pool::cab_colors());
    const std::string type = pick.pick(pool::cab_types());
    const std::string phone = pick.pick(pool::phones());
    DialogueAssembler d("d05");
    d.user("I need a taxi from " + from + " to " + to + ".")
        .slot("taxi", "departure", from)
        .slot("taxi", "destination", to);
    d.system("A " + color + " " + type + " will pick you up. The contact number is " +
             phone + ".")
        .act("taxi", "inform", "color", color)
        .act("taxi", "inform", "type", type)
        .act("taxi", "inform", "phone", phone);
    d.user("Thank you, that is all.");
    d.system("You are welcome.");
    corpus.dialogues.push_back(d.finish());
  }

  {  // d06: taxi destination reuses the hotel entity
    const std::string hotel = pick.pick(pool::hotel_names());
    const std::string from = pick.pick(pool::restaurant_names());
    const std::string color = pick.pick(pool::cab_colors());
    const std::string type = pick.pick(pool::cab_types());
    DialogueAssembler d("d06");
    d.user("I am staying at the " + hotel + " tonight.").slot("hotel", "name", hotel);
    d.system("Great choice. Can I help with anything else?");
    d.user("Yes, get me a taxi to the " + hotel + " from " + from + ".")
        .slot("taxi", "destination", hotel)
        .slot("taxi", "departure", from);
    d.system("Your taxi is a " + color + " " + type + ".")
        .act("taxi", "inform", "color", color)
        .act("taxi", "inform", "type", type);
    corpus.dialogues.push_back(d.finish());
  }

  {  // d07: hospital
    const std::string dept = pick.pick(pool::departments());
    const std::string address = pick.pick(pool::addresses());
    const std::string phone = pick.pick(pool::phones());
    const std::string post = pick.pick(pool::postcodes());
    DialogueAssembler d("d07");
    d.user("I hurt my arm. Is there a hospital with a " + dept + " department?")
        .slot("hospital", "department", dept);
    d.system("Addenbrookes Hospital is on " + address + ". The phone is " + phone +
             ".")
        .act("hospital", "inform", "name", "Addenbrookes Hospital")
        .act("hospital", "inform", "address", address)
        .act("hospital", "inform", "phone", phone);
    d.user("What is the postcode?");
    d.system("It is " + post + ".").act("hospital", "inform", "postcode", post);
    corpus.dialogues.push_back(d.finish());
  }

  {  // d08: police
    const std::string address = pick.pick(pool::addresses());
    const std::string post = pick.pick(pool::postcodes());
    const std::string phone = pick.pick(pool::phones());
    DialogueAssembler d("d08");
    d.user("Help, I have been robbed. Where is the nearest police station?");
    d.system("Parkside Police Station is on " + address + ", postcode " + post + ".")
        .act("police", "inform", "name", "Parkside Police Station")
        .act("police", "inform", "address", address)
        .act("police", "inform", "postcode", post);
    d.user("Could I also have the phone number?")
        .slot("police", "name", "Parkside Police Station");
    d.system("Certainly, it is " + phone + ".")
        .act("police", "inform", "phone", phone);
    corpus.dialogues.push_back(d.finish());
  }

  {  // d09: attraction + hotel in one dialogue
    const std::string aname = pick.pick(pool::attraction_names());
    auto [area_a, area_h] = pick.pick2(pool::areas());
    const std::string aaddr = pick.pick(pool::addresses());
    const std::string fee = pick.pick(pool::entrance_fees());
    const std::string htype = pick.pick(pool::hotel_types());
    const std::string hname = pick.pick(pool::hotel_names());
    const std::string star = pick.pick(pool::stars());
    DialogueAssembler d("d09");
    d.user("I want to visit " + aname + " in the " + area_a + ".")
        .slot("attraction", "name", aname)
        .slot("attraction", "area", area_a);
    d.system(aname + " is located on " + aaddr + " and the entrance fee is " + fee +
             ".")
        .act("attraction", "inform", "address", aaddr)
        .act("attraction", "inform", "entrancefee", fee);
    d.user("Also find me a " + htype + " in the " + area_h + " please.")
        .slot("hotel", "type", htype)
        .slot("hotel", "area", area_h);
    d.system(hname + " is a " + htype + " in the " + area_h + " with " + star +
             " stars.")
        .act("hotel", "recommend", "name", hname)
        .act("hotel", "inform", "stars", star);
    corpus.dialogues.push_back(d.finish());
  }

  {  // d10: restaurant with a dontcare slot
    const std::string name = pick.pick(pool::restaurant_names());
    const std::string food = pick.pick(pool::foods());
    const std::string address = pick.pick(pool::addresses());
    const std::string phone = pick.pick(pool::phones());
    DialogueAssembler d("d10");
    d.user("I want an expensive restaurant. The area does not matter.")
        .slot("restaurant", "pricerange", "expensive")
        .slot("restaurant", "area", "dontcare");
    d.system("There are 12 expensive places. " + name + " serves " + food +
             " food.")
        .act("restaurant", "inform", "choice", "12")
        .act("restaurant", "recommend", "name", name)
        .act("restaurant", "inform", "food", food);
    d.user("Give me the address and phone number of " + name + " please.")
        .slot("restaurant", "name", name);
    d.system(name + " is on " + address + " and the number is " + phone + ".")
        .act("restaurant", "inform", "address", address)
        .act("restaurant", "inform", "phone", phone);
    corpus.dialogues.push_back(d.finish());
  }

  validate_corpus(corpus);
  return corpus;
}

// ---------------------------------------------------------------------------
// Fixture ontologies
// ---------------------------------------------------------------------------

namespace detail {

struct LocalePools {
  std::string language;
  std::string locale;
  std::vector<std::string> attractions;
  std::vector<std::string> hotels;
  std::vector<std::string> restaurants;
  std::vector<std::string> streets;
  std::string phone_prefix;
  std::string postcode_prefix;
  std::vector<std::string> foods;
  std::vector<std::string> fees;
  std::vector<std::string> prices;       // train ticket prices
  std::vector<std::string> stations;
  std::string trainid_prefix;
  std::vector<std::string> cab_types;
  std::string hospital;
  std::string police;
};

inline const std::vector<LocalePools>& locale_pools() {
  static const std::vector<LocalePools> pools = {
      {"en",
       "Cambridge",
       pool::attraction_names(),
       pool::hotel_names(),
       pool::restaurant_names(),
       pool::addresses(),
       "01223",
       "cb",
       pool::foods(),
       pool::entrance_fees(),
       pool::train_prices(),
       pool::stations(),
       "TR",
       pool::cab_types(),
       "Addenbrookes Hospital",
       "Parkside Police Station"},
      {"zh",
       "Shanghai",
       {"东方明珠塔", "豫园", "外滩", "上海博物馆", "田子坊"},
       {"汉庭酒店", "和平饭店", "锦江之星", "如家酒店", "上海大厦"},
       {"小杨生煎", "南翔馒头店", "绿波廊", "老正兴", "沈大成"},
       {"世纪大道", "南京东路", "淮海中路", "徐家汇路", "静安寺街"},
       "021",
       "2001",
       {"本帮菜", "粤菜", "川菜", "火锅", "小吃"},
       {"60元", "40元", "免费"},
       {"553元", "293元", "164元"},
       {"上海虹桥", "北京南", "杭州东", "南京南"},
       "G",
       {"大众出租", "强生出租", "锦江出租", "海博出租"},
       "上海市第一人民医院",
       "上海市公安局黄浦分局"},
      {"es",
       "Barcelona",
       {"Sagrada Família", "Park Güell", "Casa Batlló", "La Rambla",
        "Museu Picasso"},
       {"Hotel Arts Barcelona", "Casa Fuster", "Hotel 1898", "Room Mate Anna",
        "Hostal Goya"},
       {"Can Culleretes", "El Xampanyet", "Cal Pep", "La Paradeta",
        "Bar Cañete"},
       {"Passeig de Gràcia", "Carrer de Mallorca", "La Rambla", "Via Laietana",
        "Carrer del Consell de Cent"},
       "93",
       "080",
       {"tapas", "catalana", "mariscos", "paella", "pintxos"},
       {"26 euros", "10 euros", "gratis"},
       {"45 euros", "21 euros", "12 euros"},
       {"Barcelona Sants", "Madrid Atocha", "Girona", "Tarragona"},
       "AVE",
       {"seat", "cupra", "dacia", "renault"},
       "Hospital Clínic de Barcelona",
       "Comisaría de Ciutat Vella"},
      {"id",
       "Jakarta",
       {"Taman Mini Indonesia Indah", "Monumen Nasional", "Kota Tua",
        "Ancol Dreamland", "Museum Nasional"},
       {"Hotel Indonesia Kempinski", "Ayana Midplaza", "Artotel Thamrin",
        "Alila Jakarta", "Gran Mahakam"},
       {"Sate Khas Senayan", "Bakmi GM", "Garuda Padang", "Dapur Babah",
        "Kafe Betawi"},
       {"Jalan Thamrin", "Jalan Sudirman", "Jalan Gatot Subroto",
        "Jalan Kebon Sirih", "Jalan Merdeka Barat"},
       "021",
       "10",
       {"padang", "sunda", "betawi", "jawa", "seafood"},
       {"Rp25000", "Rp10000", "gratis"},
       {"Rp150000", "Rp70000", "Rp45000"},
       {"Gambir", "Bandung", "Yogyakarta", "Surabaya Gubeng"},
       "KA",
       {"bluebird", "express", "avanza", "innova"},
       "RS Cipto Mangunkusumo",
       "Polres Jakarta Pusat"},
  };
  return pools;
}

}  // namespace detail

// Small but complete per-language entity databases: every attribute the mini
// corpus can placeholder is present on the corresponding records.
inline Ontology fixture_ontology(const std::string& language) {
  const detail::LocalePools* pools = nullptr;
  for (const auto& p : detail::locale_pools())
    if (p.language == language) pools = &p;
  if (pools == nullptr)
    throw ConfigError("no fixture ontology for language '" + language + "'");

  Ontology o;
  o.language = pools->language;
  o.locale_name = pools->locale;
  auto idx = [](size_t i, size_t n) { return i % n; };

  for (size_t i = 0; i < pools->attractions.size(); ++i) {
    EntityRecord r;
    r.domain = "attraction";
    r.record_id = "att-" + std::to_string(i);
    r.attributes = {
        {"name", pools->attractions[i]},
        {"type", pool::attraction_types()[idx(i, pool::attraction_types().size())]},
        {"area", pool::areas()[idx(i, pool::areas().size())]},
        {"address",
         pools->streets[idx(i, pools->streets.size())] + " " + std::to_string(10 + i)},
        {"postcode", pools->postcode_prefix + std::to_string(31 + i) + "aa"},
        {"phone", pools->phone_prefix + "55501" + std::to_string(10 + i)},
        {"entrancefee", pools->fees[idx(i, pools->fees.size())]},
    };
    o.records["attraction"].push_back(std::move(r));
  }
  for (size_t i = 0; i < pools->hotels.size(); ++i) {
    EntityRecord r;
    r.domain = "hotel";
    r.record_id = "hot-" + std::to_string(i);
    r.attributes = {
        {"name", pools->hotels[i]},
        {"type", pool::hotel_types()[idx(i, pool::hotel_types().size())]},
        {"stars", pool::stars()[idx(i, pool::stars().size())]},
        {"pricerange", pool::priceranges()[idx(i, pool::priceranges().size())]},
        {"area", pool::areas()[idx(i + 1, pool::areas().size())]},
        {"address",
         pools->streets[idx(i + 1, pools->streets.size())] + " " +
             std::to_string(20 + i)},
        {"postcode", pools->postcode_prefix + std::to_string(41 + i) + "bb"},
        {"phone", pools->phone_prefix + "55502" + std::to_string(10 + i)},
        {"parking", i % 2 == 0 ? "yes" : "no"},
        {"internet", "yes"},
    };
    o.records["hotel"].push_back(std::move(r));
  }
  for (size_t i = 0; i < pools->restaurants.size(); ++i) {
    EntityRecord r;
    r.domain = "restaurant";
    r.record_id = "res-" + std::to_string(i);
    r.attributes = {
        {"name", pools->restaurants[i]},
        {"food", pools->foods[idx(i, pools->foods.size())]},
        {"pricerange", pool::priceranges()[idx(i + 1, pool::priceranges().size())]},
        {"area", pool::areas()[idx(i + 2, pool::areas().size())]},
        {"address",
         pools->streets[idx(i + 2, pools->streets.size())] + " " +
             std::to_string(30 + i)},
        {"postcode", pools->postcode_prefix + std::to_string(51 + i) + "cc"},
        {"phone", pools->phone_prefix + "55503" + std::to_string(10 + i)},
    };
    o.records["restaurant"].push_back(std::move(r));
  }
  for (size_t i = 0; i < pools->stations.size(); ++i) {
    EntityRecord r;
    r.domain = "train";
    r.record_id = "tra-" + std::to_string(i);
    r.attributes = {
        {"trainid", pools->trainid_prefix + std::to_string(7001 + i * 17)},
        {"departure", pools->stations[i]},
        {"destination", pools->stations[(i + 1) % pools->stations.size()]},
        {"price", pools->prices[idx(i, pools->prices.size())]},
        {"duration", std::to_string(39 + 11 * i) + " minutes"},
    };
    o.records["train"].push_back(std::move(r));
  }
  for (size_t i = 0; i < pools->cab_types.size(); ++i) {
    EntityRecord r;
    r.domain = "taxi";
    r.record_id = "tax-" + std::to_string(i);
    r.attributes = {
        {"color", pool::cab_colors()[idx(i, pool::cab_colors().size())]},
        {"type", pools->cab_types[i]},
        {"phone", pools->phone_prefix + "55504" + std::to_string(10 + i)},
    };
    o.records["taxi"].push_back(std::move(r));
  }
  {
    EntityRecord r;
    r.domain = "hospital";
    r.record_id = "hos-0";
    r.attributes = {
        {"name", pools->hospital},
        {"department", pool::departments()[0]},
        {"address", pools->streets[0] + " 1"},
        {"postcode", pools->postcode_prefix + "90dd"},
        {"phone", pools->phone_prefix + "5550999"},
    };
    o.records["hospital"].push_back(std::move(r));
    // a second department so department placeholders can vary
    EntityRecord r2 = o.records["hospital"][0];
    r2.record_id = "hos-1";
    r2.attributes["department"] = pool::departments()[1];
    o.records["hospital"].push_back(std::move(r2));
  }
  {
    EntityRecord r;
    r.domain = "police";
    r.record_id = "pol-0";
    r.attributes = {
        {"name", pools->police},
        {"address", pools->streets[1] + " 2"},
        {"postcode", pools->postcode_prefix + "91ee"},
        {"phone", pools->phone_prefix + "5550112"},
    };
    o.records["police"].push_back(std::move(r));
  }

  validate_ontology(o, fixture_schema());
  return o;
}

// ---------------------------------------------------------------------------
// Entity-count fixtures for the per-domain statistics table
// ---------------------------------------------------------------------------

// Writes a CSV-per-domain ontology directory with the requested record
// counts. Taxi gets descriptor-only records so the stats report its count as
// the restaurant+hotel+attraction proxy.
inline void write_stats_fixture(const std::string& dir, const std::string& language,
                                size_t restaurants, size_t hotels,
                                size_t attractions, size_t trains) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto write_names = [&](const std::string& domain, const std::string& header,
                         const std::string& prefix, size_t count) {
    std::ofstream out(fs::path(dir) / (domain + ".csv"), std::ios::binary);
    out << header << "\n";
    for (size_t i = 0; i < count; ++i) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%04zu", i);
      out << prefix << " " << buf << "\n";
    }
  };
  write_names("restaurant", "name", language + " restaurant", restaurants);
  write_names("hotel", "name", language + " hotel", hotels);
  write_names("attraction", "name", language + " attraction", attractions);
  write_names("train", "trainid", language + " train", trains);
  {
    std::ofstream out(fs::path(dir) / "taxi.csv", std::ios::binary);
    out << "color,type,phone\n";
    for (size_t i = 0; i < 6; ++i)
      out << pool::cab_colors()[i % pool::cab_colors().size()] << ","
          << pool::cab_types()[i % pool::cab_types().size()] << ",555-010" << i
          << "\n";
  }
  write_names("hospital", "name", language + " hospital", 1);
  write_names("police", "name", language + " police station", 1);
}

}  // namespace todg::fixtures
