// src/corpus/synthetic.cc
//
// Copyright 2026  The rslu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "rslu/corpus/synthetic.h"

#include <json.hpp>

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <string_view>
#include <unordered_set>

#include "rslu/common/errors.h"
#include "rslu/common/random.h"

namespace rslu {

namespace {

using nlohmann::json;

constexpr int kFillersPerSlot = 20;

struct SlotBank {
  std::string_view name;
  std::vector<std::string_view> values;
};

// Every slot has exactly kFillersPerSlot values.
const std::vector<SlotBank>& Slots() {
  static const std::vector<SlotBank> kSlots = {
      {"polite",
       {"please", "could you", "can you", "would you", "kindly", "hey", "okay", "now",
        "quickly", "i want you to", "go ahead and", "just", "i'd like you to",
        "can you please", "could you please", "would you please", "hey there",
        "right away", "if you can", "i need you to"}},
      {"room",
       {"kitchen", "bedroom", "living room", "bathroom", "office", "garage", "hallway",
        "basement", "attic", "dining room", "patio", "nursery", "study", "porch", "cellar",
        "lounge", "den", "loft", "pantry", "closet"}},
      {"time",
       {"at seven", "at eight", "tomorrow morning", "tonight", "at noon", "in ten minutes",
        "at six thirty", "on monday", "on tuesday", "this evening", "at midnight",
        "in an hour", "at nine", "on friday", "at five", "later today", "on sunday",
        "at ten", "at four", "right now"}},
      {"level",
       {"a little", "a lot", "to ten", "to fifty percent", "slightly", "all the way",
        "to level three", "by two", "to the max", "halfway", "a bit", "by five",
        "to twenty", "a notch", "to eighty percent", "by ten percent", "gently", "fully",
        "to level seven", "one step"}},
      {"genre",
       {"jazz", "rock", "classical", "pop", "blues", "country", "reggae", "techno", "folk",
        "metal", "soul", "disco", "hip hop", "opera", "gospel", "punk", "salsa", "ambient",
        "funk", "swing"}},
      {"city",
       {"london", "paris", "boston", "chicago", "tokyo", "berlin", "madrid", "seattle",
        "denver", "dallas", "miami", "toronto", "sydney", "dublin", "rome", "vienna", "oslo",
        "lisbon", "austin", "phoenix"}},
      {"person",
       {"mom", "dad", "alice", "bob", "john", "mary", "sarah", "david", "emma", "james",
        "lucy", "peter", "anna", "mark", "kate", "tom", "jane", "paul", "chris", "nina"}},
      {"duration",
       {"five minutes", "ten minutes", "one minute", "two hours", "half an hour",
        "twenty minutes", "three minutes", "an hour", "forty seconds", "fifteen minutes",
        "ninety seconds", "seven minutes", "eight minutes", "twelve minutes", "four hours",
        "six minutes", "thirty seconds", "nine minutes", "two minutes", "a quarter hour"}},
      {"topic",
       {"sports", "business", "science", "politics", "health", "travel", "technology",
        "weather", "local", "world", "finance", "music", "movie", "fashion", "food",
        "education", "art", "gaming", "economy", "culture"}},
  };
  return kSlots;
}

struct IntentTemplates {
  std::string_view intent;
  std::vector<std::string_view> templates;
};

// Confusable intents share most of their wording so a single corrupted
// keyword can flip the label.
const std::vector<IntentTemplates>& Bank() {
  static const std::vector<IntentTemplates> kBank = {
      {"volume_up",
       {"{polite} turn up the volume in the {room}",
        "{polite} make the music louder {time}",
        "increase the volume {level} in the {room}",
        "{polite} raise the sound {level}"}},
      {"volume_down",
       {"{polite} turn down the volume in the {room}",
        "{polite} make the music quieter {time}",
        "decrease the volume {level} in the {room}",
        "{polite} lower the sound {level}"}},
      {"alarm_set",
       {"{polite} set an alarm {time}",
        "wake me up {time} in the {room}",
        "{polite} create an alarm for {person} {time}",
        "i need an alarm {time} in the {room}"}},
      {"alarm_remove",
       {"{polite} delete the alarm {time}",
        "cancel my alarm {time} in the {room}",
        "{polite} remove the alarm for {person} {time}",
        "i don't need the alarm {time} in the {room}"}},
      {"lights_on",
       {"{polite} turn on the lights in the {room}",
        "switch the lamp on in the {room} {time}",
        "{polite} brighten the {room} {level}",
        "lights on in the {room} for {person}"}},
      {"lights_off",
       {"{polite} turn off the lights in the {room}",
        "switch the lamp off in the {room} {time}",
        "{polite} dim the {room} {level}",
        "lights off in the {room} for {person}"}},
      {"weather_query",
       {"{polite} tell me the weather in {city} {time}",
        "will it rain in {city} {time}",
        "what's the forecast for {city} {time}",
        "how cold is it in {city} {time}"}},
      {"play_music",
       {"{polite} play some {genre} in the {room}",
        "put on {genre} music {time}",
        "i want to hear {genre} for {person}",
        "{polite} start a {genre} playlist {time}"}},
      {"call_person",
       {"{polite} call {person} {time}",
        "phone {person} in {city}",
        "{polite} dial {person} from the {room}",
        "ring {person} {time} about {topic}"}},
      {"send_message",
       {"{polite} send a message to {person} {time}",
        "tell {person} i'll be in {city} {time}",
        "{polite} text {person} about {topic}",
        "message {person} from the {room} {time}"}},
      {"timer_set",
       {"{polite} set a timer for {duration}",
        "start a countdown of {duration} {time}",
        "{polite} time {duration} for the {room}",
        "remind me in {duration} about {topic}"}},
      {"news_query",
       {"{polite} read me the news from {city}",
        "what's new in {city} {time}",
        "{polite} give me the {topic} headlines",
        "any {topic} news {time} from {city}"}},
  };
  return kBank;
}

struct ParsedTemplate {
  std::vector<std::string> literals;  // literals.size() == slots.size() + 1
  std::vector<const SlotBank*> slots;
};

ParsedTemplate ParseTemplate(std::string_view t) {
  ParsedTemplate out;
  std::string literal;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] != '{') {
      literal.push_back(t[i]);
      continue;
    }
    const std::size_t close = t.find('}', i);
    const std::string_view name = t.substr(i + 1, close - i - 1);
    const SlotBank* slot = nullptr;
    for (const SlotBank& s : Slots()) {
      if (s.name == name) slot = &s;
    }
    if (!slot) throw Error("template slot '" + std::string(name) + "' has no filler bank");
    out.literals.push_back(std::move(literal));
    literal.clear();
    out.slots.push_back(slot);
    i = close;
  }
  out.literals.push_back(std::move(literal));
  return out;
}

std::uint64_t TemplateCapacity(const ParsedTemplate& t, int fillers) {
  std::uint64_t c = 1;
  for (std::size_t i = 0; i < t.slots.size(); ++i) c *= static_cast<std::uint64_t>(fillers);
  return c;
}

std::string Render(const ParsedTemplate& t, std::uint64_t index, int fillers) {
  std::string out = t.literals[0];
  for (std::size_t s = 0; s < t.slots.size(); ++s) {
    const std::uint64_t choice = index % static_cast<std::uint64_t>(fillers);
    index /= static_cast<std::uint64_t>(fillers);
    out += t.slots[s]->values[choice];
    out += t.literals[s + 1];
  }
  return out;
}

// Floyd's algorithm: `count` distinct values from [0, n), then shuffled.
std::vector<std::uint64_t> SampleDistinct(std::uint64_t n, std::uint64_t count, Rng& rng) {
  std::vector<std::uint64_t> picked;
  std::unordered_set<std::uint64_t> seen;
  for (std::uint64_t j = n - count; j < n; ++j) {
    std::uint64_t t = UniformIndex(rng, j + 1);
    if (seen.count(t)) t = j;
    seen.insert(t);
    picked.push_back(t);
  }
  Shuffle(picked, rng);
  return picked;
}

int GetInt(const json& obj, const char* name, int fallback) {
  auto it = obj.find(name);
  if (it == obj.end()) return fallback;
  if (!it->is_number_integer()) {
    throw ConfigError(std::string("field \"") + name + "\" must be an integer");
  }
  const auto v = it->get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw ConfigError(std::string("field \"") + name + "\" is out of range");
  }
  return static_cast<int>(v);
}

}  // namespace

int MaxSyntheticIntents() { return static_cast<int>(Bank().size()); }
int MaxTemplatesPerIntent() { return 4; }
int MaxFillers() { return kFillersPerSlot; }

SyntheticSpec SyntheticSpec::FromJson(const std::string& text) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("synthetic spec is not valid JSON: ") + e.what());
  }
  if (!obj.is_object()) throw ConfigError("synthetic spec must be a JSON object");
  static const std::set<std::string> kKnown = {"n_intents", "templates_per_intent", "fillers",
                                               "n_train",   "n_valid",              "n_test",
                                               "seed"};
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!kKnown.count(it.key())) throw ConfigError("unknown field \"" + it.key() + "\"");
  }
  SyntheticSpec s;
  s.n_intents = GetInt(obj, "n_intents", s.n_intents);
  s.templates_per_intent = GetInt(obj, "templates_per_intent", s.templates_per_intent);
  s.fillers = GetInt(obj, "fillers", s.fillers);
  s.n_train = GetInt(obj, "n_train", s.n_train);
  s.n_valid = GetInt(obj, "n_valid", s.n_valid);
  s.n_test = GetInt(obj, "n_test", s.n_test);
  if (auto it = obj.find("seed"); it != obj.end()) {
    if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<std::int64_t>() >= 0)) {
      throw ConfigError("field \"seed\" must be a non-negative integer");
    }
    s.seed = it->get<std::uint64_t>();
  }
  return s;
}

std::string SyntheticSpec::ToJson() const {
  json obj = {{"n_intents", n_intents}, {"templates_per_intent", templates_per_intent},
              {"fillers", fillers},     {"n_train", n_train},
              {"n_valid", n_valid},     {"n_test", n_test},
              {"seed", seed}};
  return obj.dump(2);
}

std::uint64_t IntentCapacity(const SyntheticSpec& spec, int k) {
  std::uint64_t total = 0;
  const auto& bank = Bank().at(static_cast<std::size_t>(k));
  for (int t = 0; t < spec.templates_per_intent; ++t) {
    total += TemplateCapacity(ParseTemplate(bank.templates[t]), spec.fillers);
  }
  return total;
}

std::vector<TranscriptPair> GenerateSyntheticCorpus(const SyntheticSpec& spec) {
  if (spec.n_intents < 2 || spec.n_intents > MaxSyntheticIntents()) {
    throw ConfigError("field \"n_intents\" must be in [2, " +
                      std::to_string(MaxSyntheticIntents()) + "]");
  }
  if (spec.templates_per_intent < 1 || spec.templates_per_intent > MaxTemplatesPerIntent()) {
    throw ConfigError("field \"templates_per_intent\" must be in [1, " +
                      std::to_string(MaxTemplatesPerIntent()) + "]");
  }
  if (spec.fillers < 1 || spec.fillers > MaxFillers()) {
    throw ConfigError("field \"fillers\" must be in [1, " + std::to_string(MaxFillers()) + "]");
  }
  if (spec.n_train < 0) throw ConfigError("field \"n_train\" must be non-negative");
  if (spec.n_valid < 0) throw ConfigError("field \"n_valid\" must be non-negative");
  if (spec.n_test < 0) throw ConfigError("field \"n_test\" must be non-negative");

  const int k_intents = spec.n_intents;
  Rng rng(MixSeeds(spec.seed, 0x5e17ULL));

  // Balanced per-split quotas; remainders go to a seeded choice of intents.
  const std::vector<std::pair<Split, int>> splits = {
      {Split::kTrain, spec.n_train}, {Split::kValid, spec.n_valid}, {Split::kTest, spec.n_test}};
  std::vector<std::vector<int>> quota(3, std::vector<int>(k_intents, 0));
  for (std::size_t s = 0; s < splits.size(); ++s) {
    const int n = splits[s].second;
    std::vector<int> order(k_intents);
    for (int k = 0; k < k_intents; ++k) order[k] = k;
    Shuffle(order, rng);
    for (int k = 0; k < k_intents; ++k) quota[s][k] = n / k_intents;
    for (int r = 0; r < n % k_intents; ++r) ++quota[s][order[r]];
  }

  std::vector<std::vector<TranscriptPair>> by_split(3);
  std::set<std::string> texts;
  for (int k = 0; k < k_intents; ++k) {
    const auto& entry = Bank()[k];
    std::vector<ParsedTemplate> templates;
    std::vector<std::uint64_t> caps;
    for (int t = 0; t < spec.templates_per_intent; ++t) {
      templates.push_back(ParseTemplate(entry.templates[t]));
      caps.push_back(TemplateCapacity(templates.back(), spec.fillers));
    }
    std::uint64_t capacity = 0;
    for (std::uint64_t c : caps) capacity += c;
    const std::uint64_t need =
        static_cast<std::uint64_t>(quota[0][k]) + quota[1][k] + quota[2][k];
    if (need > capacity) {
      throw CapacityError("intent '" + std::string(entry.intent) + "' needs " +
                          std::to_string(need) + " unique utterances but its templates and " +
                          "fillers only produce " + std::to_string(capacity));
    }
    const std::vector<std::uint64_t> picks = SampleDistinct(capacity, need, rng);
    std::size_t next = 0;
    for (std::size_t s = 0; s < splits.size(); ++s) {
      for (int i = 0; i < quota[s][k]; ++i) {
        std::uint64_t idx = picks[next++];
        std::size_t t = 0;
        while (idx >= caps[t]) idx -= caps[t++];
        TranscriptPair p;
        p.clean = Render(templates[t], idx, spec.fillers);
        p.intent = std::string(entry.intent);
        p.split = splits[s].first;
        if (!texts.insert(p.clean).second) {
          throw Error("synthetic bank produced a duplicate utterance: " + p.clean);
        }
        by_split[s].push_back(std::move(p));
      }
    }
  }

  std::vector<TranscriptPair> corpus;
  for (std::size_t s = 0; s < splits.size(); ++s) {
    Shuffle(by_split[s], rng);
    const std::string prefix(SplitName(splits[s].first));
    for (std::size_t i = 0; i < by_split[s].size(); ++i) {
      char id[32];
      std::snprintf(id, sizeof(id), "%s-%05zu", prefix.c_str(), i);
      by_split[s][i].id = id;
      corpus.push_back(std::move(by_split[s][i]));
    }
  }
  return corpus;
}

}  // namespace rslu
