// Copyright 2026 The Nedkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nedkit/annotate.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

#include "nedkit/error.hpp"

namespace nedkit {
namespace {

bool is_space_byte(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool leading_punct(char c) {
  return c == '(' || c == '[' || c == '{' || c == '"' || c == '`';
}

bool trailing_punct(char c) {
  return c == '.' || c == ',' || c == ';' || c == ':' || c == '!' || c == '?' ||
         c == ')' || c == ']' || c == '}' || c == '"' || c == '%';
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

const std::unordered_map<std::string, std::string>& irregular_lemmas() {
  static const auto* table = new std::unordered_map<std::string, std::string>{
      {"is", "be"},      {"are", "be"},      {"was", "be"},     {"were", "be"},
      {"am", "be"},      {"been", "be"},     {"being", "be"},   {"has", "have"},
      {"had", "have"},   {"having", "have"}, {"does", "do"},    {"did", "do"},
      {"done", "do"},    {"said", "say"},    {"went", "go"},    {"gone", "go"},
      {"made", "make"},  {"took", "take"},   {"taken", "take"}, {"got", "get"},
      {"gave", "give"},  {"given", "give"},  {"came", "come"},  {"saw", "see"},
      {"seen", "see"},   {"held", "hold"},   {"left", "leave"}, {"found", "find"},
      {"men", "man"},    {"women", "woman"}, {"children", "child"},
      {"people", "people"}, {"feet", "foot"}, {"teeth", "tooth"},
      {"mice", "mouse"}, {"geese", "goose"}, {"lives", "life"}, {"leaves", "leaf"},
      {"worse", "bad"},  {"worst", "bad"},   {"better", "good"}, {"best", "good"},
      {"led", "lead"},   {"won", "win"},     {"lost", "lose"},  {"met", "meet"},
      {"kept", "keep"},  {"ran", "run"},     {"wrote", "write"}, {"written", "write"},
  };
  return *table;
}

const std::unordered_set<std::string>& closed_adjectives() {
  static const auto* table = new std::unordered_set<std::string>{
      "good", "bad",   "big",   "small", "new",  "old",   "high",  "low",
      "many", "few",   "several", "last", "first", "major", "main", "late",
      "early", "long", "short", "own",   "other", "same",  "such",  "next",
      "young", "great", "little", "important", "public", "able",
      "worse", "worst", "better", "best",
  };
  return *table;
}

bool in_list(std::string_view word, std::initializer_list<std::string_view> list) {
  for (std::string_view w : list) {
    if (word == w) return true;
  }
  return false;
}

bool numeric_token(std::string_view s) {
  bool digit = false;
  for (char c : s) {
    if (c >= '0' && c <= '9') digit = true;
    else if (c != ',' && c != '.' && c != '-') return false;
  }
  return digit;
}

struct Tag {
  const char* fine;
  PosCoarse coarse;
};

Tag tag_token(const std::string& surface, bool sentence_initial) {
  if (surface.empty()) return {"XX", PosCoarse::kOther};
  unsigned char first = static_cast<unsigned char>(surface[0]);
  if (std::ispunct(first) && surface.size() == 1 && !std::isalnum(first)) {
    return {".", PosCoarse::kOther};
  }
  if (numeric_token(surface)) return {"CD", PosCoarse::kOther};

  std::string low = lower(surface);
  if (in_list(low, {"the", "a", "an", "this", "that", "these", "those"}))
    return {"DT", PosCoarse::kOther};
  if (in_list(low, {"of", "in", "on", "at", "by", "for", "with", "from", "to",
                    "as", "into", "over", "after", "under", "between", "through",
                    "during", "about", "against", "near"}))
    return {"IN", PosCoarse::kOther};
  if (in_list(low, {"he", "she", "it", "they", "we", "you", "i", "him", "her",
                    "them", "us", "me", "his", "their", "its", "our", "my",
                    "your", "who", "which"}))
    return {"PRP", PosCoarse::kOther};
  if (in_list(low, {"and", "or", "but", "nor", "so", "yet"}))
    return {"CC", PosCoarse::kOther};
  if (in_list(low, {"is", "are", "was", "were", "be", "been", "being", "am",
                    "has", "have", "had", "do", "does", "did", "will", "would",
                    "can", "could", "shall", "should", "may", "might", "must"}))
    return {"VB", PosCoarse::kVerb};
  if (in_list(low, {"not", "also", "very", "too", "then", "there", "here",
                    "when", "where", "how", "why", "now"}))
    return {"RB", PosCoarse::kOther};
  if (closed_adjectives().count(low)) return {"JJ", PosCoarse::kAdjective};

  if (ends_with(low, "ing") && low.size() > 4) return {"VBG", PosCoarse::kVerb};
  if (ends_with(low, "ed") && low.size() > 3) return {"VBD", PosCoarse::kVerb};
  if (ends_with(low, "ly") && low.size() > 3) return {"RB", PosCoarse::kOther};
  for (std::string_view suffix : {"ous", "ful", "ive", "able", "ible", "ical",
                                  "ish", "less"}) {
    if (ends_with(low, suffix)) return {"JJ", PosCoarse::kAdjective};
  }

  // Capitalized tokens beyond the sentence start read as proper nouns.
  if (!sentence_initial && std::isupper(first)) return {"NP", PosCoarse::kNoun};
  if (ends_with(low, "s") && !ends_with(low, "ss") && low.size() > 3)
    return {"NNS", PosCoarse::kNoun};
  return {"NN", PosCoarse::kNoun};
}

}  // namespace

std::string_view pos_coarse_name(PosCoarse pos) {
  switch (pos) {
    case PosCoarse::kNoun: return "NOUN";
    case PosCoarse::kVerb: return "VERB";
    case PosCoarse::kAdjective: return "ADJ";
    case PosCoarse::kOther: return "OTHER";
  }
  return "OTHER";
}

PosCoarse parse_pos_coarse(std::string_view name, const std::string& file,
                           std::size_t line) {
  if (name == "NOUN") return PosCoarse::kNoun;
  if (name == "VERB") return PosCoarse::kVerb;
  if (name == "ADJ") return PosCoarse::kAdjective;
  if (name == "OTHER") return PosCoarse::kOther;
  throw ParseError(file, line, "unknown coarse tag '" + std::string(name) + "'");
}

std::vector<RawToken> tokenize(std::string_view text) {
  std::vector<RawToken> tokens;
  std::size_t i = 0;
  auto push = [&](std::size_t begin, std::size_t end) {
    if (end > begin) {
      tokens.push_back({std::string(text.substr(begin, end - begin)), begin, end});
    }
  };
  while (i < text.size()) {
    if (is_space_byte(text[i])) {
      ++i;
      continue;
    }
    std::size_t begin = i;
    while (i < text.size() && !is_space_byte(text[i])) ++i;
    std::size_t end = i;
    // Peel leading brackets and quotes.
    while (begin < end && leading_punct(text[begin])) {
      push(begin, begin + 1);
      ++begin;
    }
    // Peel trailing punctuation, keeping word-internal characters intact.
    std::size_t word_end = end;
    while (word_end > begin && trailing_punct(text[word_end - 1])) --word_end;
    if (word_end == begin) {
      // Pure punctuation run: one token per byte.
      for (std::size_t p = begin; p < end; ++p) push(p, p + 1);
      continue;
    }
    push(begin, word_end);
    for (std::size_t p = word_end; p < end; ++p) push(p, p + 1);
  }
  return tokens;
}

std::string rule_lemma(std::string_view surface) {
  std::string low = lower(surface);
  auto it = irregular_lemmas().find(low);
  if (it != irregular_lemmas().end()) return it->second;

  std::string out(surface);
  auto undouble = [&out]() {
    std::size_t n = out.size();
    if (n >= 2 && out[n - 1] == out[n - 2]) {
      char c = static_cast<char>(std::tolower(static_cast<unsigned char>(out[n - 1])));
      if (c != 'l' && c != 's' && std::isalpha(static_cast<unsigned char>(c)) &&
          c != 'a' && c != 'e' && c != 'i' && c != 'o' && c != 'u') {
        out.pop_back();
      }
    }
  };

  if (ends_with(low, "ies") && out.size() > 4) {
    out.resize(out.size() - 3);
    out.push_back('y');
  } else if (ends_with(low, "sses") || ends_with(low, "ches") ||
             ends_with(low, "shes") || ends_with(low, "xes") ||
             ends_with(low, "zes")) {
    out.resize(out.size() - 2);
  } else if (ends_with(low, "ing") && out.size() > 5) {
    out.resize(out.size() - 3);
    undouble();
  } else if (ends_with(low, "ed") && out.size() > 4) {
    out.resize(out.size() - 2);
    undouble();
  } else if (ends_with(low, "s") && !ends_with(low, "ss") && !ends_with(low, "us") &&
             !ends_with(low, "is") && out.size() > 3) {
    out.pop_back();
  }
  return out;
}

std::vector<AnnotatedToken> RuleAnnotator::annotate(
    const std::vector<std::string>& surfaces) const {
  std::vector<AnnotatedToken> out;
  out.reserve(surfaces.size());
  bool sentence_initial = true;
  for (const std::string& surface : surfaces) {
    Tag tag = tag_token(surface, sentence_initial);
    AnnotatedToken token;
    token.surface = surface;
    token.lemma = rule_lemma(surface);
    if (token.lemma.empty()) token.lemma = surface;
    token.pos_fine = tag.fine;
    token.pos = tag.coarse;
    out.push_back(std::move(token));
    sentence_initial = surface == "." || surface == "!" || surface == "?";
  }
  return out;
}

std::vector<std::size_t> RuleAnnotator::sentence_starts(
    const std::vector<AnnotatedToken>& tokens) const {
  std::vector<std::size_t> starts;
  if (tokens.empty()) return starts;
  starts.push_back(0);
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    const std::string& s = tokens[i].surface;
    if (s == "." || s == "!" || s == "?") {
      const std::string& next = tokens[i + 1].surface;
      unsigned char first = next.empty() ? ' ' : static_cast<unsigned char>(next[0]);
      if (std::isupper(first) || std::isdigit(first) || first == '"') {
        starts.push_back(i + 1);
      }
    }
  }
  return starts;
}

}  // namespace nedkit
