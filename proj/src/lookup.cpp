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

#include "nedkit/lookup.hpp"

#include <algorithm>
#include <cctype>

#include "nedkit/textnorm.hpp"

namespace nedkit {
namespace {

bool candidate_less(const Candidate& a, const Candidate& b, CountMode mode) {
  int c = compare_ratio(a.score(mode), b.score(mode));
  if (c != 0) return c > 0;
  auto mass = [mode](const Candidate& x) {
    switch (mode) {
      case CountMode::kWikiOnly: return x.evidence.wiki_hits;
      case CountMode::kWebOnly: return x.evidence.web_hits;
      case CountMode::kBoth: break;
    }
    return x.evidence.wiki_hits + x.evidence.web_hits;
  };
  if (mass(a) != mass(b)) return mass(a) > mass(b);
  return a.entity < b.entity;
}

std::string despace(std::string_view url_title) {
  std::string out(url_title);
  for (char& c : out) {
    if (c == '_') c = ' ';
  }
  return out;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

bool equals_ascii_ci(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

constexpr std::string_view kMonths[] = {
    "January", "February", "March", "April", "May", "June", "July",
    "August", "September", "October", "November", "December"};

constexpr std::string_view kAcronymStopwords[] = {"of", "the", "and", "for",
                                                  "in", "at", "on", "de"};

bool is_stopword(std::string_view word) {
  for (std::string_view stop : kAcronymStopwords) {
    if (equals_ascii_ci(word, stop)) return true;
  }
  return false;
}

std::vector<std::string_view> split_words(std::string_view text) {
  std::vector<std::string_view> words;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ' ' || text[i] == '_' || text[i] == '-') {
      if (i > start) words.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  return words;
}

bool single_token(std::string_view text) {
  return text.find(' ') == std::string_view::npos &&
         text.find('_') == std::string_view::npos &&
         text.find('-') == std::string_view::npos;
}

// The short side's uppercase letters must cover the long side's word
// initials (stopwords skipped), compared as a multiset: acronym letter
// order does not always follow English word order.
bool acronym_direction(std::string_view short_side, std::string_view long_side) {
  if (!single_token(short_side)) return false;
  std::string letters;
  for (char c : short_side) {
    if (c >= 'A' && c <= 'Z') letters.push_back(c);
  }
  if (letters.size() < 2) return false;

  std::string initials;
  std::vector<std::string_view> words = split_words(long_side);
  if (words.size() < 2) return false;
  for (std::string_view word : words) {
    if (is_stopword(word)) continue;
    initials.push_back(static_cast<char>(
        std::toupper(static_cast<unsigned char>(word.front()))));
  }
  std::sort(letters.begin(), letters.end());
  std::sort(initials.begin(), initials.end());
  return letters == initials;
}

struct TrailingParen {
  bool present = false;
  std::string stripped;  // despaced title without the parenthetical
};

TrailingParen strip_trailing_parenthetical(std::string_view url_title) {
  std::string text = despace(url_title);
  std::string stripped = title_to_string(url_title);
  TrailingParen out;
  out.present = stripped.size() < text.size();
  out.stripped = std::move(stripped);
  return out;
}

}  // namespace

std::string_view origin_name(Origin origin) {
  switch (origin) {
    case Origin::kExct: return "EXCT";
    case Origin::kLnrm: return "LNRM";
    case Origin::kFuzz: return "FUZZ";
  }
  return "EXCT";
}

std::string_view cascade_mode_name(CascadeMode mode) {
  switch (mode) {
    case CascadeMode::kExct: return "exct";
    case CascadeMode::kLnrm: return "lnrm";
    case CascadeMode::kFuzz: return "fuzz";
    case CascadeMode::kHeur: return "heur";
  }
  return "lnrm";
}

std::optional<CascadeMode> parse_cascade_mode(std::string_view name) {
  if (name == "exct") return CascadeMode::kExct;
  if (name == "lnrm") return CascadeMode::kLnrm;
  if (name == "fuzz") return CascadeMode::kFuzz;
  if (name == "heur") return CascadeMode::kHeur;
  return std::nullopt;
}

LookupIndex::LookupIndex(const Dictionary& dict, CountMode counts)
    : dict_(&dict), counts_(counts) {
  for (const auto& [key, list] : dict.entries()) {
    std::string form = lnrm(key);
    if (form.empty()) continue;
    forms_[std::move(form)].push_back(&key);
  }
  for (const auto& [form, keys] : forms_) {
    by_length_[form.size()].push_back(&form);
  }
}

CandidateList LookupIndex::lookup_exct(std::string_view s) const {
  CandidateList out;
  out.query = std::string(s);
  out.dictionary_id = "EXCT";
  if (const std::vector<DictionaryEntry>* list = dict_->find(s)) {
    out.candidates.reserve(list->size());
    for (const DictionaryEntry& e : *list) {
      out.candidates.push_back({e.entity, e.evidence, e.sources, Origin::kExct});
    }
    std::sort(out.candidates.begin(), out.candidates.end(),
              [this](const Candidate& a, const Candidate& b) {
                return candidate_less(a, b, counts_);
              });
  }
  return out;
}

CandidateList LookupIndex::merge_keys(std::string_view query,
                                      const std::vector<const std::string*>& keys,
                                      Origin origin, std::string_view id) const {
  CandidateList out;
  out.query = std::string(query);
  out.dictionary_id = std::string(id);

  // Per-string totals of every matched key enter the shared denominator;
  // each entity accumulates its hits over the keys that list it.
  long long wiki_total = 0, web_total = 0;
  std::map<std::string_view, Candidate> merged;
  for (const std::string* key : keys) {
    const std::vector<DictionaryEntry>* list = dict_->find(*key);
    if (list == nullptr || list->empty()) continue;
    wiki_total += list->front().evidence.wiki_total;
    web_total += list->front().evidence.web_total;
    for (const DictionaryEntry& e : *list) {
      Candidate& c = merged[e.entity];
      if (c.entity.empty()) {
        c.entity = e.entity;
        c.origin = origin;
      }
      c.evidence.wiki_hits += e.evidence.wiki_hits;
      c.evidence.web_hits += e.evidence.web_hits;
      c.sources |= e.sources;
    }
  }
  out.candidates.reserve(merged.size());
  for (auto& [entity, candidate] : merged) {
    candidate.evidence.wiki_total = wiki_total;
    candidate.evidence.web_total = web_total;
    out.candidates.push_back(std::move(candidate));
  }
  std::sort(out.candidates.begin(), out.candidates.end(),
            [this](const Candidate& a, const Candidate& b) {
              return candidate_less(a, b, counts_);
            });
  return out;
}

CandidateList LookupIndex::lookup_lnrm(std::string_view s) const {
  std::string form = lnrm(s);
  CandidateList out;
  out.query = std::string(s);
  out.dictionary_id = "LNRM";
  if (form.empty()) return out;
  auto it = forms_.find(form);
  if (it == forms_.end()) return out;

  // Same normalized form, except the query string's own key.
  std::vector<const std::string*> keys;
  keys.reserve(it->second.size());
  for (const std::string* key : it->second) {
    if (*key != s) keys.push_back(key);
  }
  return merge_keys(s, keys, Origin::kLnrm, "LNRM");
}

std::vector<std::string> LookupIndex::fuzz_matched_keys(std::string_view s,
                                                        std::size_t max_distance) const {
  std::string form = lnrm(s);
  std::vector<std::string> matched;
  if (form.empty() || by_length_.empty()) return matched;

  // d(a, b) >= |len(a) - len(b)|, so scan length buckets outward and stop
  // once the gap alone exceeds the best distance seen.
  std::size_t best = max_distance == 0 ? SIZE_MAX : max_distance;
  std::vector<const std::string*> best_forms;
  std::size_t max_len = by_length_.rbegin()->first;
  for (std::size_t delta = 0; delta <= max_len + form.size(); ++delta) {
    if (delta > best) break;
    for (long long sign : {-1LL, +1LL}) {
      if (delta == 0 && sign > 0) continue;
      long long len = static_cast<long long>(form.size()) + sign * static_cast<long long>(delta);
      if (len < 0) continue;
      auto bucket = by_length_.find(static_cast<std::size_t>(len));
      if (bucket == by_length_.end()) continue;
      for (const std::string* other : bucket->second) {
        if (*other == form) continue;
        std::size_t d = levenshtein(form, *other);
        if (d == 0 || d > best) continue;
        if (d < best) {
          best = d;
          best_forms.clear();
        }
        best_forms.push_back(other);
      }
    }
  }
  for (const std::string* f : best_forms) {
    for (const std::string* key : forms_.at(*f)) {
      matched.push_back(*key);
    }
  }
  std::sort(matched.begin(), matched.end());
  return matched;
}

CandidateList LookupIndex::lookup_fuzz(std::string_view s, std::size_t max_distance) const {
  CandidateList out;
  out.query = std::string(s);
  out.dictionary_id = "FUZZ";
  std::string form = lnrm(s);
  if (form.empty()) return out;
  std::vector<std::string> matched = fuzz_matched_keys(s, max_distance);
  std::vector<const std::string*> keys;
  keys.reserve(matched.size());
  for (const std::string& key : matched) keys.push_back(&key);
  return merge_keys(s, keys, Origin::kFuzz, "FUZZ");
}

CandidateList LookupIndex::cascade(std::string_view s, CascadeMode mode,
                                   const HeurConfig& config,
                                   const DynamicStage& fallback) const {
  auto finish = [&](CandidateList list) {
    if (list.empty() && fallback != nullptr) list = fallback(s);
    if (list.empty()) list.dictionary_id = "NONE";
    return list;
  };
  CandidateList exct = lookup_exct(s);
  if (!exct.empty() || mode == CascadeMode::kExct) return finish(std::move(exct));
  CandidateList lnrm_list = lookup_lnrm(s);
  if (!lnrm_list.empty() || mode == CascadeMode::kLnrm) {
    return finish(std::move(lnrm_list));
  }
  return finish(lookup_fuzz(s, config.fuzz_max_distance));
}

bool is_date_title(std::string_view url_title) {
  // Bare years, decades, Month_Day pages and BC/AD era years.
  if (all_digits(url_title) && url_title.size() <= 4) return true;
  if (url_title.size() >= 2 && url_title.back() == 's') {
    std::string_view digits = url_title.substr(0, url_title.size() - 1);
    if (all_digits(digits) && digits.size() <= 4 && digits.back() == '0') return true;
  }
  std::size_t underscore = url_title.find('_');
  if (underscore != std::string_view::npos) {
    std::string_view head = url_title.substr(0, underscore);
    std::string_view tail = url_title.substr(underscore + 1);
    if ((tail == "BC" || tail == "AD") && all_digits(head)) return true;
    for (std::string_view month : kMonths) {
      if (head == month && all_digits(tail) && tail.size() <= 2) return true;
    }
  }
  return false;
}

bool is_list_title(std::string_view url_title) {
  return url_title.rfind("List_of_", 0) == 0 || url_title.rfind("Lists_of_", 0) == 0;
}

bool is_disambiguation_title(std::string_view url_title) {
  static constexpr std::string_view kSuffix = "_(disambiguation)";
  return url_title.size() > kSuffix.size() &&
         url_title.substr(url_title.size() - kSuffix.size()) == kSuffix;
}

bool acronym_pair(std::string_view text, std::string_view url_title) {
  std::string title = despace(url_title);
  return acronym_direction(text, title) || acronym_direction(title, text);
}

bool string_in_title(std::string_view text, std::string_view url_title) {
  std::string needle = lnrm(text);
  if (needle.empty()) return false;
  std::string haystack = lnrm(despace(url_title));
  return haystack.find(needle) != std::string::npos;
}

bool very_similar(std::string_view text, std::string_view url_title,
                  const HeurConfig& config) {
  std::string a = lnrm(text);
  std::string b = lnrm(despace(url_title));
  if (a.empty() || b.empty()) return false;
  if (a == b) return true;
  std::size_t d = levenshtein(a, b);
  if (d == 1 && std::min(a.size(), b.size()) > config.similar_short_length) return true;
  std::size_t len = std::max(a.size(), b.size());
  return static_cast<double>(d) <= config.similar_ratio * static_cast<double>(len);
}

CandidateList heur_filter(const CandidateList& list, std::string_view query,
                          const Dictionary& dict, const HeurConfig& config) {
  CandidateList out;
  out.query = list.query;
  out.dictionary_id = list.dictionary_id;

  for (const Candidate& c : list.candidates) {
    // Rules 1-3: never real entities, whatever their score.
    if (dict.entity_kind(c.entity) == PageKind::kDisambiguation ||
        is_disambiguation_title(c.entity)) {
      continue;
    }
    if (is_date_title(c.entity)) continue;
    if (is_list_title(c.entity)) continue;

    // Rule 4: fuzzy suggestions need corroboration.
    if (c.origin == Origin::kFuzz) {
      bool corroborated = acronym_pair(query, c.entity) ||
                          string_in_title(query, c.entity) ||
                          very_similar(query, c.entity, config);
      if (!corroborated) continue;
    }

    // Rule 5: weakly supported pairs, unless the title can stand for the
    // string: an acronym pair, a parenthetical-disambiguated form of it,
    // or the title itself.
    long long string_links = c.evidence.wiki_hits + c.evidence.web_hits;
    Ratio score = c.score();
    bool weak = dict.entity_inlinks(c.entity) <= config.low_support_total_links ||
                string_links <= config.low_support_string_links ||
                score.value() <= config.low_support_score;
    if (weak) {
      TrailingParen paren = strip_trailing_parenthetical(c.entity);
      bool may_disambiguate =
          acronym_pair(query, c.entity) ||
          (paren.present && equals_ascii_ci(paren.stripped, query));
      bool is_title = despace(c.entity) == query;
      if (!may_disambiguate && !is_title) continue;
    }

    out.candidates.push_back(c);
  }
  return out;
}

const Candidate* top1(const CandidateList& list) {
  return list.candidates.empty() ? nullptr : &list.candidates.front();
}

}  // namespace nedkit
