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
//
// String-to-entity dictionary harvested from titles, redirects,
// disambiguation fanouts and link anchors, with frequency scores.

#ifndef NEDKIT_DICTIONARY_HPP_
#define NEDKIT_DICTIONARY_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nedkit/titles.hpp"

namespace nedkit {

// Anchor-count evidence for one (string, entity) pair. The totals are
// per-string: shared by every entry under the same string.
struct LinkEvidence {
  long long wiki_hits = 0;   // x: encyclopedia links with this string to this entity
  long long wiki_total = 0;  // y: all encyclopedia links with this string
  long long web_hits = 0;    // u
  long long web_total = 0;   // v
};

// Exact fraction; den == 0 means no evidence and compares as zero.
struct Ratio {
  long long num = 0;
  long long den = 0;
  double value() const { return den > 0 ? static_cast<double>(num) / den : 0.0; }
  std::string render_4dp() const;
};

int compare_ratio(const Ratio& a, const Ratio& b);

enum Source : std::uint8_t {
  kSourceTitle = 1,
  kSourceRedirect = 2,
  kSourceDisambig = 4,
  kSourceAnchorWiki = 8,
  kSourceAnchorWeb = 16,
};

std::string source_names(std::uint8_t sources);
std::uint8_t parse_source_names(std::string_view names, const std::string& file,
                                std::size_t line);

// Which half of the counts scores are computed from.
enum class CountMode { kBoth, kWikiOnly, kWebOnly };

Ratio evidence_score(const LinkEvidence& ev, CountMode mode = CountMode::kBoth);

struct DictionaryEntry {
  std::string entity;  // canonical url_title
  LinkEvidence evidence;
  std::uint8_t sources = 0;
  Ratio score() const { return evidence_score(evidence); }
};

// Ranking inside one string's list: score desc, then raw hit mass desc,
// then entity ascending. Total order.
bool entry_less(const DictionaryEntry& a, const DictionaryEntry& b);

struct LinkRow {
  std::string provenance;  // wiki | web | disambig | title | redirect
  std::string text;        // surface string, preserved exactly
  std::string target;      // url_title
  long long count = 0;
};

// Despaces underscores and strips one trailing parenthetical group
// ("Jonathan_Edwards_(athlete)" -> "Jonathan Edwards"). Medial or nested
// parentheses are untouched; stripping never empties the string.
std::string title_to_string(std::string_view url_title);

class Dictionary {
 public:
  using EntryMap = std::map<std::string, std::vector<DictionaryEntry>>;

  const std::vector<DictionaryEntry>* find(std::string_view text) const;
  const EntryMap& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  // Total links to the entity over all strings, Wikipedia plus web.
  long long entity_inlinks(std::string_view entity) const;
  PageKind entity_kind(std::string_view entity) const;

  std::string to_tsv() const;
  static Dictionary from_tsv(const std::string& path, const CanonicalMap* canonical = nullptr);

  friend class DictionaryBuilder;

 private:
  EntryMap entries_;
  std::unordered_map<std::string, long long> inlinks_;
  std::unordered_map<std::string, PageKind> kind_;
};

// Accumulates evidence from pages and link rows; order-independent, so
// shards of one links file merge to the same dictionary as their
// concatenation.
class DictionaryBuilder {
 public:
  explicit DictionaryBuilder(const CanonicalMap* canonical) : canonical_(canonical) {}

  // Title, redirect and disambiguation self pairs derived from the page
  // inventory behind the canonical map.
  void add_pages(const std::vector<PageRecord>& pages);
  void add_row(const LinkRow& row, const std::string& file = "<memory>",
               std::size_t line = 0);
  void add_links_tsv(const std::string& path);

  Dictionary build();

 private:
  struct Cell {
    LinkEvidence ev;
    std::uint8_t sources = 0;
  };
  struct Totals {
    long long wiki = 0, web = 0;
  };

  void touch(const std::string& text, const std::string& entity, std::uint8_t source,
             long long wiki_hits, long long web_hits);

  const CanonicalMap* canonical_;
  std::map<std::string, std::map<std::string, Cell>> cells_;  // string -> entity -> cell
  std::map<std::string, Totals> totals_;                      // string -> totals
};

Dictionary harvest(const std::vector<PageRecord>& pages, const CanonicalMap& canonical,
                   const std::vector<LinkRow>& links);

std::vector<LinkRow> load_links_tsv(const std::string& path);

}  // namespace nedkit

#endif  // NEDKIT_DICTIONARY_HPP_
