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

#include "nedkit/dictionary.hpp"

#include <algorithm>
#include <cstdio>

#include "nedkit/error.hpp"
#include "nedkit/tsv.hpp"

namespace nedkit {

std::string Ratio::render_4dp() const {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", value());
  return buf;
}

int compare_ratio(const Ratio& a, const Ratio& b) {
  // den == 0 counts as zero; cross-multiply in wide arithmetic otherwise.
  long long an = a.den > 0 ? a.num : 0;
  long long ad = a.den > 0 ? a.den : 1;
  long long bn = b.den > 0 ? b.num : 0;
  long long bd = b.den > 0 ? b.den : 1;
  __int128 lhs = static_cast<__int128>(an) * bd;
  __int128 rhs = static_cast<__int128>(bn) * ad;
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

std::string source_names(std::uint8_t sources) {
  static constexpr std::pair<Source, const char*> kNames[] = {
      {kSourceTitle, "title"},
      {kSourceRedirect, "redirect"},
      {kSourceDisambig, "disambig"},
      {kSourceAnchorWiki, "wiki"},
      {kSourceAnchorWeb, "web"},
  };
  std::string out;
  for (const auto& [bit, name] : kNames) {
    if (sources & bit) {
      if (!out.empty()) out.push_back(',');
      out.append(name);
    }
  }
  return out;
}

std::uint8_t parse_source_names(std::string_view names, const std::string& file,
                                std::size_t line) {
  std::uint8_t sources = 0;
  for (std::string_view name : split(names, ',')) {
    if (name == "title") sources |= kSourceTitle;
    else if (name == "redirect") sources |= kSourceRedirect;
    else if (name == "disambig") sources |= kSourceDisambig;
    else if (name == "wiki") sources |= kSourceAnchorWiki;
    else if (name == "web") sources |= kSourceAnchorWeb;
    else throw ParseError(file, line, "unknown source '" + std::string(name) + "'");
  }
  return sources;
}

Ratio evidence_score(const LinkEvidence& ev, CountMode mode) {
  switch (mode) {
    case CountMode::kWikiOnly: return {ev.wiki_hits, ev.wiki_total};
    case CountMode::kWebOnly: return {ev.web_hits, ev.web_total};
    case CountMode::kBoth: break;
  }
  return {ev.wiki_hits + ev.web_hits, ev.wiki_total + ev.web_total};
}

bool entry_less(const DictionaryEntry& a, const DictionaryEntry& b) {
  int c = compare_ratio(a.score(), b.score());
  if (c != 0) return c > 0;
  long long mass_a = a.evidence.wiki_hits + a.evidence.web_hits;
  long long mass_b = b.evidence.wiki_hits + b.evidence.web_hits;
  if (mass_a != mass_b) return mass_a > mass_b;
  return a.entity < b.entity;
}

std::string title_to_string(std::string_view url_title) {
  std::string text(url_title);
  for (char& c : text) {
    if (c == '_') c = ' ';
  }
  if (!text.empty() && text.back() == ')') {
    // Walk back to the matching opener of the final group.
    int depth = 0;
    for (std::size_t i = text.size(); i-- > 0;) {
      if (text[i] == ')') ++depth;
      else if (text[i] == '(' && --depth == 0) {
        if (i >= 2 && text[i - 1] == ' ') {
          return text.substr(0, i - 1);
        }
        break;
      }
    }
  }
  return text;
}

const std::vector<DictionaryEntry>* Dictionary::find(std::string_view text) const {
  auto it = entries_.find(std::string(text));
  return it == entries_.end() ? nullptr : &it->second;
}

long long Dictionary::entity_inlinks(std::string_view entity) const {
  auto it = inlinks_.find(std::string(entity));
  return it == inlinks_.end() ? 0 : it->second;
}

PageKind Dictionary::entity_kind(std::string_view entity) const {
  auto it = kind_.find(std::string(entity));
  return it == kind_.end() ? PageKind::kCrawlOnly : it->second;
}

std::string Dictionary::to_tsv() const {
  std::string out;
  for (const auto& [text, list] : entries_) {
    for (const DictionaryEntry& e : list) {
      out.append(text);
      out.push_back('\t');
      out.append(e.entity);
      out.push_back('\t');
      out.append(e.score().render_4dp());
      for (long long n : {e.evidence.wiki_hits, e.evidence.wiki_total,
                          e.evidence.web_hits, e.evidence.web_total}) {
        out.push_back('\t');
        out.append(std::to_string(n));
      }
      out.push_back('\t');
      out.append(source_names(e.sources));
      out.push_back('\n');
    }
  }
  return out;
}

Dictionary Dictionary::from_tsv(const std::string& path, const CanonicalMap* canonical) {
  Dictionary dict;
  for_each_tsv_row(path, 8, [&](std::size_t line, const std::vector<std::string_view>& f) {
    DictionaryEntry entry;
    entry.entity = std::string(f[1]);
    entry.evidence.wiki_hits = parse_count(f[3], path, line);
    entry.evidence.wiki_total = parse_count(f[4], path, line);
    entry.evidence.web_hits = parse_count(f[5], path, line);
    entry.evidence.web_total = parse_count(f[6], path, line);
    entry.sources = parse_source_names(f[7], path, line);
    if (entry.sources == 0) throw ParseError(path, line, "entry without sources");
    dict.inlinks_[entry.entity] += entry.evidence.wiki_hits + entry.evidence.web_hits;
    dict.entries_[std::string(f[0])].push_back(std::move(entry));
  });
  for (auto& [text, list] : dict.entries_) {
    std::sort(list.begin(), list.end(), entry_less);
  }
  if (canonical != nullptr) {
    for (const auto& [text, list] : dict.entries_) {
      for (const DictionaryEntry& e : list) {
        dict.kind_.emplace(e.entity, canonical->kind_of(e.entity));
      }
    }
  }
  return dict;
}

void DictionaryBuilder::touch(const std::string& text, const std::string& entity,
                              std::uint8_t source, long long wiki_hits,
                              long long web_hits) {
  Cell& cell = cells_[text][entity];
  cell.sources |= source;
  cell.ev.wiki_hits += wiki_hits;
  cell.ev.web_hits += web_hits;
  Totals& totals = totals_[text];
  totals.wiki += wiki_hits;
  totals.web += web_hits;
}

void DictionaryBuilder::add_pages(const std::vector<PageRecord>& pages) {
  for (const PageRecord& page : pages) {
    std::string title = canonicalize_title(page.url_title);
    std::string canon = canonical_->resolve(title);
    switch (page.kind) {
      case PageKind::kArticle:
        // Titles name their own article, but only canonical ones: aliases
        // absorbed into another component are covered by redirects.
        if (canon == title) {
          touch(title_to_string(title), canon, kSourceTitle, 0, 0);
        }
        break;
      case PageKind::kRedirect: {
        std::string despaced(title);
        for (char& c : despaced) {
          if (c == '_') c = ' ';
        }
        touch(despaced, canon, kSourceRedirect, 0, 0);
        break;
      }
      case PageKind::kDisambiguation:
        // The page itself is a retrievable target; fanout rows arrive in
        // the links file.
        touch(title_to_string(title), canon, kSourceDisambig, 0, 0);
        break;
      case PageKind::kCrawlOnly:
        break;
    }
  }
}

void DictionaryBuilder::add_row(const LinkRow& row, const std::string& file,
                                std::size_t line) {
  if (row.text.empty()) throw ParseError(file, line, "empty string field");
  std::string entity;
  try {
    entity = canonical_->resolve(row.target);
  } catch (const EmptyTitleError&) {
    throw ParseError(file, line, "unresolvable target '" + row.target + "'");
  }
  if (row.provenance == "wiki") {
    touch(row.text, entity, kSourceAnchorWiki, row.count, 0);
  } else if (row.provenance == "web") {
    touch(row.text, entity, kSourceAnchorWeb, 0, row.count);
  } else if (row.provenance == "disambig") {
    std::string text = row.text;
    static constexpr std::string_view kSuffix = " (disambiguation)";
    if (text.size() > kSuffix.size() &&
        std::string_view(text).substr(text.size() - kSuffix.size()) == kSuffix) {
      text.resize(text.size() - kSuffix.size());
    }
    touch(text, entity, kSourceDisambig, 0, 0);
  } else if (row.provenance == "title") {
    touch(row.text, entity, kSourceTitle, 0, 0);
  } else if (row.provenance == "redirect") {
    touch(row.text, entity, kSourceRedirect, 0, 0);
  } else {
    throw ParseError(file, line, "unknown provenance '" + row.provenance + "'");
  }
}

void DictionaryBuilder::add_links_tsv(const std::string& path) {
  for_each_tsv_row(path, 4, [&](std::size_t line, const std::vector<std::string_view>& f) {
    LinkRow row{std::string(f[0]), std::string(f[1]), std::string(f[2]),
                parse_count(f[3], path, line)};
    add_row(row, path, line);
  });
}

Dictionary DictionaryBuilder::build() {
  Dictionary dict;
  for (auto& [text, per_entity] : cells_) {
    const Totals& totals = totals_[text];
    std::vector<DictionaryEntry>& list = dict.entries_[text];
    list.reserve(per_entity.size());
    for (auto& [entity, cell] : per_entity) {
      DictionaryEntry entry;
      entry.entity = entity;
      entry.evidence = cell.ev;
      entry.evidence.wiki_total = totals.wiki;
      entry.evidence.web_total = totals.web;
      entry.sources = cell.sources;
      dict.inlinks_[entity] += cell.ev.wiki_hits + cell.ev.web_hits;
      dict.kind_.emplace(entity, canonical_->kind_of(entity));
      list.push_back(std::move(entry));
    }
    std::sort(list.begin(), list.end(), entry_less);
  }
  return dict;
}

Dictionary harvest(const std::vector<PageRecord>& pages, const CanonicalMap& canonical,
                   const std::vector<LinkRow>& links) {
  DictionaryBuilder builder(&canonical);
  builder.add_pages(pages);
  std::size_t line = 0;
  for (const LinkRow& row : links) {
    builder.add_row(row, "<links>", ++line);
  }
  return builder.build();
}

std::vector<LinkRow> load_links_tsv(const std::string& path) {
  std::vector<LinkRow> rows;
  for_each_tsv_row(path, 4, [&](std::size_t line, const std::vector<std::string_view>& f) {
    rows.push_back({std::string(f[0]), std::string(f[1]), std::string(f[2]),
                    parse_count(f[3], path, line)});
  });
  return rows;
}

}  // namespace nedkit
