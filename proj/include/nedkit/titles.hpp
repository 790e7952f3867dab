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
// Redirect-graph resolution: every page identifier maps to one canonical
// article title chosen per connected component of the redirect graph.

#ifndef NEDKIT_TITLES_HPP_
#define NEDKIT_TITLES_HPP_

#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace nedkit {

enum class PageKind { kArticle, kRedirect, kDisambiguation, kCrawlOnly };

std::string_view page_kind_name(PageKind kind);
PageKind parse_page_kind(std::string_view name, const std::string& file, std::size_t line);

struct PageRecord {
  std::string url_title;
  PageKind kind = PageKind::kCrawlOnly;
};

struct RedirectEdge {
  std::string source;
  std::string target;
};

// Normalizes a raw title into url_title form: percent-decoded once,
// spaces to underscores, underscore runs collapsed, outer underscores
// stripped, ASCII first letter uppercased. Throws EmptyTitleError when
// nothing remains.
std::string canonicalize_title(std::string_view raw);

// Immutable after build; safe for concurrent readers.
class CanonicalMap {
 public:
  // Canonical title for t: the component representative when t is known,
  // otherwise the canonicalized t itself (unknown titles are their own
  // crawl-only canonical).
  std::string resolve(std::string_view t) const;

  PageKind kind_of(std::string_view title) const;
  bool known(std::string_view title) const { return mapping_.count(std::string(title)) > 0; }
  std::size_t size() const { return mapping_.size(); }

  // Rows `url_title <TAB> canonical <TAB> kind`, sorted byte-lexicographically
  // by url_title; bit-exact across runs.
  std::string to_tsv() const;
  static CanonicalMap from_tsv(const std::string& path);

  friend CanonicalMap build_canonical_map(const std::vector<PageRecord>&,
                                          const std::vector<RedirectEdge>&,
                                          const std::unordered_set<std::string>&);

 private:
  std::unordered_map<std::string, std::string> mapping_;  // title -> canonical
  std::unordered_map<std::string, PageKind> kind_;        // title -> own kind
};

// Connected components of the undirected redirect graph. Edge endpoints
// missing from `pages` are synthesized as crawl-only pages. The canonical
// title per component prefers KB-listed titles, then articles, then
// redirects/disambiguations, then crawl-only pages; ties break
// lexicographically ascending.
CanonicalMap build_canonical_map(
    const std::vector<PageRecord>& pages, const std::vector<RedirectEdge>& edges,
    const std::unordered_set<std::string>& kb_titles = {});

std::vector<PageRecord> load_pages_tsv(const std::string& path);
std::vector<RedirectEdge> load_redirects_tsv(const std::string& path);

}  // namespace nedkit

#endif  // NEDKIT_TITLES_HPP_
