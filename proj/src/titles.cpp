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

#include "nedkit/titles.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

#include "nedkit/error.hpp"
#include "nedkit/tsv.hpp"

namespace nedkit {
namespace {

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// Classic union-find with path halving.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

int class_rank(PageKind kind) {
  switch (kind) {
    case PageKind::kArticle: return 0;
    case PageKind::kRedirect:
    case PageKind::kDisambiguation: return 1;
    case PageKind::kCrawlOnly: return 2;
  }
  return 2;
}

}  // namespace

std::string_view page_kind_name(PageKind kind) {
  switch (kind) {
    case PageKind::kArticle: return "article";
    case PageKind::kRedirect: return "redirect";
    case PageKind::kDisambiguation: return "disambig";
    case PageKind::kCrawlOnly: return "crawlonly";
  }
  return "crawlonly";
}

PageKind parse_page_kind(std::string_view name, const std::string& file, std::size_t line) {
  if (name == "article") return PageKind::kArticle;
  if (name == "redirect") return PageKind::kRedirect;
  if (name == "disambig") return PageKind::kDisambiguation;
  if (name == "crawlonly") return PageKind::kCrawlOnly;
  throw ParseError(file, line, "unknown page kind '" + std::string(name) + "'");
}

std::string canonicalize_title(std::string_view raw) {
  // Trim outer whitespace.
  std::size_t begin = 0, end = raw.size();
  while (begin < end && is_ascii_space(raw[begin])) ++begin;
  while (end > begin && is_ascii_space(raw[end - 1])) --end;
  raw = raw.substr(begin, end - begin);

  // Percent-decode once, then spaces become underscores.
  std::string decoded;
  decoded.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == '%' && i + 2 < raw.size()) {
      int hi = hex_value(raw[i + 1]);
      int lo = hex_value(raw[i + 2]);
      if (hi >= 0 && lo >= 0) {
        decoded.push_back(static_cast<char>(hi * 16 + lo));
        i += 2;
        continue;
      }
    }
    decoded.push_back(raw[i]);
  }
  for (char& c : decoded) {
    if (c == ' ') c = '_';
  }

  // Collapse underscore runs and strip the outer ones.
  std::string out;
  out.reserve(decoded.size());
  for (char c : decoded) {
    if (c == '_' && (out.empty() || out.back() == '_')) continue;
    out.push_back(c);
  }
  while (!out.empty() && out.back() == '_') out.pop_back();

  if (out.empty()) throw EmptyTitleError("empty title after canonicalization");
  if (out[0] >= 'a' && out[0] <= 'z') out[0] = static_cast<char>(out[0] - 'a' + 'A');
  return out;
}

std::string CanonicalMap::resolve(std::string_view t) const {
  auto it = mapping_.find(std::string(t));
  if (it != mapping_.end()) return it->second;
  std::string canon = canonicalize_title(t);
  it = mapping_.find(canon);
  if (it != mapping_.end()) return it->second;
  return canon;
}

PageKind CanonicalMap::kind_of(std::string_view title) const {
  auto it = kind_.find(std::string(title));
  return it == kind_.end() ? PageKind::kCrawlOnly : it->second;
}

std::string CanonicalMap::to_tsv() const {
  std::map<std::string_view, std::pair<std::string_view, PageKind>> rows;
  for (const auto& [title, canon] : mapping_) {
    rows.emplace(title, std::make_pair(std::string_view(canon), kind_.at(title)));
  }
  std::string out;
  for (const auto& [title, rest] : rows) {
    out.append(title);
    out.push_back('\t');
    out.append(rest.first);
    out.push_back('\t');
    out.append(page_kind_name(rest.second));
    out.push_back('\n');
  }
  return out;
}

CanonicalMap CanonicalMap::from_tsv(const std::string& path) {
  CanonicalMap map;
  for_each_tsv_row(path, 3, [&](std::size_t line, const std::vector<std::string_view>& f) {
    map.mapping_[std::string(f[0])] = std::string(f[1]);
    map.kind_[std::string(f[0])] = parse_page_kind(f[2], path, line);
  });
  return map;
}

CanonicalMap build_canonical_map(const std::vector<PageRecord>& pages,
                                 const std::vector<RedirectEdge>& edges,
                                 const std::unordered_set<std::string>& kb_titles) {
  // Index known pages; edge endpoints without a page record become
  // crawl-only pages.
  std::map<std::string, PageKind> page_kind;
  for (const PageRecord& page : pages) {
    std::string title = canonicalize_title(page.url_title);
    auto [it, inserted] = page_kind.emplace(std::move(title), page.kind);
    if (!inserted && class_rank(page.kind) < class_rank(it->second)) {
      it->second = page.kind;
    }
  }
  struct Edge {
    std::string source, target;
  };
  std::vector<Edge> canonical_edges;
  canonical_edges.reserve(edges.size());
  for (const RedirectEdge& edge : edges) {
    Edge e{canonicalize_title(edge.source), canonicalize_title(edge.target)};
    if (e.source == e.target) continue;
    page_kind.emplace(e.source, PageKind::kCrawlOnly);
    page_kind.emplace(e.target, PageKind::kCrawlOnly);
    canonical_edges.push_back(std::move(e));
  }

  // The std::map order fixes ids, so the result is independent of input
  // row order.
  std::vector<const std::string*> titles;
  std::unordered_map<std::string_view, std::size_t> id_of;
  titles.reserve(page_kind.size());
  for (const auto& [title, kind] : page_kind) {
    id_of.emplace(title, titles.size());
    titles.push_back(&title);
  }

  UnionFind components(titles.size());
  for (const Edge& e : canonical_edges) {
    components.unite(id_of.at(e.source), id_of.at(e.target));
  }

  // Pick the representative per component: KB membership first, then page
  // class, then the lexicographically smallest title.
  std::unordered_map<std::size_t, std::size_t> best;
  auto key = [&](std::size_t id) {
    const std::string& title = *titles[id];
    int kb = kb_titles.count(title) ? 0 : 1;
    return std::tuple<int, int, const std::string&>(kb, class_rank(page_kind.at(title)), title);
  };
  for (std::size_t id = 0; id < titles.size(); ++id) {
    std::size_t root = components.find(id);
    auto [it, inserted] = best.emplace(root, id);
    if (!inserted && key(id) < key(it->second)) it->second = id;
  }

  CanonicalMap map;
  map.mapping_.reserve(titles.size());
  map.kind_.reserve(titles.size());
  for (std::size_t id = 0; id < titles.size(); ++id) {
    const std::string& title = *titles[id];
    map.mapping_[title] = *titles[best.at(components.find(id))];
    map.kind_[title] = page_kind.at(title);
  }
  return map;
}

std::vector<PageRecord> load_pages_tsv(const std::string& path) {
  std::vector<PageRecord> pages;
  for_each_tsv_row(path, 2, [&](std::size_t line, const std::vector<std::string_view>& f) {
    if (f[0].empty()) throw ParseError(path, line, "empty url_title");
    pages.push_back({std::string(f[0]), parse_page_kind(f[1], path, line)});
  });
  return pages;
}

std::vector<RedirectEdge> load_redirects_tsv(const std::string& path) {
  std::vector<RedirectEdge> edges;
  for_each_tsv_row(path, 2, [&](std::size_t line, const std::vector<std::string_view>& f) {
    if (f[0].empty() || f[1].empty()) throw ParseError(path, line, "empty endpoint");
    edges.push_back({std::string(f[0]), std::string(f[1])});
  });
  return edges;
}

}  // namespace nedkit
