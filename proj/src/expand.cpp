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

#include "nedkit/expand.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "nedkit/error.hpp"
#include "nedkit/tsv.hpp"

namespace nedkit {
namespace {

bool word_boundary(std::string_view text, std::size_t begin, std::size_t end) {
  auto alnum = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; };
  if (begin > 0 && alnum(text[begin - 1])) return false;
  if (end < text.size() && alnum(text[end])) return false;
  return true;
}

// Case-insensitive (ASCII) substring scan.
std::size_t find_ci(std::string_view haystack, std::string_view needle, std::size_t from) {
  if (needle.empty() || haystack.size() < needle.size()) return std::string_view::npos;
  for (std::size_t i = from; i + needle.size() <= haystack.size(); ++i) {
    bool match = true;
    for (std::size_t k = 0; k < needle.size(); ++k) {
      if (std::tolower(static_cast<unsigned char>(haystack[i + k])) !=
          std::tolower(static_cast<unsigned char>(needle[k]))) {
        match = false;
        break;
      }
    }
    if (match) return i;
  }
  return std::string_view::npos;
}

std::vector<std::pair<std::size_t, std::size_t>> occurrences(
    std::string_view text, std::string_view mention) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t pos = text.find(mention);
  while (pos != std::string_view::npos) {
    out.emplace_back(pos, pos + mention.size());
    pos = text.find(mention, pos + 1);
  }
  if (out.empty()) {
    pos = find_ci(text, mention, 0);
    while (pos != std::string_view::npos) {
      out.emplace_back(pos, pos + mention.size());
      pos = find_ci(text, mention, pos + 1);
    }
  }
  return out;
}

std::string squeeze_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    bool space = c == ' ' || c == '\n' || c == '\t' || c == '\r';
    if (space && (out.empty() || out.back() == ' ')) continue;
    out.push_back(space ? ' ' : c);
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

struct Expansion {
  std::string text;
  std::size_t begin = 0;
  ExpansionEvidence evidence = ExpansionEvidence::kNone;
};

int evidence_rank(ExpansionEvidence e) {
  switch (e) {
    case ExpansionEvidence::kNerChunk: return 0;
    case ExpansionEvidence::kCoreference: return 1;
    case ExpansionEvidence::kTitleMatch: return 2;
    case ExpansionEvidence::kNone: return 3;
  }
  return 3;
}

}  // namespace

std::string_view expansion_evidence_name(ExpansionEvidence evidence) {
  switch (evidence) {
    case ExpansionEvidence::kNerChunk: return "ner";
    case ExpansionEvidence::kCoreference: return "coref";
    case ExpansionEvidence::kTitleMatch: return "title";
    case ExpansionEvidence::kNone: return "none";
  }
  return "none";
}

std::vector<DocAnnotation> load_annotations(const std::string& path) {
  std::vector<DocAnnotation> out;
  for_each_tsv_row(path, 4, [&](std::size_t line, const std::vector<std::string_view>& f) {
    DocAnnotation a;
    a.begin = static_cast<std::size_t>(parse_count(f[0], path, line));
    a.end = static_cast<std::size_t>(parse_count(f[1], path, line));
    if (f[2] == "ner") a.coref = false;
    else if (f[2] == "coref") a.coref = true;
    else throw ParseError(path, line, "annotation kind must be ner or coref");
    if (a.end <= a.begin) throw ParseError(path, line, "empty annotation span");
    a.label = std::string(f[3]);
    out.push_back(std::move(a));
  });
  return out;
}

std::vector<TitleMatch> title_matches_in_doc(std::string_view doc_text,
                                             const CandidateList& candidates) {
  std::vector<TitleMatch> out;
  std::set<std::string> seen;
  for (const Candidate& c : candidates.candidates) {
    if (!seen.insert(c.entity).second) continue;
    std::string needle = title_to_string(c.entity);
    if (needle.empty()) continue;
    std::size_t pos = find_ci(doc_text, needle, 0);
    while (pos != std::string_view::npos) {
      std::size_t end = pos + needle.size();
      if (word_boundary(doc_text, pos, end)) {
        out.push_back({c.entity, pos, end});
      }
      pos = find_ci(doc_text, needle, pos + 1);
    }
  }
  std::sort(out.begin(), out.end(), [](const TitleMatch& a, const TitleMatch& b) {
    if (a.begin != b.begin) return a.begin < b.begin;
    if (a.end != b.end) return a.end > b.end;
    return a.title < b.title;
  });
  return out;
}

ExpansionResult expand_mention(std::string_view doc_text, std::string_view mention,
                               const CandidateList& original, const LookupFn& lookup,
                               const std::vector<DocAnnotation>& annotations) {
  auto mention_spans = occurrences(doc_text, mention);
  if (mention_spans.empty()) {
    throw MentionNotFoundError("mention '" + std::string(mention) +
                               "' does not occur in the document");
  }

  auto covers_mention = [&](const DocAnnotation& a) {
    for (const auto& [mb, me] : mention_spans) {
      if (a.begin <= mb && me <= a.end && a.end <= doc_text.size()) return true;
    }
    return false;
  };

  std::vector<Expansion> expansions;
  auto consider = [&](std::string_view raw, std::size_t begin,
                      ExpansionEvidence evidence) {
    std::string text = squeeze_whitespace(raw);
    if (text.size() <= mention.size()) return;  // must actually extend
    expansions.push_back({std::move(text), begin, evidence});
  };

  // (a) NER chunks covering an occurrence of the mention.
  for (const DocAnnotation& a : annotations) {
    if (!a.coref && covers_mention(a) && a.end <= doc_text.size()) {
      consider(doc_text.substr(a.begin, a.end - a.begin), a.begin,
               ExpansionEvidence::kNerChunk);
    }
  }
  // (b) Mentions coreferent with an occurrence: chain mates of any chain
  // that touches the mention.
  std::set<std::string> chains;
  for (const DocAnnotation& a : annotations) {
    if (a.coref && covers_mention(a)) chains.insert(a.label);
  }
  for (const DocAnnotation& a : annotations) {
    if (a.coref && chains.count(a.label) && a.end <= doc_text.size()) {
      consider(doc_text.substr(a.begin, a.end - a.begin), a.begin,
               ExpansionEvidence::kCoreference);
    }
  }
  // (c) Candidate titles spelled out in the document.
  for (const TitleMatch& m : title_matches_in_doc(doc_text, original)) {
    consider(doc_text.substr(m.begin, m.end - m.begin), m.begin,
             ExpansionEvidence::kTitleMatch);
  }

  ExpansionResult result;
  result.original = std::string(mention);
  result.expanded = std::string(mention);
  result.evidence = ExpansionEvidence::kNone;
  result.final_candidates = original;

  if (expansions.empty()) return result;
  const Expansion* best = &expansions.front();
  for (const Expansion& e : expansions) {
    if (e.text.size() > best->text.size() ||
        (e.text.size() == best->text.size() &&
         (e.begin < best->begin ||
          (e.begin == best->begin &&
           evidence_rank(e.evidence) < evidence_rank(best->evidence))))) {
      best = &e;
    }
  }

  // Re-query with the expansion and keep only entities the original string
  // could already name; ranking follows the expanded string's scores.
  CandidateList requeried = lookup(best->text);
  std::set<std::string_view> allowed;
  for (const Candidate& c : original.candidates) allowed.insert(c.entity);
  CandidateList intersected;
  intersected.query = requeried.query;
  intersected.dictionary_id = requeried.dictionary_id;
  for (const Candidate& c : requeried.candidates) {
    if (allowed.count(c.entity)) intersected.candidates.push_back(c);
  }
  if (intersected.candidates.empty()) return result;

  result.expanded = best->text;
  result.evidence = best->evidence;
  result.final_candidates = std::move(intersected);
  return result;
}

}  // namespace nedkit
