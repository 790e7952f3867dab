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
// Knowledge-base mapping with NIL, micro-averaged accuracy, precision and
// recall at k, ambiguity/synonymy statistics, and oracle skylines.

#ifndef NEDKIT_EVALKIT_HPP_
#define NEDKIT_EVALKIT_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace nedkit {

inline constexpr std::string_view kNil = "NIL";

struct KbRecord {
  std::string kb_id;
  std::string wiki_title;
  std::string entity_type;  // PER | ORG | GPE | UKN
};

class KnowledgeBase {
 public:
  void add(KbRecord record);
  // kb_id for a wiki title, or NIL when absent (or when no title given).
  std::string map_to_kb(std::optional<std::string_view> wiki_title) const;
  const KbRecord* find_title(std::string_view wiki_title) const;
  bool contains_title(std::string_view wiki_title) const;
  std::size_t size() const { return by_title_.size(); }

  static KnowledgeBase from_tsv(const std::string& path);

 private:
  std::map<std::string, KbRecord, std::less<>> by_title_;
  std::set<std::string, std::less<>> ids_;
};

struct Query {
  std::string id;
  std::string name;
  std::string docid;
};

// Minimal parser for the query XML: <query id=..><name>..</name>
// <docid>..</docid></query> elements under one root.
std::vector<Query> parse_queries_xml(std::string_view content,
                                     const std::string& file = "<memory>");
std::vector<Query> load_queries_xml(const std::string& path);

struct GoldRow {
  std::string query_id;
  std::string kb_id;      // NIL-prefixed ids mean NIL
  std::string wiki_title; // "-" when unknown
  std::string genre;      // news | web
  bool is_nil() const { return kb_id.rfind(kNil, 0) == 0; }
};

std::vector<GoldRow> load_gold_tsv(const std::string& path);

struct AnswerRow {
  std::string query_id;
  std::string kb_id;
  std::string wiki_title;
};

std::vector<AnswerRow> load_answers_tsv(const std::string& path);
std::string answers_to_tsv(const std::vector<AnswerRow>& answers);

enum class EvalSubset { kAll, kKbOnly };

struct GenreCounts {
  long long n = 0;
  long long correct = 0;
  double accuracy() const { return n > 0 ? static_cast<double>(correct) / n : 0.0; }
};

struct EvalReport {
  long long n_queries = 0;
  long long n_correct = 0;
  std::map<std::string, GenreCounts> by_genre;
  long long gold_nil = 0;     // gold NILs inside the evaluated subset
  long long guessed_nil = 0;  // NIL answers inside the evaluated subset
  long long nil_correct = 0;
  double micro_accuracy() const {
    return n_queries > 0 ? static_cast<double>(n_correct) / n_queries : 0.0;
  }
  std::string render_text() const;
  std::string render_tsv() const;
};

// Throws ParseError if a gold query has no answer row.
EvalReport micro_accuracy(const std::vector<GoldRow>& gold,
                          const std::vector<AnswerRow>& answers, EvalSubset subset);

struct PrPoint {
  std::size_t k = 0;  // 0 renders as "inf": no cutoff
  double precision = 0.0;
  double recall = 0.0;
};

// gold_ids and ranked_lists are parallel over queries; NIL gold entries
// are skipped. Precision divides by candidates actually returned (lists
// shorter than k are not padded).
std::vector<PrPoint> pr_curve(const std::vector<std::string>& gold_ids,
                              const std::vector<std::vector<std::string>>& ranked_lists,
                              const std::vector<std::size_t>& ks);

std::string pr_points_to_tsv(const std::vector<PrPoint>& points);

// Fraction of non-NIL queries whose gold id appears anywhere in its list.
double oracle_accuracy(const std::vector<std::string>& gold_ids,
                       const std::vector<std::vector<std::string>>& ranked_lists);

struct AmbiguityStats {
  long long n_strings = 0;
  long long no_entities = 0;  // NIL-only strings
  long long monosemous = 0;
  long long polysemous = 0;
  double mean_ambiguity = 0.0;  // over polysemous strings only
  std::string render_text(std::string_view label) const;
};

AmbiguityStats ambiguity_stats(const std::map<std::string, std::set<std::string>>& view);

struct SynonymyStats {
  long long n_entities = 0;
  long long no_strings = 0;
  long long single_string = 0;
  long long multiple_strings = 0;
  double mean_synonymy = 0.0;  // over multi-string entities only
  std::string render_text(std::string_view label) const;
};

SynonymyStats synonymy_stats(const std::map<std::string, std::set<std::string>>& view);

}  // namespace nedkit

#endif  // NEDKIT_EVALKIT_HPP_
