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

#include "nedkit/evalkit.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_map>

#include "nedkit/error.hpp"
#include "nedkit/tsv.hpp"

namespace nedkit {
namespace {

std::string render_fraction(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string render_mean(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string xml_unescape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '&') {
      out.push_back(s[i]);
      continue;
    }
    std::string_view rest = s.substr(i);
    auto take = [&](std::string_view entity, char value) {
      if (rest.rfind(entity, 0) == 0) {
        out.push_back(value);
        i += entity.size() - 1;
        return true;
      }
      return false;
    };
    if (take("&amp;", '&') || take("&lt;", '<') || take("&gt;", '>') ||
        take("&quot;", '"') || take("&apos;", '\'')) {
      continue;
    }
    out.push_back(s[i]);
  }
  return out;
}

// First <tag>..</tag> inside body; npos-free convenience.
std::optional<std::string> element_text(std::string_view body, std::string_view tag) {
  std::string open = "<" + std::string(tag) + ">";
  std::string close = "</" + std::string(tag) + ">";
  std::size_t a = body.find(open);
  if (a == std::string_view::npos) return std::nullopt;
  a += open.size();
  std::size_t b = body.find(close, a);
  if (b == std::string_view::npos) return std::nullopt;
  return xml_unescape(body.substr(a, b - a));
}

}  // namespace

void KnowledgeBase::add(KbRecord record) {
  ids_.insert(record.kb_id);
  by_title_.emplace(record.wiki_title, std::move(record));
}

std::string KnowledgeBase::map_to_kb(std::optional<std::string_view> wiki_title) const {
  if (!wiki_title.has_value()) return std::string(kNil);
  auto it = by_title_.find(*wiki_title);
  return it == by_title_.end() ? std::string(kNil) : it->second.kb_id;
}

const KbRecord* KnowledgeBase::find_title(std::string_view wiki_title) const {
  auto it = by_title_.find(wiki_title);
  return it == by_title_.end() ? nullptr : &it->second;
}

bool KnowledgeBase::contains_title(std::string_view wiki_title) const {
  return by_title_.count(wiki_title) > 0;
}

KnowledgeBase KnowledgeBase::from_tsv(const std::string& path) {
  KnowledgeBase kb;
  for_each_tsv_row(path, 3, [&](std::size_t line, const std::vector<std::string_view>& f) {
    if (f[0].empty() || f[1].empty()) throw ParseError(path, line, "empty kb field");
    if (kb.ids_.count(std::string(f[0]))) {
      throw ParseError(path, line, "duplicate kb_id " + std::string(f[0]));
    }
    if (kb.by_title_.count(std::string(f[1]))) {
      throw ParseError(path, line, "duplicate wiki_title " + std::string(f[1]));
    }
    kb.add({std::string(f[0]), std::string(f[1]), std::string(f[2])});
  });
  return kb;
}

std::vector<Query> parse_queries_xml(std::string_view content, const std::string& file) {
  std::vector<Query> queries;
  std::size_t pos = 0;
  while (true) {
    std::size_t start = content.find("<query", pos);
    if (start == std::string_view::npos) break;
    std::size_t head_end = content.find('>', start);
    if (head_end == std::string_view::npos) {
      throw ParseError(file, 0, "unterminated <query> tag");
    }
    std::size_t end = content.find("</query>", head_end);
    if (end == std::string_view::npos) {
      throw ParseError(file, 0, "missing </query>");
    }
    std::string_view head = content.substr(start, head_end - start);
    std::string_view body = content.substr(head_end + 1, end - head_end - 1);

    Query query;
    std::size_t id_pos = head.find("id=\"");
    if (id_pos != std::string_view::npos) {
      std::size_t id_end = head.find('"', id_pos + 4);
      if (id_end != std::string_view::npos) {
        query.id = xml_unescape(head.substr(id_pos + 4, id_end - id_pos - 4));
      }
    }
    std::optional<std::string> name = element_text(body, "name");
    std::optional<std::string> docid = element_text(body, "docid");
    if (query.id.empty() || !name || name->empty() || !docid || docid->empty()) {
      throw ParseError(file, 0, "query element missing id, name or docid");
    }
    query.name = *name;
    query.docid = *docid;
    queries.push_back(std::move(query));
    pos = end + 8;
  }
  return queries;
}

std::vector<Query> load_queries_xml(const std::string& path) {
  return parse_queries_xml(read_file(path), path);
}

std::vector<GoldRow> load_gold_tsv(const std::string& path) {
  std::vector<GoldRow> rows;
  for_each_tsv_row(path, 4, [&](std::size_t line, const std::vector<std::string_view>& f) {
    if (f[0].empty() || f[1].empty()) throw ParseError(path, line, "empty gold field");
    if (f[3] != "news" && f[3] != "web") {
      throw ParseError(path, line, "genre must be news or web");
    }
    rows.push_back({std::string(f[0]), std::string(f[1]), std::string(f[2]),
                    std::string(f[3])});
  });
  return rows;
}

std::vector<AnswerRow> load_answers_tsv(const std::string& path) {
  std::vector<AnswerRow> rows;
  for_each_tsv_row(path, 3, [&](std::size_t line, const std::vector<std::string_view>& f) {
    if (f[0].empty() || f[1].empty()) throw ParseError(path, line, "empty answer field");
    rows.push_back({std::string(f[0]), std::string(f[1]), std::string(f[2])});
  });
  return rows;
}

std::string answers_to_tsv(const std::vector<AnswerRow>& answers) {
  std::string out;
  for (const AnswerRow& a : answers) {
    out.append(a.query_id);
    out.push_back('\t');
    out.append(a.kb_id);
    out.push_back('\t');
    out.append(a.wiki_title.empty() ? "-" : a.wiki_title);
    out.push_back('\n');
  }
  return out;
}

EvalReport micro_accuracy(const std::vector<GoldRow>& gold,
                          const std::vector<AnswerRow>& answers, EvalSubset subset) {
  std::unordered_map<std::string_view, const AnswerRow*> by_id;
  for (const AnswerRow& a : answers) by_id.emplace(a.query_id, &a);

  EvalReport report;
  for (const GoldRow& g : gold) {
    if (subset == EvalSubset::kKbOnly && g.is_nil()) continue;
    auto it = by_id.find(g.query_id);
    if (it == by_id.end()) {
      throw ParseError("<answers>", 0, "no answer row for query " + g.query_id);
    }
    const AnswerRow& a = *it->second;
    bool guess_nil = a.kb_id.rfind(kNil, 0) == 0;
    bool correct = g.is_nil() ? guess_nil : a.kb_id == g.kb_id;

    ++report.n_queries;
    if (correct) ++report.n_correct;
    GenreCounts& genre = report.by_genre[g.genre];
    ++genre.n;
    if (correct) ++genre.correct;
    if (g.is_nil()) ++report.gold_nil;
    if (guess_nil) {
      ++report.guessed_nil;
      if (g.is_nil()) ++report.nil_correct;
    }
  }
  return report;
}

std::string EvalReport::render_text() const {
  std::string out;
  auto line = [&out](std::string_view key, const std::string& value) {
    std::string row(key);
    row.append(row.size() < 22 ? 22 - row.size() : 1, ' ');
    row.append(value);
    row.push_back('\n');
    out.append(row);
  };
  line("queries", std::to_string(n_queries));
  line("correct", std::to_string(n_correct));
  line("micro-accuracy", render_fraction(micro_accuracy()));
  line("gold-nil", std::to_string(gold_nil));
  line("guessed-nil", std::to_string(guessed_nil));
  line("nil-correct", std::to_string(nil_correct));
  for (const auto& [genre, counts] : by_genre) {
    line("genre:" + genre,
         std::to_string(counts.correct) + "/" + std::to_string(counts.n) + " = " +
             render_fraction(counts.accuracy()));
  }
  return out;
}

std::string EvalReport::render_tsv() const {
  std::string out;
  auto row = [&out](std::string_view key, const std::string& value) {
    out.append(key);
    out.push_back('\t');
    out.append(value);
    out.push_back('\n');
  };
  row("queries", std::to_string(n_queries));
  row("correct", std::to_string(n_correct));
  row("micro_accuracy", render_fraction(micro_accuracy()));
  row("gold_nil", std::to_string(gold_nil));
  row("guessed_nil", std::to_string(guessed_nil));
  row("nil_correct", std::to_string(nil_correct));
  for (const auto& [genre, counts] : by_genre) {
    row("genre_" + genre + "_n", std::to_string(counts.n));
    row("genre_" + genre + "_correct", std::to_string(counts.correct));
    row("genre_" + genre + "_accuracy", render_fraction(counts.accuracy()));
  }
  return out;
}

std::vector<PrPoint> pr_curve(const std::vector<std::string>& gold_ids,
                              const std::vector<std::vector<std::string>>& ranked_lists,
                              const std::vector<std::size_t>& ks) {
  std::vector<PrPoint> points;
  points.reserve(ks.size());
  for (std::size_t k : ks) {
    long long correct = 0, returned = 0, with_gold = 0;
    for (std::size_t q = 0; q < gold_ids.size() && q < ranked_lists.size(); ++q) {
      const std::string& gold = gold_ids[q];
      if (gold.rfind(kNil, 0) == 0) continue;
      ++with_gold;
      const std::vector<std::string>& list = ranked_lists[q];
      std::size_t depth = k == 0 ? list.size() : std::min(k, list.size());
      returned += static_cast<long long>(depth);
      for (std::size_t i = 0; i < depth; ++i) {
        if (list[i] == gold) {
          ++correct;
          break;
        }
      }
    }
    PrPoint point;
    point.k = k;
    point.precision = returned > 0 ? static_cast<double>(correct) / returned : 0.0;
    point.recall = with_gold > 0 ? static_cast<double>(correct) / with_gold : 0.0;
    points.push_back(point);
  }
  return points;
}

std::string pr_points_to_tsv(const std::vector<PrPoint>& points) {
  std::string out;
  for (const PrPoint& p : points) {
    out.append(p.k == 0 ? "inf" : std::to_string(p.k));
    out.push_back('\t');
    out.append(render_fraction(p.precision));
    out.push_back('\t');
    out.append(render_fraction(p.recall));
    out.push_back('\n');
  }
  return out;
}

double oracle_accuracy(const std::vector<std::string>& gold_ids,
                       const std::vector<std::vector<std::string>>& ranked_lists) {
  long long with_gold = 0, covered = 0;
  for (std::size_t q = 0; q < gold_ids.size() && q < ranked_lists.size(); ++q) {
    const std::string& gold = gold_ids[q];
    if (gold.rfind(kNil, 0) == 0) continue;
    ++with_gold;
    const std::vector<std::string>& list = ranked_lists[q];
    if (std::find(list.begin(), list.end(), gold) != list.end()) ++covered;
  }
  return with_gold > 0 ? static_cast<double>(covered) / with_gold : 0.0;
}

AmbiguityStats ambiguity_stats(const std::map<std::string, std::set<std::string>>& view) {
  AmbiguityStats stats;
  long long poly_sum = 0;
  for (const auto& [text, entities] : view) {
    ++stats.n_strings;
    if (entities.empty()) {
      ++stats.no_entities;
    } else if (entities.size() == 1) {
      ++stats.monosemous;
    } else {
      ++stats.polysemous;
      poly_sum += static_cast<long long>(entities.size());
    }
  }
  stats.mean_ambiguity = stats.polysemous > 0
                             ? static_cast<double>(poly_sum) / stats.polysemous
                             : 0.0;
  return stats;
}

std::string AmbiguityStats::render_text(std::string_view label) const {
  std::string out(label);
  out.append("  strings=");
  out.append(std::to_string(n_strings));
  out.append("  no-entities=");
  out.append(std::to_string(no_entities));
  out.append("  monosemous=");
  out.append(std::to_string(monosemous));
  out.append("  polysemous=");
  out.append(std::to_string(polysemous));
  out.append("  ambiguity=");
  out.append(render_mean(mean_ambiguity));
  out.push_back('\n');
  return out;
}

SynonymyStats synonymy_stats(const std::map<std::string, std::set<std::string>>& view) {
  SynonymyStats stats;
  long long multi_sum = 0;
  for (const auto& [entity, strings] : view) {
    ++stats.n_entities;
    if (strings.empty()) {
      ++stats.no_strings;
    } else if (strings.size() == 1) {
      ++stats.single_string;
    } else {
      ++stats.multiple_strings;
      multi_sum += static_cast<long long>(strings.size());
    }
  }
  stats.mean_synonymy = stats.multiple_strings > 0
                            ? static_cast<double>(multi_sum) / stats.multiple_strings
                            : 0.0;
  return stats;
}

std::string SynonymyStats::render_text(std::string_view label) const {
  std::string out(label);
  out.append("  entities=");
  out.append(std::to_string(n_entities));
  out.append("  no-strings=");
  out.append(std::to_string(no_strings));
  out.append("  single=");
  out.append(std::to_string(single_string));
  out.append("  multiple=");
  out.append(std::to_string(multiple_strings));
  out.append("  synonymy=");
  out.append(render_mean(mean_synonymy));
  out.push_back('\n');
  return out;
}

}  // namespace nedkit
