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
#include <cmath>
#include <random>

#include "doctest.h"
#include "nedkit/error.hpp"
#include "nedkit/tsv.hpp"

using namespace nedkit;

namespace {

KnowledgeBase small_kb() {
  KnowledgeBase kb;
  kb.add({"E0000001", "Mike_Quigley_(footballer)", "PER"});
  kb.add({"E0000002", "Stanford_University", "ORG"});
  kb.add({"E0000003", "Abbott_Laboratories", "ORG"});
  return kb;
}

// 20 queries, 3 gold NILs; answers correct on 14 of 17 KB queries and on
// 2 of 3 NILs.
void twenty_query_fixture(std::vector<GoldRow>* gold, std::vector<AnswerRow>* answers) {
  for (int i = 0; i < 20; ++i) {
    std::string id = "EL" + std::to_string(100 + i);
    bool nil = i >= 17;
    std::string genre = i % 2 == 0 ? "news" : "web";
    gold->push_back({id, nil ? "NIL" : "E" + std::to_string(i), "-", genre});
    std::string guess;
    if (nil) {
      guess = i == 19 ? "E999" : "NIL";           // one NIL answered wrong
    } else {
      guess = i < 14 ? "E" + std::to_string(i)    // 14 correct
                     : "E888";                    // 3 wrong
    }
    answers->push_back({id, guess, "-"});
  }
}

}  // namespace

TEST_CASE("kb lookups map titles to ids and everything else to NIL") {
  KnowledgeBase kb = small_kb();
  CHECK(kb.map_to_kb(std::string_view("Mike_Quigley_(footballer)")) == "E0000001");
  CHECK(kb.map_to_kb(std::string_view("Unknown_Page")) == "NIL");
  CHECK(kb.map_to_kb(std::nullopt) == "NIL");
  CHECK(kb.contains_title("Stanford_University"));
  const KbRecord* record = kb.find_title("Abbott_Laboratories");
  REQUIRE(record != nullptr);
  CHECK(record->entity_type == "ORG");
}

TEST_CASE("kb tsv rejects duplicate ids and titles") {
  std::string path = "/tmp/nedkit_test_kb.tsv";
  write_file(path, "E1\tPage_One\tPER\nE1\tPage_Two\tORG\n");
  CHECK_THROWS_AS(KnowledgeBase::from_tsv(path), ParseError);
  write_file(path, "E1\tPage_One\tPER\nE2\tPage_One\tORG\n");
  CHECK_THROWS_AS(KnowledgeBase::from_tsv(path), ParseError);
  write_file(path, "E1\tPage_One\tPER\nE2\tPage_Two\tORG\n");
  CHECK(KnowledgeBase::from_tsv(path).size() == 2);
}

TEST_CASE("query xml parses ids, names and docids") {
  std::string xml =
      "<kbpentlink>\n"
      "<query id=\"EL55\">\n"
      "<name>ABC</name>\n"
      "<docid>AFP_ENG_20070104.0533.LDC2009T13</docid>\n"
      "</query>\n"
      "<query id=\"EL56\"><name>A &amp; B</name><docid>doc2</docid></query>\n"
      "</kbpentlink>\n";
  std::vector<Query> queries = parse_queries_xml(xml);
  REQUIRE(queries.size() == 2);
  CHECK(queries[0].id == "EL55");
  CHECK(queries[0].name == "ABC");
  CHECK(queries[0].docid == "AFP_ENG_20070104.0533.LDC2009T13");
  CHECK(queries[1].name == "A & B");

  CHECK_THROWS_AS(parse_queries_xml("<query id=\"x\"><name>n</name></query>"),
                  ParseError);
}

TEST_CASE("micro accuracy counts exactly") {
  std::vector<GoldRow> gold;
  std::vector<AnswerRow> answers;
  for (int i = 0; i < 10; ++i) {
    gold.push_back({"Q" + std::to_string(i), "E" + std::to_string(i), "-", "news"});
    answers.push_back({"Q" + std::to_string(i),
                       i < 7 ? "E" + std::to_string(i) : "E999", "-"});
  }
  EvalReport report = micro_accuracy(gold, answers, EvalSubset::kAll);
  CHECK(report.n_queries == 10);
  CHECK(report.n_correct == 7);
  CHECK(report.micro_accuracy() == doctest::Approx(0.7));

  for (auto& a : answers) a.kb_id = gold[&a - answers.data()].kb_id;
  CHECK(micro_accuracy(gold, answers, EvalSubset::kAll).micro_accuracy() == 1.0);
}

TEST_CASE("kb-only scoring skips gold NILs") {
  std::vector<GoldRow> gold;
  std::vector<AnswerRow> answers;
  twenty_query_fixture(&gold, &answers);

  EvalReport all = micro_accuracy(gold, answers, EvalSubset::kAll);
  CHECK(all.n_queries == 20);
  CHECK(all.n_correct == 14 + 2);
  CHECK(all.gold_nil == 3);

  EvalReport kb_only = micro_accuracy(gold, answers, EvalSubset::kKbOnly);
  CHECK(kb_only.n_queries == 17);
  CHECK(kb_only.n_correct == 14);
  CHECK(kb_only.micro_accuracy() == doctest::Approx(14.0 / 17.0));
  CHECK(kb_only.gold_nil == 0);
}

TEST_CASE("accuracy over all queries mixes the subset accuracies") {
  std::vector<GoldRow> gold;
  std::vector<AnswerRow> answers;
  twenty_query_fixture(&gold, &answers);
  EvalReport all = micro_accuracy(gold, answers, EvalSubset::kAll);
  EvalReport kb_only = micro_accuracy(gold, answers, EvalSubset::kKbOnly);
  // ALL = KB_ONLY weight + NIL weight, exactly.
  long long nil_n = all.n_queries - kb_only.n_queries;
  long long nil_correct = all.n_correct - kb_only.n_correct;
  double mixed = (kb_only.micro_accuracy() * kb_only.n_queries +
                  static_cast<double>(nil_correct)) /
                 all.n_queries;
  CHECK(all.micro_accuracy() == doctest::Approx(mixed));
  CHECK(nil_n == 3);
}

TEST_CASE("missing answers are a schema error") {
  std::vector<GoldRow> gold = {{"Q1", "E1", "-", "news"}};
  std::vector<AnswerRow> answers;
  CHECK_THROWS_AS(micro_accuracy(gold, answers, EvalSubset::kAll), ParseError);
}

TEST_CASE("answer order never changes the report") {
  std::vector<GoldRow> gold;
  std::vector<AnswerRow> answers;
  twenty_query_fixture(&gold, &answers);
  EvalReport before = micro_accuracy(gold, answers, EvalSubset::kAll);
  std::mt19937 rng(5);
  std::shuffle(answers.begin(), answers.end(), rng);
  std::shuffle(gold.begin(), gold.end(), rng);
  EvalReport after = micro_accuracy(gold, answers, EvalSubset::kAll);
  CHECK(before.render_tsv() == after.render_tsv());
}

TEST_CASE("pr curve on a five-query fixture matches hand computation") {
  std::vector<std::string> gold = {"E1", "E2", "E3", "E4", "NIL"};
  std::vector<std::vector<std::string>> lists = {
      {"E1", "X"},        // gold at rank 1
      {"X", "E2"},        // gold at rank 2
      {"X", "Y", "Z"},    // gold missing
      {"E4"},             // gold at rank 1, short list
      {"E9"},             // NIL gold: skipped entirely
  };
  std::vector<PrPoint> points = pr_curve(gold, lists, {1, 2, 0});
  REQUIRE(points.size() == 3);

  // k=1: returned 4, correct 2 -> p=0.5; recall 2/4.
  CHECK(points[0].precision == doctest::Approx(0.5));
  CHECK(points[0].recall == doctest::Approx(0.5));
  // k=2: returned 2+2+2+1=7, correct 3.
  CHECK(points[1].precision == doctest::Approx(3.0 / 7.0));
  CHECK(points[1].recall == doctest::Approx(0.75));
  // k=inf: returned 8, correct 3; recall equals oracle coverage.
  CHECK(points[2].precision == doctest::Approx(3.0 / 8.0));
  CHECK(points[2].recall == doctest::Approx(oracle_accuracy(gold, lists)));
}

TEST_CASE("recall at k is nondecreasing and capped by the oracle") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t n = 1 + rng() % 30;
    std::vector<std::string> gold;
    std::vector<std::vector<std::string>> lists;
    for (std::size_t q = 0; q < n; ++q) {
      gold.push_back(rng() % 5 == 0 ? "NIL" : "E" + std::to_string(rng() % 10));
      std::vector<std::string> list;
      std::size_t len = rng() % 8;
      for (std::size_t i = 0; i < len; ++i) {
        list.push_back("E" + std::to_string(rng() % 10));
      }
      lists.push_back(std::move(list));
    }
    std::vector<PrPoint> points = pr_curve(gold, lists, {1, 2, 3, 5, 8, 0});
    for (std::size_t i = 1; i < points.size(); ++i) {
      CHECK(points[i].recall >= points[i - 1].recall - 1e-12);
    }
    CHECK(points.back().recall == doctest::Approx(oracle_accuracy(gold, lists)));

    // Realized top-1 accuracy never beats the oracle.
    long long with_gold = 0, top1_correct = 0;
    for (std::size_t q = 0; q < n; ++q) {
      if (gold[q] == "NIL") continue;
      ++with_gold;
      if (!lists[q].empty() && lists[q][0] == gold[q]) ++top1_correct;
    }
    if (with_gold > 0) {
      double realized = static_cast<double>(top1_correct) / with_gold;
      CHECK(realized <= oracle_accuracy(gold, lists) + 1e-12);
      // Recall at one is, definitionally, top-1 accuracy on the KB subset.
      CHECK(points[0].recall == doctest::Approx(realized));
    }
  }
}

TEST_CASE("oracle accuracy counts coverage") {
  std::vector<std::string> gold = {"E1", "E2"};
  CHECK(oracle_accuracy(gold, {{"E1"}, {"X", "E2"}}) == 1.0);
  CHECK(oracle_accuracy(gold, {{"X"}, {"Y"}}) == 0.0);

  std::vector<std::string> gold10;
  std::vector<std::vector<std::string>> lists10;
  for (int i = 0; i < 10; ++i) {
    gold10.push_back("E" + std::to_string(i));
    lists10.push_back(i == 3 ? std::vector<std::string>{"X"}
                             : std::vector<std::string>{"E" + std::to_string(i)});
  }
  CHECK(oracle_accuracy(gold10, lists10) == doctest::Approx(0.9));
}

TEST_CASE("ambiguity buckets strings by their entity counts") {
  std::map<std::string, std::set<std::string>> view;
  view["nil-only"] = {};
  view["mono"] = {"E1"};
  view["poly-a"] = {"E1", "E2"};
  view["poly-b"] = {"E1", "E2", "E3"};
  AmbiguityStats stats = ambiguity_stats(view);
  CHECK(stats.n_strings == 4);
  CHECK(stats.no_entities == 1);
  CHECK(stats.monosemous == 1);
  CHECK(stats.polysemous == 2);
  CHECK(stats.mean_ambiguity == doctest::Approx(2.5));

  std::map<std::string, std::set<std::string>> all_mono;
  all_mono["a"] = {"E1"};
  all_mono["b"] = {"E2"};
  CHECK(ambiguity_stats(all_mono).mean_ambiguity == 0.0);
  CHECK(ambiguity_stats(all_mono).polysemous == 0);
}

TEST_CASE("synonymy buckets entities by their string counts") {
  std::map<std::string, std::set<std::string>> view;
  view["E1"] = {"a"};
  view["E2"] = {"a", "b", "c"};
  view["E3"] = {"x", "y"};
  view["E4"] = {};
  SynonymyStats stats = synonymy_stats(view);
  CHECK(stats.n_entities == 4);
  CHECK(stats.no_strings == 1);
  CHECK(stats.single_string == 1);
  CHECK(stats.multiple_strings == 2);
  CHECK(stats.mean_synonymy == doctest::Approx(2.5));
}

TEST_CASE("gold and answers files round trip") {
  std::string path = "/tmp/nedkit_test_gold.tsv";
  write_file(path, "EL1\tE0000001\tMike_Quigley_(footballer)\tnews\n"
                   "EL2\tNIL\t-\tweb\n");
  std::vector<GoldRow> gold = load_gold_tsv(path);
  REQUIRE(gold.size() == 2);
  CHECK(!gold[0].is_nil());
  CHECK(gold[1].is_nil());

  write_file(path, "EL1\tE1\t-\tbroadcast\n");
  CHECK_THROWS_AS(load_gold_tsv(path), ParseError);

  std::vector<AnswerRow> answers = {{"EL1", "E0000001", "Mike_Quigley_(footballer)"},
                                    {"EL2", "NIL", "-"}};
  std::string rendered = answers_to_tsv(answers);
  write_file(path, rendered);
  std::vector<AnswerRow> loaded = load_answers_tsv(path);
  REQUIRE(loaded.size() == 2);
  CHECK(answers_to_tsv(loaded) == rendered);
}

TEST_CASE("nil-prefixed gold ids count as nil") {
  std::vector<GoldRow> gold = {{"Q1", "NIL0311", "-", "news"}};
  std::vector<AnswerRow> answers = {{"Q1", "NIL", "-"}};
  EvalReport report = micro_accuracy(gold, answers, EvalSubset::kAll);
  CHECK(report.n_correct == 1);
  CHECK(micro_accuracy(gold, answers, EvalSubset::kKbOnly).n_queries == 0);
}
