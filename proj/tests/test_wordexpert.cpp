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

#include "nedkit/wordexpert.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "nedkit/error.hpp"
#include "nedkit/tsv.hpp"

using namespace nedkit;

namespace {

const std::string kSuperferryText =
    "On February 27, 2004, SuperFerry 14 was bombed by the "
    "[[Abu_Sayyaf|Abu Sayyaf]] terrorists killing 116 people . It was "
    "considered as the worst terrorist attack ...";

Corpus superferry_corpus() {
  return parse_corpus("#doc superferry\n" + kSuperferryText + "\n");
}

TrainingSpan superferry_span(SpanMode mode = SpanMode::kTokens100) {
  RuleAnnotator annotator;
  std::vector<TrainingSpan> spans =
      extract_spans(superferry_corpus(), "Abu Sayyaf", {"Abu_Sayyaf"},
                    CanonicalMap(), mode, MatchMode::kLex, annotator);
  REQUIRE(spans.size() == 1);
  return spans.front();
}

bool has_feature(const std::vector<std::string>& features, std::string_view name) {
  return std::find(features.begin(), features.end(), name) != features.end();
}

TrainingSpan toy_span(const std::string& context_word, const std::string& target,
                      const std::string& anchor = "Riverton") {
  RuleAnnotator annotator;
  std::vector<AnnotatedToken> tokens =
      annotator.annotate({"the", context_word, "near", anchor, "today"});
  TrainingSpan span;
  span.tokens = std::move(tokens);
  span.anchor_begin = 3;
  span.anchor_end = 4;
  span.anchor_text = anchor;
  span.target = target;
  span.source_doc = "toy";
  return span;
}

}  // namespace

TEST_CASE("extraction finds the anchor span with its target") {
  TrainingSpan span = superferry_span();
  CHECK(span.anchor_text == "Abu Sayyaf");
  CHECK(span.target == "Abu_Sayyaf");
  CHECK(span.source_doc == "superferry");
  CHECK(span.tokens[span.anchor_begin].surface == "Abu Sayyaf");
}

TEST_CASE("lex requires the string inside the anchor text, sense does not") {
  Corpus corpus = parse_corpus(
      "#doc abc\n"
      "He told the [[Australian_Broadcasting_Corporation|Australian "
      "Broadcasting Corporation]] yesterday .\n");
  RuleAnnotator annotator;
  std::set<std::string> candidates = {"Australian_Broadcasting_Corporation"};

  std::vector<TrainingSpan> lex =
      extract_spans(corpus, "ABC", candidates, CanonicalMap(), SpanMode::kTokens100,
                    MatchMode::kLex, annotator);
  CHECK(lex.empty());

  std::vector<TrainingSpan> sense =
      extract_spans(corpus, "ABC", candidates, CanonicalMap(), SpanMode::kTokens100,
                    MatchMode::kSense, annotator);
  CHECK(sense.size() == 1);
}

TEST_CASE("lex spans are a subset of sense spans") {
  Corpus corpus = parse_corpus(
      "#doc one\nThe [[Abu_Sayyaf|Abu Sayyaf]] group struck .\n\n"
      "The [[Abu_Sayyaf|ASG]] struck again .\n");
  RuleAnnotator annotator;
  std::set<std::string> candidates = {"Abu_Sayyaf"};
  auto lex = extract_spans(corpus, "Abu Sayyaf", candidates, CanonicalMap(),
                           SpanMode::kTokens100, MatchMode::kLex, annotator);
  auto sense = extract_spans(corpus, "Abu Sayyaf", candidates, CanonicalMap(),
                             SpanMode::kTokens100, MatchMode::kSense, annotator);
  CHECK(lex.size() == 1);
  CHECK(sense.size() == 2);
  for (const TrainingSpan& span : lex) {
    bool found = false;
    for (const TrainingSpan& other : sense) {
      found |= other.anchor_text == span.anchor_text &&
               other.source_doc == span.source_doc;
    }
    CHECK(found);
  }
}

TEST_CASE("empty corpus yields no spans and empty candidates throw") {
  RuleAnnotator annotator;
  Corpus empty;
  CHECK(extract_spans(empty, "x", {"X_Page"}, CanonicalMap(), SpanMode::kTokens100,
                      MatchMode::kLex, annotator)
            .empty());
  CHECK_THROWS_AS(extract_spans(empty, "x", {}, CanonicalMap(), SpanMode::kTokens100,
                                MatchMode::kLex, annotator),
                  NoCandidatesError);
}

TEST_CASE("span modes bound the context window") {
  // 150 filler tokens each side; sentence breaks in both halves.
  std::string left, right;
  for (int i = 0; i < 150; ++i) {
    left += "alpha" + std::to_string(i) + (i == 75 ? " . Next" : "") + " ";
    right += "beta" + std::to_string(i) + (i == 10 ? " . Stop" : "") + " ";
  }
  Corpus corpus =
      parse_corpus("#doc big\n" + left + "[[Target_Page|the target]] " + right + "\n");
  RuleAnnotator annotator;
  std::set<std::string> candidates = {"Target_Page"};

  auto t100 = extract_spans(corpus, "the target", candidates, CanonicalMap(),
                            SpanMode::kTokens100, MatchMode::kSense, annotator);
  REQUIRE(t100.size() == 1);
  CHECK(t100.front().anchor_begin == 100);
  CHECK(t100.front().tokens.size() == 201);

  auto para = extract_spans(corpus, "the target", candidates, CanonicalMap(),
                            SpanMode::kParagraph, MatchMode::kSense, annotator);
  REQUIRE(para.size() == 1);
  CHECK(para.front().tokens.size() > 300);

  auto sent = extract_spans(corpus, "the target", candidates, CanonicalMap(),
                            SpanMode::kSentence, MatchMode::kSense, annotator);
  REQUIRE(sent.size() == 1);
  CHECK(sent.front().tokens.size() < t100.front().tokens.size());
  CHECK(sent.front().tokens.front().surface == "Next");
}

TEST_CASE("featurize emits the full template set") {
  std::vector<std::string> features = featurize(superferry_span());

  CHECK(has_feature(features, "anchor=Abu_Sayyaf"));
  CHECK(has_feature(features, "win4=bomb"));
  CHECK(has_feature(features, "win4=be"));
  CHECK(has_feature(features, "win4=kill"));
  CHECK(has_feature(features, "win4=people"));
  CHECK(has_feature(features, "win4=terrorist"));
  CHECK(has_feature(features, "bow=terrorist"));
  CHECK(has_feature(features, "bow=kill"));
  CHECK(has_feature(features, "prevN_lemma=SuperFerry"));
  CHECK(has_feature(features, "prevN_word=SuperFerry"));
  CHECK(has_feature(features, "prevV_lemma=bomb"));
  CHECK(has_feature(features, "prevV_word=bombed"));
  CHECK(has_feature(features, "nextA_lemma=bad"));
  CHECK(has_feature(features, "nextA_word=worst"));
  CHECK(has_feature(features, "nextN_lemma=terrorist"));
  CHECK(has_feature(features, "nextN_word=terrorists"));
  CHECK(has_feature(features, "nextV_lemma=kill"));
  CHECK(has_feature(features, "nextV_word=killing"));
  CHECK(has_feature(features, "bi_lemma_before=the Abu_Sayyaf"));
  CHECK(has_feature(features, "bi_word_before=the Abu_Sayyaf"));
  CHECK(has_feature(features, "bi_lemma_after=Abu_Sayyaf terrorist"));
  CHECK(has_feature(features, "bi_word_after=Abu_Sayyaf terrorists"));
  CHECK(has_feature(features, "tri_lemma_before=by the Abu_Sayyaf"));
  CHECK(has_feature(features, "tri_word_before=by the Abu_Sayyaf"));
  CHECK(has_feature(features, "tri_lemma_around=the Abu_Sayyaf terrorist"));
  CHECK(has_feature(features, "tri_word_around=the Abu_Sayyaf terrorists"));
  CHECK(has_feature(features, "tri_lemma_after=Abu_Sayyaf terrorist kill"));
  CHECK(has_feature(features, "tri_word_after=Abu_Sayyaf terrorists killing"));

  // The window stops at four tokens: "SuperFerry" sits six back.
  CHECK(!has_feature(features, "win4=SuperFerry"));
  // Anchor tokens never reach the bag of context lemmas.
  CHECK(!has_feature(features, "bow=Abu Sayyaf"));
}

TEST_CASE("boundary spans drop the missing-side templates") {
  RuleAnnotator annotator;
  TrainingSpan only_anchor;
  only_anchor.tokens = annotator.annotate({"Solo"});
  only_anchor.anchor_begin = 0;
  only_anchor.anchor_end = 1;
  only_anchor.anchor_text = "Solo";
  only_anchor.target = "Solo_Page";
  std::vector<std::string> features = featurize(only_anchor);
  REQUIRE(features.size() == 1);
  CHECK(features.front() == "anchor=Solo");

  TrainingSpan at_start;
  at_start.tokens = annotator.annotate({"Solo", "wins", "today"});
  at_start.anchor_begin = 0;
  at_start.anchor_end = 1;
  at_start.anchor_text = "Solo";
  at_start.target = "Solo_Page";
  features = featurize(at_start);
  for (const std::string& f : features) {
    CHECK(f.rfind("bi_word_before=", 0) != 0);
    CHECK(f.rfind("tri_lemma_before=", 0) != 0);
    CHECK(f.rfind("prevN_", 0) != 0);
  }
  CHECK(has_feature(features, "bi_word_after=Solo wins"));
}

TEST_CASE("training needs two populated classes") {
  std::vector<TrainingSpan> spans = {toy_span("song", "Riverton_(band)"),
                                     toy_span("music", "Riverton_(band)")};
  CHECK_THROWS_AS(train_word_expert("Riverton", spans, {}), DegenerateTrainingError);
  CHECK_THROWS_AS(train_word_expert("Riverton", {}, {}), DegenerateTrainingError);
}

TEST_CASE("separable training data reaches accuracy one") {
  std::vector<TrainingSpan> spans;
  for (int i = 0; i < 8; ++i) {
    spans.push_back(toy_span("guitar", "Riverton_(band)"));
    spans.push_back(toy_span("mayor", "Riverton_(city)"));
  }
  WordExpertModel model = train_word_expert("Riverton", spans, {});
  for (const TrainingSpan& span : spans) {
    auto [cls, prob] = model.classify(featurize(span));
    CHECK(model.classes[cls] == span.target);
  }
}

TEST_CASE("training is invariant under duplication and shuffling") {
  std::vector<TrainingSpan> spans = {
      toy_span("guitar", "Riverton_(band)"), toy_span("chord", "Riverton_(band)"),
      toy_span("mayor", "Riverton_(city)"), toy_span("bridge", "Riverton_(city)")};
  WordExpertModel base = train_word_expert("Riverton", spans, {});

  std::vector<TrainingSpan> doubled;
  for (const TrainingSpan& span : spans) {
    doubled.push_back(span);
    doubled.push_back(span);
  }
  std::mt19937 rng(3);
  std::shuffle(doubled.begin(), doubled.end(), rng);
  WordExpertModel shuffled = train_word_expert("Riverton", doubled, {});

  // Held-out surfaces whose lemmas carry the trained signal.
  for (const char* word : {"guitars", "chords", "mayors", "bridges"}) {
    TrainingSpan probe = toy_span(word, "?");
    auto [cls_a, p_a] = base.classify(featurize(probe));
    auto [cls_b, p_b] = shuffled.classify(featurize(probe));
    CHECK(base.classes[cls_a] == shuffled.classes[cls_b]);
  }
}

TEST_CASE("same spans in any order train to identical model bytes") {
  std::vector<TrainingSpan> spans = {
      toy_span("guitar", "Riverton_(band)"), toy_span("chord", "Riverton_(band)"),
      toy_span("mayor", "Riverton_(city)"), toy_span("bridge", "Riverton_(city)")};
  std::string forward = model_to_text(train_word_expert("Riverton", spans, {}));
  std::reverse(spans.begin(), spans.end());
  std::string reversed = model_to_text(train_word_expert("Riverton", spans, {}));
  CHECK(forward == reversed);
}

TEST_CASE("one-feature problem matches a grid-search oracle") {
  // Seven of class 0, three of class 1, all firing the same single feature.
  std::vector<MaxentExample> examples;
  for (int i = 0; i < 7; ++i) examples.push_back({{0}, 0});
  for (int i = 0; i < 3; ++i) examples.push_back({{0}, 1});
  double l2 = 1.0;
  MaxentModel model = train_maxent(examples, 2, 1, {l2, 500, 1e-9});

  // At the optimum the class weights are opposite; scan w0 = t, w1 = -t.
  auto objective_1d = [&](double t) {
    std::vector<double> w = {t, -t};
    return maxent_objective(examples, 2, 1, l2, w, nullptr);
  };
  double lo = -5.0, hi = 5.0;
  double step = 0.0;
  for (int refine = 0; refine < 6; ++refine) {
    double best_t = lo, best_f = objective_1d(lo);
    step = (hi - lo) / 1000.0;
    for (double t = lo; t <= hi; t += step) {
      double f = objective_1d(t);
      if (f < best_f) {
        best_f = f;
        best_t = t;
      }
    }
    lo = best_t - step;
    hi = best_t + step;
  }
  double oracle_t = (lo + hi) / 2.0;
  CHECK(std::abs(model.weight(0, 0) - oracle_t) < 1e-4);
  CHECK(std::abs(model.weight(1, 0) + oracle_t) < 1e-4);
}

TEST_CASE("analytic gradient matches central differences") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    std::size_t n_features = 2 + rng() % 5;
    std::size_t n_classes = 2 + rng() % 3;
    std::vector<MaxentExample> examples;
    std::size_t n_examples = 3 + rng() % 10;
    for (std::size_t e = 0; e < n_examples; ++e) {
      MaxentExample ex;
      ex.label = rng() % n_classes;
      for (std::size_t f = 0; f < n_features; ++f) {
        if (rng() % 2 == 0) ex.features.push_back(static_cast<std::uint32_t>(f));
      }
      examples.push_back(std::move(ex));
    }
    double l2 = 0.5;
    std::size_t dim = n_classes * n_features;
    std::vector<double> w(dim);
    for (double& x : w) x = (static_cast<double>(rng() % 2000) - 1000.0) / 1000.0;

    std::vector<double> grad;
    maxent_objective(examples, n_classes, n_features, l2, w, &grad);

    double max_err = 0.0, max_grad = 1.0;
    const double h = 1e-5;
    for (std::size_t i = 0; i < dim; ++i) {
      std::vector<double> wp = w, wm = w;
      wp[i] += h;
      wm[i] -= h;
      double numeric =
          (maxent_objective(examples, n_classes, n_features, l2, wp, nullptr) -
           maxent_objective(examples, n_classes, n_features, l2, wm, nullptr)) /
          (2 * h);
      max_err = std::max(max_err, std::abs(numeric - grad[i]));
      max_grad = std::max(max_grad, std::abs(grad[i]));
    }
    CHECK(max_err / max_grad < 1e-5);
  }
}

TEST_CASE("probabilities sum to one") {
  std::vector<TrainingSpan> spans = {
      toy_span("guitar", "Riverton_(band)"), toy_span("mayor", "Riverton_(city)"),
      toy_span("song", "Riverton_(album)")};
  WordExpertModel model = train_word_expert("Riverton", spans, {});
  for (const char* word : {"guitar", "mayor", "unknown"}) {
    std::vector<std::string> names = featurize(toy_span(word, "?"));
    std::vector<std::uint32_t> ids;
    for (const std::string& name : names) {
      auto it = std::lower_bound(model.feature_names.begin(),
                                 model.feature_names.end(), name);
      if (it != model.feature_names.end() && *it == name) {
        ids.push_back(static_cast<std::uint32_t>(it - model.feature_names.begin()));
      }
    }
    std::vector<double> p = model.maxent.probabilities(ids);
    double sum = 0.0;
    for (double x : p) sum += x;
    CHECK(std::abs(sum - 1.0) < 1e-9);
  }
}

TEST_CASE("stronger regularization never grows the weight norm") {
  std::vector<TrainingSpan> spans = {
      toy_span("guitar", "Riverton_(band)"), toy_span("chord", "Riverton_(band)"),
      toy_span("mayor", "Riverton_(city)")};
  double previous = 1e18;
  for (double l2 : {0.1, 1.0, 10.0, 100.0}) {
    WordExpertOptions options;
    options.l2_strength = l2;
    WordExpertModel model = train_word_expert("Riverton", spans, options);
    double frob = 0.0;
    for (double w : model.maxent.weights) frob += w * w;
    CHECK(frob <= previous + 1e-12);
    previous = frob;
  }
}

TEST_CASE("prediction backs off to the dictionary and reports NoAnswer") {
  CandidateList backoff;
  backoff.query = "Riverton";
  Candidate c;
  c.entity = "Riverton_(city)";
  c.evidence = {5, 10, 0, 0};
  c.sources = kSourceAnchorWiki;
  backoff.candidates.push_back(c);

  TrainingSpan span = toy_span("anything", "?");
  Prediction fallback = predict(nullptr, span, backoff);
  CHECK(fallback.entity == "Riverton_(city)");
  CHECK(!fallback.from_classifier);

  CandidateList empty;
  CHECK_THROWS_AS(predict(nullptr, span, empty), NoAnswerError);

  std::vector<TrainingSpan> spans = {toy_span("guitar", "Riverton_(band)"),
                                     toy_span("mayor", "Riverton_(city)")};
  WordExpertModel model = train_word_expert("Riverton", spans, {});
  Prediction learned = predict(&model, toy_span("guitar", "?"), backoff);
  CHECK(learned.entity == "Riverton_(band)");
  CHECK(learned.from_classifier);
}

TEST_CASE("back-off through the full exact list picks its top entity") {
  std::vector<PageRecord> pages =
      load_pages_tsv(std::string(NEDKIT_FIXTURE_DIR) + "/hank_pages.tsv");
  CanonicalMap canonical = build_canonical_map(
      pages, load_redirects_tsv(std::string(NEDKIT_FIXTURE_DIR) + "/hank_redirects.tsv"));
  Dictionary dict = harvest(
      pages, canonical,
      load_links_tsv(std::string(NEDKIT_FIXTURE_DIR) + "/hank_links.tsv"));
  LookupIndex index(dict);
  Prediction fallback =
      predict(nullptr, toy_span("song", "?"), index.lookup_exct("Hank Williams"));
  CHECK(fallback.entity == "Hank_Williams");
  CHECK(!fallback.from_classifier);
}

TEST_CASE("unseen anchors leave prediction to the context templates") {
  std::vector<TrainingSpan> spans;
  for (int i = 0; i < 5; ++i) {
    spans.push_back(toy_span("guitar", "Riverton_(band)", "Riverton"));
    spans.push_back(toy_span("mayor", "Riverton_(city)", "Riverton"));
  }
  WordExpertModel model = train_word_expert("Riverton", spans, {});

  TrainingSpan novel_a = toy_span("mayor", "?", "Riverton Township");
  TrainingSpan novel_b = toy_span("mayor", "?", "Rivertonia");
  // Nothing mentioning an unseen anchor exists among the model features.
  for (const std::string& f : featurize(novel_a)) {
    if (f.find("Riverton_Township") != std::string::npos) {
      CHECK(!std::binary_search(model.feature_names.begin(),
                                model.feature_names.end(), f));
    }
  }
  auto [cls_a, p_a] = model.classify(featurize(novel_a));
  auto [cls_b, p_b] = model.classify(featurize(novel_b));
  CHECK(cls_a == cls_b);
  CHECK(std::abs(p_a - p_b) < 1e-12);
  CHECK(model.classes[cls_a] == "Riverton_(city)");
}

TEST_CASE("spans file round trips") {
  std::vector<TrainingSpan> spans = {superferry_span(), toy_span("mayor", "X_Page")};
  std::string text = spans_to_text(spans);
  std::vector<TrainingSpan> parsed = parse_spans(text);
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0].target == "Abu_Sayyaf");
  CHECK(parsed[0].anchor_text == "Abu Sayyaf");
  CHECK(parsed[0].tokens.size() == spans[0].tokens.size());
  CHECK(parsed[1].tokens[1].lemma == spans[1].tokens[1].lemma);
  CHECK(spans_to_text(parsed) == text);
}

TEST_CASE("span parsing rejects bad headers and ranges") {
  CHECK_THROWS_AS(parse_spans("# anchor=0:1 doc=d\nx\tx\tNN\tNOUN\n\n"), ParseError);
  CHECK_THROWS_AS(parse_spans("# target=T anchor=0:9 doc=d\nx\tx\tNN\tNOUN\n\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_spans("stray\tline\tNN\tNOUN\n"), ParseError);
}

TEST_CASE("model file round trips and training is reproducible") {
  std::vector<TrainingSpan> spans = {
      toy_span("guitar", "Riverton_(band)"), toy_span("chord", "Riverton_(band)"),
      toy_span("mayor", "Riverton_(city)"), toy_span("bridge", "Riverton_(city)")};
  WordExpertModel model = train_word_expert("Riverton", spans, {});
  std::string text = model_to_text(model);

  WordExpertModel loaded = parse_model(text);
  CHECK(loaded.target_string == "Riverton");
  CHECK(loaded.classes == model.classes);
  CHECK(loaded.l2_strength == model.l2_strength);
  CHECK(model_to_text(loaded) == text);

  WordExpertModel again = train_word_expert("Riverton", spans, {});
  CHECK(model_to_text(again) == text);

  for (const char* word : {"guitar", "mayor"}) {
    auto [cls_a, p_a] = model.classify(featurize(toy_span(word, "?")));
    auto [cls_b, p_b] = loaded.classify(featurize(toy_span(word, "?")));
    CHECK(model.classes[cls_a] == loaded.classes[cls_b]);
  }
}
