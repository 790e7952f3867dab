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
// Word experts: one context-sensitive classifier per target string,
// trained from anchor contexts, predicting among that string's candidate
// entities with dictionary back-off.

#ifndef NEDKIT_WORDEXPERT_HPP_
#define NEDKIT_WORDEXPERT_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nedkit/annotate.hpp"
#include "nedkit/corpus.hpp"
#include "nedkit/lookup.hpp"
#include "nedkit/maxent.hpp"

namespace nedkit {

struct TrainingSpan {
  std::vector<AnnotatedToken> tokens;
  std::size_t anchor_begin = 0;  // token interval [begin, end)
  std::size_t anchor_end = 0;
  std::string anchor_text;
  std::string target;  // canonical entity
  std::string source_doc;
};

enum class SpanMode { kTokens100, kSentence, kParagraph };
enum class MatchMode { kLex, kSense };

std::string_view span_mode_name(SpanMode mode);
std::optional<SpanMode> parse_span_mode(std::string_view name);
std::string_view match_mode_name(MatchMode mode);
std::optional<MatchMode> parse_match_mode(std::string_view name);

// Gathers spans around anchors whose resolved target is one of the
// string's candidate entities. LEX additionally requires lnrm(s) to be a
// substring of the anchor text's lnrm form. Throws NoCandidatesError when
// `candidates` is empty.
std::vector<TrainingSpan> extract_spans(
    const Corpus& corpus, std::string_view target_string,
    const std::set<std::string>& candidates, const CanonicalMap& canonical,
    SpanMode span_mode, MatchMode match_mode, const Annotator& annotator);

// Binary feature names for one span: anchor, bag of span lemmas, N/V/A
// lemmas in a four-token window, nearest N/V/A to each side, and
// word/lemma/POS bigrams and trigrams with the anchor as one opaque slot.
std::vector<std::string> featurize(const TrainingSpan& span);

struct WordExpertModel {
  std::string target_string;
  std::vector<std::string> classes;        // sorted entities
  std::vector<std::string> feature_names;  // sorted, ids are positions
  double l2_strength = 1.0;
  std::vector<long long> train_spans_per_class;
  MaxentModel maxent;

  // (class index, probability); ties resolve to the earlier class.
  std::pair<std::size_t, double> classify(const std::vector<std::string>& features) const;
};

struct Prediction {
  std::string entity;
  double score = 0.0;
  bool from_classifier = false;
};

struct WordExpertOptions {
  double l2_strength = 1.0;
  int max_iterations = 200;
  double tolerance = 1e-6;
};

// Throws DegenerateTrainingError unless at least two classes have spans.
WordExpertModel train_word_expert(std::string_view target_string,
                                  const std::vector<TrainingSpan>& spans,
                                  const WordExpertOptions& options = {});

// Classifier answer when a model exists, otherwise the back-off list's top
// candidate. Throws NoAnswerError when both are empty.
Prediction predict(const WordExpertModel* model, const TrainingSpan& span,
                   const CandidateList& backoff);

// Token-per-line spans file: `# target=<entity> anchor=<b>:<e> doc=<id>`
// headers, `surface TAB lemma TAB pos_fine TAB pos_coarse` rows, blank
// line terminators.
std::string spans_to_text(const std::vector<TrainingSpan>& spans);
std::vector<TrainingSpan> parse_spans(std::string_view content,
                                      const std::string& file = "<memory>");
std::vector<TrainingSpan> load_spans(const std::string& path);

// Model file: header rows then `class TAB feature TAB weight` with
// 9-significant-digit weights, sorted by class then feature; bit-exact.
std::string model_to_text(const WordExpertModel& model);
WordExpertModel parse_model(std::string_view content,
                            const std::string& file = "<memory>");
WordExpertModel load_model(const std::string& path);

}  // namespace nedkit

#endif  // NEDKIT_WORDEXPERT_HPP_
