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
#include <cstdio>
#include <cstdlib>
#include <tuple>
#include <unordered_map>

#include "nedkit/error.hpp"
#include "nedkit/textnorm.hpp"
#include "nedkit/tsv.hpp"

namespace nedkit {
namespace {

constexpr std::size_t kContextTokens = 100;
constexpr std::size_t kWindow = 4;
constexpr const char* kAnchorPos = "NP";

std::string underscore_join(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c == ' ') c = '_';
  }
  return out;
}

// The anchor occupies one opaque slot in n-gram templates.
struct Slot {
  const std::string* word;
  const std::string* lemma;
  const std::string* pos;
};

void emit_ngrams(const TrainingSpan& span, const std::string& anchor_token,
                 std::vector<std::string>* out) {
  static const std::string anchor_pos(kAnchorPos);
  const auto& tokens = span.tokens;
  auto slot_at = [&](std::size_t index) {
    const AnnotatedToken& t = tokens[index];
    return Slot{&t.surface, &t.lemma, &t.pos_fine};
  };
  Slot anchor{&anchor_token, &anchor_token, &anchor_pos};

  long long before1 = static_cast<long long>(span.anchor_begin) - 1;
  long long before2 = before1 - 1;
  std::size_t after1 = span.anchor_end;
  std::size_t after2 = after1 + 1;
  bool has_b1 = before1 >= 0;
  bool has_b2 = before2 >= 0;
  bool has_a1 = after1 < tokens.size();
  bool has_a2 = after2 < tokens.size();

  auto emit = [out](std::string_view name, std::initializer_list<const std::string*> parts) {
    std::string value;
    for (const std::string* part : parts) {
      if (!value.empty()) value.push_back(' ');
      value.append(*part);
    }
    out->push_back(std::string(name) + "=" + value);
  };

  if (has_b1) {
    Slot b1 = slot_at(static_cast<std::size_t>(before1));
    emit("bi_word_before", {b1.word, anchor.word});
    emit("bi_lemma_before", {b1.lemma, anchor.lemma});
    emit("bi_pos_before", {b1.pos, anchor.pos});
    if (has_b2) {
      Slot b2 = slot_at(static_cast<std::size_t>(before2));
      emit("tri_word_before", {b2.word, b1.word, anchor.word});
      emit("tri_lemma_before", {b2.lemma, b1.lemma, anchor.lemma});
      emit("tri_pos_before", {b2.pos, b1.pos, anchor.pos});
    }
  }
  if (has_a1) {
    Slot a1 = slot_at(after1);
    emit("bi_word_after", {anchor.word, a1.word});
    emit("bi_lemma_after", {anchor.lemma, a1.lemma});
    emit("bi_pos_after", {anchor.pos, a1.pos});
    if (has_a2) {
      Slot a2 = slot_at(after2);
      emit("tri_word_after", {anchor.word, a1.word, a2.word});
      emit("tri_lemma_after", {anchor.lemma, a1.lemma, a2.lemma});
      emit("tri_pos_after", {anchor.pos, a1.pos, a2.pos});
    }
  }
  if (has_b1 && has_a1) {
    Slot b1 = slot_at(static_cast<std::size_t>(before1));
    Slot a1 = slot_at(after1);
    emit("tri_word_around", {b1.word, anchor.word, a1.word});
    emit("tri_lemma_around", {b1.lemma, anchor.lemma, a1.lemma});
    emit("tri_pos_around", {b1.pos, anchor.pos, a1.pos});
  }
}

bool is_punct_token(const AnnotatedToken& token) {
  return token.pos_fine == ".";
}

const char* nearest_prefix(PosCoarse pos) {
  switch (pos) {
    case PosCoarse::kNoun: return "N";
    case PosCoarse::kVerb: return "V";
    case PosCoarse::kAdjective: return "A";
    case PosCoarse::kOther: break;
  }
  return nullptr;
}

std::string render_weight(double w) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", w);
  return buf;
}

}  // namespace

std::string_view span_mode_name(SpanMode mode) {
  switch (mode) {
    case SpanMode::kTokens100: return "t100";
    case SpanMode::kSentence: return "sent";
    case SpanMode::kParagraph: return "para";
  }
  return "t100";
}

std::optional<SpanMode> parse_span_mode(std::string_view name) {
  if (name == "t100") return SpanMode::kTokens100;
  if (name == "sent") return SpanMode::kSentence;
  if (name == "para") return SpanMode::kParagraph;
  return std::nullopt;
}

std::string_view match_mode_name(MatchMode mode) {
  return mode == MatchMode::kLex ? "lex" : "sense";
}

std::optional<MatchMode> parse_match_mode(std::string_view name) {
  if (name == "lex") return MatchMode::kLex;
  if (name == "sense") return MatchMode::kSense;
  return std::nullopt;
}

std::vector<TrainingSpan> extract_spans(
    const Corpus& corpus, std::string_view target_string,
    const std::set<std::string>& candidates, const CanonicalMap& canonical,
    SpanMode span_mode, MatchMode match_mode, const Annotator& annotator) {
  if (candidates.empty()) {
    throw NoCandidatesError("no dictionary candidates for '" +
                            std::string(target_string) + "'");
  }
  std::string needle = lnrm(target_string);
  std::vector<TrainingSpan> out;

  for (const Document& doc : corpus.docs) {
    for (const Paragraph& para : doc.paragraphs) {
      for (const Anchor& anchor : para.anchors) {
        std::string target;
        try {
          target = canonical.resolve(anchor.target);
        } catch (const EmptyTitleError&) {
          continue;
        }
        if (candidates.count(target) == 0) continue;
        if (match_mode == MatchMode::kLex) {
          std::string anchor_form = lnrm(anchor.text);
          if (needle.empty() || anchor_form.find(needle) == std::string::npos) {
            continue;
          }
        }

        // Tokenize around the anchor so it stays one opaque token.
        std::vector<RawToken> left = tokenize(
            std::string_view(para.text).substr(0, anchor.begin));
        std::vector<RawToken> right = tokenize(
            std::string_view(para.text).substr(anchor.end));
        std::vector<std::string> surfaces;
        surfaces.reserve(left.size() + right.size() + 1);
        for (const RawToken& t : left) surfaces.push_back(t.surface);
        std::size_t anchor_index = surfaces.size();
        surfaces.push_back(anchor.text);
        for (const RawToken& t : right) surfaces.push_back(t.surface);

        std::vector<AnnotatedToken> tokens = annotator.annotate(surfaces);
        // The anchor is opaque: surface-as-lemma, proper-noun tag.
        tokens[anchor_index].lemma = tokens[anchor_index].surface;
        tokens[anchor_index].pos_fine = kAnchorPos;
        tokens[anchor_index].pos = PosCoarse::kNoun;

        std::size_t begin = 0, end = tokens.size();
        switch (span_mode) {
          case SpanMode::kTokens100:
            begin = anchor_index >= kContextTokens ? anchor_index - kContextTokens : 0;
            end = std::min(tokens.size(), anchor_index + 1 + kContextTokens);
            break;
          case SpanMode::kSentence: {
            std::vector<std::size_t> starts = annotator.sentence_starts(tokens);
            for (std::size_t s : starts) {
              if (s <= anchor_index) begin = s;
            }
            end = tokens.size();
            for (std::size_t s : starts) {
              if (s > anchor_index) {
                end = s;
                break;
              }
            }
            break;
          }
          case SpanMode::kParagraph:
            break;
        }

        TrainingSpan span;
        span.tokens.assign(tokens.begin() + static_cast<std::ptrdiff_t>(begin),
                           tokens.begin() + static_cast<std::ptrdiff_t>(end));
        span.anchor_begin = anchor_index - begin;
        span.anchor_end = span.anchor_begin + 1;
        span.anchor_text = anchor.text;
        span.target = target;
        span.source_doc = doc.id;
        out.push_back(std::move(span));
      }
    }
  }
  return out;
}

std::vector<std::string> featurize(const TrainingSpan& span) {
  std::vector<std::string> features;
  std::string anchor_token = underscore_join(span.anchor_text);
  features.push_back("anchor=" + anchor_token);

  const auto& tokens = span.tokens;
  auto in_anchor = [&](std::size_t i) {
    return i >= span.anchor_begin && i < span.anchor_end;
  };

  // Unordered bag of context lemmas.
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (in_anchor(i) || is_punct_token(tokens[i])) continue;
    features.push_back("bow=" + tokens[i].lemma);
  }

  // N/V/A lemmas within four positions of the anchor.
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (in_anchor(i)) continue;
    bool near_left = i < span.anchor_begin && span.anchor_begin - i <= kWindow;
    bool near_right = i >= span.anchor_end && i - span.anchor_end < kWindow;
    if (!near_left && !near_right) continue;
    if (nearest_prefix(tokens[i].pos) != nullptr) {
      features.push_back("win4=" + tokens[i].lemma);
    }
  }

  // Nearest noun/verb/adjective on each side, lemma and word.
  bool seen_before[3] = {false, false, false};
  for (std::size_t i = span.anchor_begin; i-- > 0;) {
    const char* prefix = nearest_prefix(tokens[i].pos);
    if (prefix == nullptr) continue;
    std::size_t slot = tokens[i].pos == PosCoarse::kNoun ? 0
                       : tokens[i].pos == PosCoarse::kVerb ? 1 : 2;
    if (seen_before[slot]) continue;
    seen_before[slot] = true;
    features.push_back(std::string("prev") + prefix + "_lemma=" + tokens[i].lemma);
    features.push_back(std::string("prev") + prefix + "_word=" + tokens[i].surface);
  }
  bool seen_after[3] = {false, false, false};
  for (std::size_t i = span.anchor_end; i < tokens.size(); ++i) {
    const char* prefix = nearest_prefix(tokens[i].pos);
    if (prefix == nullptr) continue;
    std::size_t slot = tokens[i].pos == PosCoarse::kNoun ? 0
                       : tokens[i].pos == PosCoarse::kVerb ? 1 : 2;
    if (seen_after[slot]) continue;
    seen_after[slot] = true;
    features.push_back(std::string("next") + prefix + "_lemma=" + tokens[i].lemma);
    features.push_back(std::string("next") + prefix + "_word=" + tokens[i].surface);
  }

  emit_ngrams(span, anchor_token, &features);

  std::sort(features.begin(), features.end());
  features.erase(std::unique(features.begin(), features.end()), features.end());
  return features;
}

std::pair<std::size_t, double> WordExpertModel::classify(
    const std::vector<std::string>& features) const {
  std::vector<std::uint32_t> ids;
  ids.reserve(features.size());
  for (const std::string& name : features) {
    auto it = std::lower_bound(feature_names.begin(), feature_names.end(), name);
    if (it != feature_names.end() && *it == name) {
      ids.push_back(static_cast<std::uint32_t>(it - feature_names.begin()));
    }
  }
  std::vector<double> p = maxent.probabilities(ids);
  std::size_t arg = 0;
  for (std::size_t c = 1; c < p.size(); ++c) {
    if (p[c] > p[arg]) arg = c;
  }
  return {arg, p[arg]};
}

WordExpertModel train_word_expert(std::string_view target_string,
                                  const std::vector<TrainingSpan>& spans,
                                  const WordExpertOptions& options) {
  WordExpertModel model;
  model.target_string = std::string(target_string);
  model.l2_strength = options.l2_strength;

  // Sorted class and feature tables make training independent of span order.
  std::map<std::string, long long> class_counts;
  for (const TrainingSpan& span : spans) ++class_counts[span.target];
  if (class_counts.size() < 2) {
    throw DegenerateTrainingError(
        "training data for '" + model.target_string + "' maps to " +
        std::to_string(class_counts.size()) + " entity(ies)");
  }
  std::unordered_map<std::string, std::uint32_t> class_id;
  for (const auto& [entity, count] : class_counts) {
    class_id.emplace(entity, static_cast<std::uint32_t>(model.classes.size()));
    model.classes.push_back(entity);
    model.train_spans_per_class.push_back(count);
  }

  std::vector<std::vector<std::string>> span_features;
  span_features.reserve(spans.size());
  std::set<std::string> names;
  for (const TrainingSpan& span : spans) {
    span_features.push_back(featurize(span));
    names.insert(span_features.back().begin(), span_features.back().end());
  }
  model.feature_names.assign(names.begin(), names.end());
  std::unordered_map<std::string_view, std::uint32_t> feature_id;
  for (std::size_t i = 0; i < model.feature_names.size(); ++i) {
    feature_id.emplace(model.feature_names[i], static_cast<std::uint32_t>(i));
  }

  std::vector<MaxentExample> examples;
  examples.reserve(spans.size());
  for (std::size_t i = 0; i < spans.size(); ++i) {
    MaxentExample ex;
    ex.label = class_id.at(spans[i].target);
    ex.features.reserve(span_features[i].size());
    for (const std::string& name : span_features[i]) {
      ex.features.push_back(feature_id.at(name));
    }
    examples.push_back(std::move(ex));
  }
  // The objective is order-invariant, but sort for bit-stable summation.
  std::sort(examples.begin(), examples.end(),
            [](const MaxentExample& a, const MaxentExample& b) {
              if (a.label != b.label) return a.label < b.label;
              return a.features < b.features;
            });

  MaxentOptions maxent_options;
  maxent_options.l2_strength = options.l2_strength;
  maxent_options.max_iterations = options.max_iterations;
  maxent_options.tolerance = options.tolerance;
  model.maxent = train_maxent(examples, model.classes.size(),
                              model.feature_names.size(), maxent_options);
  return model;
}

Prediction predict(const WordExpertModel* model, const TrainingSpan& span,
                   const CandidateList& backoff) {
  if (model != nullptr && model->classes.size() >= 2) {
    auto [cls, prob] = model->classify(featurize(span));
    return {model->classes[cls], prob, true};
  }
  if (const Candidate* best = top1(backoff)) {
    return {best->entity, best->score().value(), false};
  }
  throw NoAnswerError("no classifier and empty back-off list");
}

std::string spans_to_text(const std::vector<TrainingSpan>& spans) {
  std::string out;
  for (const TrainingSpan& span : spans) {
    out.append("# target=");
    out.append(span.target);
    out.append(" anchor=");
    out.append(std::to_string(span.anchor_begin));
    out.push_back(':');
    out.append(std::to_string(span.anchor_end));
    out.append(" doc=");
    out.append(span.source_doc);
    out.push_back('\n');
    for (const AnnotatedToken& token : span.tokens) {
      out.append(token.surface);
      out.push_back('\t');
      out.append(token.lemma);
      out.push_back('\t');
      out.append(token.pos_fine);
      out.push_back('\t');
      out.append(pos_coarse_name(token.pos));
      out.push_back('\n');
    }
    out.push_back('\n');
  }
  return out;
}

std::vector<TrainingSpan> parse_spans(std::string_view content, const std::string& file) {
  std::vector<TrainingSpan> spans;
  TrainingSpan current;
  bool in_span = false;
  std::size_t line_no = 0;

  auto flush = [&]() {
    if (!in_span) return;
    if (current.anchor_end > current.tokens.size() ||
        current.anchor_begin >= current.anchor_end) {
      throw ParseError(file, line_no, "anchor range out of bounds");
    }
    std::string text;
    for (std::size_t i = current.anchor_begin; i < current.anchor_end; ++i) {
      if (!text.empty()) text.push_back(' ');
      text.append(current.tokens[i].surface);
    }
    current.anchor_text = std::move(text);
    spans.push_back(std::move(current));
    current = TrainingSpan();
    in_span = false;
  };

  std::string_view rest = content;
  while (!rest.empty()) {
    ++line_no;
    std::size_t eol = rest.find('\n');
    std::string_view line = eol == std::string_view::npos ? rest : rest.substr(0, eol);
    rest = eol == std::string_view::npos ? std::string_view() : rest.substr(eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line.empty()) {
      flush();
      continue;
    }
    if (line[0] == '#') {
      flush();
      in_span = true;
      for (std::string_view part : split(line.substr(1), ' ')) {
        if (part.rfind("target=", 0) == 0) {
          current.target = std::string(part.substr(7));
        } else if (part.rfind("anchor=", 0) == 0) {
          std::string_view range = part.substr(7);
          std::size_t colon = range.find(':');
          if (colon == std::string_view::npos) {
            throw ParseError(file, line_no, "bad anchor range");
          }
          current.anchor_begin = static_cast<std::size_t>(
              parse_count(range.substr(0, colon), file, line_no));
          current.anchor_end = static_cast<std::size_t>(
              parse_count(range.substr(colon + 1), file, line_no));
        } else if (part.rfind("doc=", 0) == 0) {
          current.source_doc = std::string(part.substr(4));
        }
      }
      if (current.target.empty()) throw ParseError(file, line_no, "span without target");
      continue;
    }
    if (!in_span) throw ParseError(file, line_no, "token line outside a span");
    std::vector<std::string_view> fields = split(line, '\t');
    if (fields.size() != 4) throw ParseError(file, line_no, "expected 4 token fields");
    AnnotatedToken token;
    token.surface = std::string(fields[0]);
    token.lemma = std::string(fields[1]);
    token.pos_fine = std::string(fields[2]);
    token.pos = parse_pos_coarse(fields[3], file, line_no);
    if (token.lemma.empty() || token.pos_fine.empty()) {
      throw ParseError(file, line_no, "empty lemma or tag");
    }
    current.tokens.push_back(std::move(token));
  }
  flush();
  return spans;
}

std::vector<TrainingSpan> load_spans(const std::string& path) {
  return parse_spans(read_file(path), path);
}

std::string model_to_text(const WordExpertModel& model) {
  std::string out;
  out.append("#model\t");
  out.append(model.target_string);
  out.push_back('\n');
  out.append("#l2\t");
  out.append(render_weight(model.l2_strength));
  out.push_back('\n');
  out.append("#classes");
  for (std::size_t c = 0; c < model.classes.size(); ++c) {
    out.push_back('\t');
    out.append(model.classes[c]);
    out.push_back(':');
    out.append(std::to_string(model.train_spans_per_class[c]));
  }
  out.push_back('\n');
  out.append("#features\t");
  out.append(std::to_string(model.feature_names.size()));
  out.push_back('\n');
  for (std::size_t c = 0; c < model.classes.size(); ++c) {
    for (std::size_t f = 0; f < model.feature_names.size(); ++f) {
      double w = model.maxent.weight(c, f);
      if (w == 0.0) continue;
      out.append(model.classes[c]);
      out.push_back('\t');
      out.append(model.feature_names[f]);
      out.push_back('\t');
      out.append(render_weight(w));
      out.push_back('\n');
    }
  }
  return out;
}

WordExpertModel parse_model(std::string_view content, const std::string& file) {
  WordExpertModel model;
  std::size_t line_no = 0;
  std::string_view rest = content;
  bool have_header = false;
  std::vector<std::tuple<std::string, std::string, double>> rows;

  while (!rest.empty()) {
    ++line_no;
    std::size_t eol = rest.find('\n');
    std::string_view line = eol == std::string_view::npos ? rest : rest.substr(0, eol);
    rest = eol == std::string_view::npos ? std::string_view() : rest.substr(eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    std::vector<std::string_view> fields = split(line, '\t');
    if (fields[0] == "#model") {
      if (fields.size() != 2) throw ParseError(file, line_no, "bad #model row");
      model.target_string = std::string(fields[1]);
      have_header = true;
    } else if (fields[0] == "#l2") {
      if (fields.size() != 2) throw ParseError(file, line_no, "bad #l2 row");
      model.l2_strength = std::strtod(std::string(fields[1]).c_str(), nullptr);
    } else if (fields[0] == "#classes") {
      for (std::size_t i = 1; i < fields.size(); ++i) {
        std::string_view field = fields[i];
        std::size_t colon = field.rfind(':');
        if (colon == std::string_view::npos) {
          throw ParseError(file, line_no, "bad #classes row");
        }
        model.classes.push_back(std::string(field.substr(0, colon)));
        model.train_spans_per_class.push_back(
            parse_count(field.substr(colon + 1), file, line_no));
      }
    } else if (fields[0] == "#features") {
      // Count recorded for inspection; names are recovered from the rows.
    } else {
      if (fields.size() != 3) throw ParseError(file, line_no, "bad weight row");
      rows.emplace_back(std::string(fields[0]), std::string(fields[1]),
                        std::strtod(std::string(fields[2]).c_str(), nullptr));
    }
  }
  if (!have_header || model.classes.empty()) {
    throw ParseError(file, line_no, "missing model header");
  }

  std::set<std::string> names;
  for (const auto& [cls, feature, weight] : rows) names.insert(feature);
  model.feature_names.assign(names.begin(), names.end());
  model.maxent.n_classes = model.classes.size();
  model.maxent.n_features = model.feature_names.size();
  model.maxent.weights.assign(model.maxent.n_classes * model.maxent.n_features, 0.0);
  for (const auto& [cls, feature, weight] : rows) {
    auto cit = std::find(model.classes.begin(), model.classes.end(), cls);
    if (cit == model.classes.end()) throw ParseError(file, 0, "unknown class " + cls);
    std::size_t c = static_cast<std::size_t>(cit - model.classes.begin());
    auto fit = std::lower_bound(model.feature_names.begin(), model.feature_names.end(),
                                feature);
    std::size_t f = static_cast<std::size_t>(fit - model.feature_names.begin());
    model.maxent.weights[c * model.maxent.n_features + f] = weight;
  }
  return model;
}

WordExpertModel load_model(const std::string& path) {
  return parse_model(read_file(path), path);
}

}  // namespace nedkit
