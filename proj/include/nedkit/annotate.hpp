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
// Pluggable linguistic annotation. The bundled default is rule-based:
// a suffix-stripping lemmatizer, a closed-class lexicon plus suffix
// heuristics for part of speech, and terminal-punctuation sentence splits.

#ifndef NEDKIT_ANNOTATE_HPP_
#define NEDKIT_ANNOTATE_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace nedkit {

enum class PosCoarse { kNoun, kVerb, kAdjective, kOther };

std::string_view pos_coarse_name(PosCoarse pos);
PosCoarse parse_pos_coarse(std::string_view name, const std::string& file,
                           std::size_t line);

struct AnnotatedToken {
  std::string surface;
  std::string lemma;
  std::string pos_fine;
  PosCoarse pos = PosCoarse::kOther;
};

// Raw token with byte offsets into the text it came from.
struct RawToken {
  std::string surface;
  std::size_t begin = 0;
  std::size_t end = 0;
};

std::vector<RawToken> tokenize(std::string_view text);

class Annotator {
 public:
  virtual ~Annotator() = default;
  virtual std::vector<AnnotatedToken> annotate(
      const std::vector<std::string>& surfaces) const = 0;
  // Indices starting a new sentence (0 is always one when non-empty).
  virtual std::vector<std::size_t> sentence_starts(
      const std::vector<AnnotatedToken>& tokens) const = 0;
};

class RuleAnnotator : public Annotator {
 public:
  std::vector<AnnotatedToken> annotate(
      const std::vector<std::string>& surfaces) const override;
  std::vector<std::size_t> sentence_starts(
      const std::vector<AnnotatedToken>& tokens) const override;
};

std::string rule_lemma(std::string_view surface);

}  // namespace nedkit

#endif  // NEDKIT_ANNOTATE_HPP_
