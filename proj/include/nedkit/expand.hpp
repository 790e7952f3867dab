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
// Context-sensitive mention expansion: replace a mention with the longest
// coreferent, containing, or title-matching string found in its document,
// re-query, and intersect with the original candidates.

#ifndef NEDKIT_EXPAND_HPP_
#define NEDKIT_EXPAND_HPP_

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "nedkit/lookup.hpp"

namespace nedkit {

enum class ExpansionEvidence { kNerChunk, kCoreference, kTitleMatch, kNone };

std::string_view expansion_evidence_name(ExpansionEvidence evidence);

struct ExpansionResult {
  std::string original;
  std::string expanded;  // equals original when no expansion applied
  ExpansionEvidence evidence = ExpansionEvidence::kNone;
  CandidateList final_candidates;
};

// Standoff annotation row: byte offsets into the document's plain text.
struct DocAnnotation {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool coref = false;       // false: NER chunk; true: coreference mention
  std::string label;        // NER label or coreference chain id
};

std::vector<DocAnnotation> load_annotations(const std::string& path);

struct TitleMatch {
  std::string title;  // the candidate url_title that matched
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Case-insensitive whole-word occurrences of candidate titles (despaced,
// trailing parenthetical stripped) inside the document text.
std::vector<TitleMatch> title_matches_in_doc(std::string_view doc_text,
                                             const CandidateList& candidates);

using LookupFn = std::function<CandidateList(const std::string&)>;

// Gathers expansions from NER chunks containing the mention, coreference
// chain mates, and candidate-title matches; takes the longest (ties:
// earliest), re-queries, and intersects with the original candidate set.
// Throws MentionNotFoundError when the mention does not occur in the text.
ExpansionResult expand_mention(std::string_view doc_text, std::string_view mention,
                               const CandidateList& original, const LookupFn& lookup,
                               const std::vector<DocAnnotation>& annotations = {});

}  // namespace nedkit

#endif  // NEDKIT_EXPAND_HPP_
