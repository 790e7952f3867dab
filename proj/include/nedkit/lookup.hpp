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
// Candidate generation over an immutable dictionary: exact, normalized and
// fuzzy views, precision-ordered cascades, and the heuristic filter rules.

#ifndef NEDKIT_LOOKUP_HPP_
#define NEDKIT_LOOKUP_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nedkit/dictionary.hpp"

namespace nedkit {

enum class Origin { kExct, kLnrm, kFuzz };

std::string_view origin_name(Origin origin);

struct Candidate {
  std::string entity;
  LinkEvidence evidence;
  std::uint8_t sources = 0;
  Origin origin = Origin::kExct;
  Ratio score(CountMode mode = CountMode::kBoth) const {
    return evidence_score(evidence, mode);
  }
};

struct CandidateList {
  std::string query;
  std::vector<Candidate> candidates;
  std::string dictionary_id;  // stage that fired: EXCT | LNRM | FUZZ | NONE

  bool empty() const { return candidates.empty(); }
};

enum class CascadeMode { kExct, kLnrm, kFuzz, kHeur };

std::string_view cascade_mode_name(CascadeMode mode);
std::optional<CascadeMode> parse_cascade_mode(std::string_view name);

// Filter thresholds, with the standard defaults.
struct HeurConfig {
  long long low_support_total_links = 10;  // rule 5a: inlinks to the page <= this
  long long low_support_string_links = 1;  // rule 5b: string->page links <= this
  double low_support_score = 0.001;        // rule 5c: score <= this
  double similar_ratio = 0.1;              // distance / length <= this
  std::size_t similar_short_length = 6;    // distance-one test needs forms longer than this
  std::size_t fuzz_max_distance = 0;       // 0 = unlimited
};

// Read-side index over one dictionary: groups keys by normalized form and
// buckets forms by byte length for the minimal-distance search.
class LookupIndex {
 public:
  explicit LookupIndex(const Dictionary& dict, CountMode counts = CountMode::kBoth);

  const Dictionary& dictionary() const { return *dict_; }
  CountMode counts() const { return counts_; }

  CandidateList lookup_exct(std::string_view s) const;
  CandidateList lookup_lnrm(std::string_view s) const;
  CandidateList lookup_fuzz(std::string_view s, std::size_t max_distance = 0) const;

  // Consulted only when every static stage misses; the seam where a
  // dynamic candidate source (a live search backend, say) can plug in.
  using DynamicStage = std::function<CandidateList(std::string_view)>;

  // EXCT first; on a miss LNRM; in FUZZ (and HEUR) mode finally FUZZ.
  // An empty result carries dictionary_id NONE.
  CandidateList cascade(std::string_view s, CascadeMode mode,
                        const HeurConfig& config = {},
                        const DynamicStage& fallback = nullptr) const;

  // Keys whose normalized forms sit at the minimal positive distance from
  // lnrm(s); exposed so tests can check the matched key set directly.
  std::vector<std::string> fuzz_matched_keys(std::string_view s,
                                             std::size_t max_distance = 0) const;

 private:
  CandidateList merge_keys(std::string_view query,
                           const std::vector<const std::string*>& keys,
                           Origin origin, std::string_view id) const;

  const Dictionary* dict_;
  CountMode counts_;
  // Normalized form -> dictionary keys with that form, sorted.
  std::map<std::string, std::vector<const std::string*>> forms_;
  // Byte length -> forms of that length, in map order.
  std::map<std::size_t, std::vector<const std::string*>> by_length_;
};

// Table-of-rules filter: drops disambiguation, date and list-of pages,
// fuzz-only suggestions without corroboration, and weakly supported pairs.
// Output is always a subset of the input.
CandidateList heur_filter(const CandidateList& list, std::string_view query,
                          const Dictionary& dict, const HeurConfig& config = {});

const Candidate* top1(const CandidateList& list);

// Pieces of the rules, exposed for direct tests.
bool is_date_title(std::string_view url_title);
bool is_list_title(std::string_view url_title);
bool is_disambiguation_title(std::string_view url_title);
bool acronym_pair(std::string_view text, std::string_view url_title);
bool string_in_title(std::string_view text, std::string_view url_title);
bool very_similar(std::string_view text, std::string_view url_title,
                  const HeurConfig& config);

}  // namespace nedkit

#endif  // NEDKIT_LOOKUP_HPP_
