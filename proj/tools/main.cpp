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
// nedkit command line: build dictionaries from link evidence, look up
// candidate entities, train per-string classifiers, disambiguate queries
// and score the answers.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "nedkit/annotate.hpp"
#include "nedkit/corpus.hpp"
#include "nedkit/dictionary.hpp"
#include "nedkit/error.hpp"
#include "nedkit/evalkit.hpp"
#include "nedkit/expand.hpp"
#include "nedkit/lookup.hpp"
#include "nedkit/textnorm.hpp"
#include "nedkit/titles.hpp"
#include "nedkit/tsv.hpp"
#include "nedkit/wordexpert.hpp"

namespace {

using namespace nedkit;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSchema = 2;
constexpr int kExitInternal = 3;

struct CommonOptions {
  std::string cascade = "lnrm";
  std::string counts = "both";
  HeurConfig heur;
};

void add_common_options(CLI::App* cmd, CommonOptions* options) {
  cmd->add_option("--cascade", options->cascade, "exct | lnrm | fuzz | heur")
      ->check(CLI::IsMember({"exct", "lnrm", "fuzz", "heur"}));
  cmd->add_option("--counts", options->counts,
                  "score from both | wiki | web count partitions")
      ->check(CLI::IsMember({"both", "wiki", "web"}));
  cmd->add_option("--heur-total-links", options->heur.low_support_total_links,
                  "rule 5: drop pages with at most this many total inlinks");
  cmd->add_option("--heur-string-links", options->heur.low_support_string_links,
                  "rule 5: drop pairs with at most this many string links");
  cmd->add_option("--heur-min-score", options->heur.low_support_score,
                  "rule 5: drop pairs scoring at most this");
  cmd->add_option("--heur-similar-ratio", options->heur.similar_ratio,
                  "rule 4: edit-distance/length ratio bound");
  cmd->add_option("--heur-similar-length", options->heur.similar_short_length,
                  "rule 4: distance-one test needs forms longer than this");
  cmd->add_option("--fuzz-max-distance", options->heur.fuzz_max_distance,
                  "cap for the fuzzy search (0 = unlimited)");
}

CascadeMode cascade_of(const CommonOptions& options) {
  return *parse_cascade_mode(options.cascade);
}

CountMode counts_of(const CommonOptions& options) {
  if (options.counts == "wiki") return CountMode::kWikiOnly;
  if (options.counts == "web") return CountMode::kWebOnly;
  return CountMode::kBoth;
}

CandidateList generate_candidates(const LookupIndex& index, const Dictionary& dict,
                                  std::string_view query, const CommonOptions& options) {
  CascadeMode mode = cascade_of(options);
  CandidateList list = index.cascade(
      query, mode == CascadeMode::kHeur ? CascadeMode::kFuzz : mode, options.heur);
  if (mode == CascadeMode::kHeur) {
    return heur_filter(list, query, dict, options.heur);
  }
  return list;
}

std::unordered_set<std::string> kb_title_set(const std::string& path) {
  std::unordered_set<std::string> titles;
  for_each_tsv_row(path, 3, [&](std::size_t, const std::vector<std::string_view>& f) {
    titles.insert(canonicalize_title(f[1]));
  });
  return titles;
}

// Builds a classification span around the mention's first occurrence in
// the document, mirroring training-span construction.
std::optional<TrainingSpan> query_span(const Document& doc, std::string_view mention,
                                       SpanMode span_mode, const Annotator& annotator) {
  for (const Paragraph& para : doc.paragraphs) {
    std::size_t pos = para.text.find(mention);
    if (pos == std::string::npos) continue;
    Corpus one;
    Document copy;
    copy.id = doc.id;
    Paragraph with_anchor = para;
    with_anchor.anchors.clear();
    with_anchor.anchors.push_back(
        {"Query_Target", std::string(mention), pos, pos + mention.size()});
    copy.paragraphs.push_back(std::move(with_anchor));
    one.docs.push_back(std::move(copy));
    std::vector<TrainingSpan> spans =
        extract_spans(one, mention, {"Query_Target"}, CanonicalMap(), span_mode,
                      MatchMode::kSense, annotator);
    if (!spans.empty()) return spans.front();
  }
  return std::nullopt;
}

int cmd_build_canonical(const std::string& pages_path, const std::string& redirects_path,
                        const std::string& kb_path, const std::string& out_path) {
  std::vector<PageRecord> pages = load_pages_tsv(pages_path);
  std::vector<RedirectEdge> redirects = load_redirects_tsv(redirects_path);
  std::unordered_set<std::string> kb;
  if (!kb_path.empty()) kb = kb_title_set(kb_path);
  CanonicalMap map = build_canonical_map(pages, redirects, kb);
  write_file(out_path, map.to_tsv());
  std::cerr << "wrote " << map.size() << " titles to " << out_path << "\n";
  return kExitOk;
}

int cmd_build_dict(const std::string& pages_path, const std::string& redirects_path,
                   const std::vector<std::string>& links_paths, const std::string& kb_path,
                   const std::string& out_path, const std::string& canonical_out) {
  std::vector<PageRecord> pages = load_pages_tsv(pages_path);
  std::vector<RedirectEdge> redirects = load_redirects_tsv(redirects_path);
  std::unordered_set<std::string> kb;
  if (!kb_path.empty()) kb = kb_title_set(kb_path);
  CanonicalMap map = build_canonical_map(pages, redirects, kb);
  if (!canonical_out.empty()) write_file(canonical_out, map.to_tsv());

  DictionaryBuilder builder(&map);
  builder.add_pages(pages);
  for (const std::string& path : links_paths) builder.add_links_tsv(path);
  Dictionary dict = builder.build();
  write_file(out_path, dict.to_tsv());
  std::cerr << "wrote " << dict.entries().size() << " strings to " << out_path << "\n";
  return kExitOk;
}

int cmd_lookup(const std::string& dict_path, const std::string& canonical_path,
               const std::string& query, const CommonOptions& options) {
  std::optional<CanonicalMap> canonical;
  if (!canonical_path.empty()) canonical = CanonicalMap::from_tsv(canonical_path);
  Dictionary dict =
      Dictionary::from_tsv(dict_path, canonical ? &*canonical : nullptr);
  LookupIndex index(dict, counts_of(options));
  CandidateList list = generate_candidates(index, dict, query, options);
  std::size_t rank = 0;
  for (const Candidate& c : list.candidates) {
    std::cout << ++rank << '\t' << c.entity << '\t'
              << c.score(counts_of(options)).render_4dp() << '\t'
              << origin_name(c.origin) << '\n';
  }
  return kExitOk;
}

int cmd_extract_spans(const std::string& corpus_path, const std::string& dict_path,
                      const std::string& canonical_path, const std::string& target,
                      const std::string& span_mode, const std::string& match_mode,
                      const std::string& out_path, const CommonOptions& options) {
  Corpus corpus = load_corpus(corpus_path);
  std::optional<CanonicalMap> canonical;
  if (!canonical_path.empty()) canonical = CanonicalMap::from_tsv(canonical_path);
  CanonicalMap empty_map;
  const CanonicalMap& map = canonical ? *canonical : empty_map;
  Dictionary dict = Dictionary::from_tsv(dict_path, canonical ? &*canonical : nullptr);
  LookupIndex index(dict, counts_of(options));

  CandidateList list = generate_candidates(index, dict, target, options);
  std::set<std::string> candidates;
  for (const Candidate& c : list.candidates) candidates.insert(c.entity);

  RuleAnnotator annotator;
  std::vector<TrainingSpan> spans =
      extract_spans(corpus, target, candidates, map, *parse_span_mode(span_mode),
                    *parse_match_mode(match_mode), annotator);
  write_file(out_path, spans_to_text(spans));
  std::cerr << "wrote " << spans.size() << " spans to " << out_path << "\n";
  return kExitOk;
}

int cmd_train(const std::string& spans_path, const std::string& target_string,
              double l2, int max_iterations, const std::string& out_path) {
  std::vector<TrainingSpan> spans = load_spans(spans_path);
  WordExpertOptions options;
  options.l2_strength = l2;
  options.max_iterations = max_iterations;
  WordExpertModel model = train_word_expert(target_string, spans, options);
  write_file(out_path, model_to_text(model));
  std::cerr << "trained " << model.classes.size() << "-class model on "
            << spans.size() << " spans\n";
  return kExitOk;
}

std::map<std::string, WordExpertModel> load_models_dir(const std::string& dir) {
  std::map<std::string, WordExpertModel> models;
  std::vector<std::string> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".model") paths.push_back(entry.path().string());
  }
  std::sort(paths.begin(), paths.end());
  for (const std::string& path : paths) {
    WordExpertModel model = load_model(path);
    std::string key = model.target_string;
    models.emplace(std::move(key), std::move(model));
  }
  return models;
}

int cmd_disambiguate(const std::string& queries_path, const std::string& docs_path,
                     const std::string& dict_path, const std::string& canonical_path,
                     const std::string& kb_path, const std::string& models_dir,
                     const std::string& annotations_dir, const std::string& span_mode,
                     bool expand, int workers, const std::string& out_path,
                     const CommonOptions& options) {
  std::vector<Query> queries = load_queries_xml(queries_path);
  Corpus docs = load_corpus(docs_path);
  std::optional<CanonicalMap> canonical;
  if (!canonical_path.empty()) canonical = CanonicalMap::from_tsv(canonical_path);
  Dictionary dict = Dictionary::from_tsv(dict_path, canonical ? &*canonical : nullptr);
  LookupIndex index(dict, counts_of(options));
  KnowledgeBase kb;
  if (!kb_path.empty()) kb = KnowledgeBase::from_tsv(kb_path);
  std::map<std::string, WordExpertModel> models;
  if (!models_dir.empty()) models = load_models_dir(models_dir);
  RuleAnnotator annotator;
  SpanMode mode = *parse_span_mode(span_mode);

  auto annotations_for = [&](const std::string& docid) {
    std::vector<DocAnnotation> out;
    if (annotations_dir.empty()) return out;
    std::filesystem::path path =
        std::filesystem::path(annotations_dir) / (docid + ".ann");
    if (std::filesystem::exists(path)) out = load_annotations(path.string());
    return out;
  };

  auto answer_one = [&](const Query& query) {
    const Document* doc = docs.find(query.docid);
    if (doc == nullptr) return AnswerRow{query.id, std::string(kNil), "!missing_doc"};

    CandidateList candidates = generate_candidates(index, dict, query.name, options);
    if (expand) {
      try {
        ExpansionResult expansion = expand_mention(
            doc->plain_text(), query.name, candidates,
            [&](const std::string& s) {
              return generate_candidates(index, dict, s, options);
            },
            annotations_for(query.docid));
        candidates = expansion.final_candidates;
      } catch (const MentionNotFoundError&) {
        // Stick with the unexpanded candidates.
      }
    }

    std::string entity;
    auto model_it = models.find(query.name);
    if (model_it != models.end()) {
      std::optional<TrainingSpan> span = query_span(*doc, query.name, mode, annotator);
      if (span.has_value()) {
        entity = predict(&model_it->second, *span, candidates).entity;
      }
    }
    if (entity.empty()) {
      const Candidate* best = top1(candidates);
      if (best != nullptr) entity = best->entity;
    }
    if (entity.empty()) return AnswerRow{query.id, std::string(kNil), "-"};
    return AnswerRow{query.id, kb.map_to_kb(entity), entity};
  };

  std::vector<AnswerRow> answers(queries.size());
  int n_workers = std::max(1, workers);
  if (n_workers == 1) {
    for (std::size_t i = 0; i < queries.size(); ++i) answers[i] = answer_one(queries[i]);
  } else {
    // Workers pull indices; the output order stays the query order.
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w) {
      pool.emplace_back([&]() {
        while (true) {
          std::size_t i = next.fetch_add(1);
          if (i >= queries.size()) break;
          answers[i] = answer_one(queries[i]);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  std::string rendered = answers_to_tsv(answers);
  if (out_path.empty()) {
    std::cout << rendered;
  } else {
    write_file(out_path, rendered);
    std::cerr << "wrote " << answers.size() << " answers to " << out_path << "\n";
  }
  return kExitOk;
}

struct CurveInputs {
  std::vector<std::string> gold_ids;
  std::vector<std::vector<std::string>> ranked;
};

CurveInputs curve_inputs(const std::vector<Query>& queries,
                         const std::vector<GoldRow>& gold, const LookupIndex& index,
                         const Dictionary& dict, const KnowledgeBase* kb,
                         const CommonOptions& options) {
  std::map<std::string_view, const GoldRow*> gold_by_id;
  for (const GoldRow& g : gold) gold_by_id.emplace(g.query_id, &g);

  CurveInputs inputs;
  for (const Query& query : queries) {
    auto it = gold_by_id.find(query.id);
    if (it == gold_by_id.end()) continue;
    const GoldRow& g = *it->second;
    std::string gold_id;
    if (kb != nullptr) {
      gold_id = g.kb_id;
    } else {
      gold_id = g.wiki_title == "-" ? std::string(kNil) : g.wiki_title;
    }
    CandidateList list = generate_candidates(index, dict, query.name, options);
    std::vector<std::string> ids;
    ids.reserve(list.candidates.size());
    for (const Candidate& c : list.candidates) {
      ids.push_back(kb != nullptr ? kb->map_to_kb(c.entity) : c.entity);
    }
    inputs.gold_ids.push_back(std::move(gold_id));
    inputs.ranked.push_back(std::move(ids));
  }
  return inputs;
}

std::vector<std::size_t> parse_ks(const std::string& spec) {
  std::vector<std::size_t> ks;
  for (std::string_view part : split(spec, ',')) {
    if (part.empty()) continue;
    if (part == "inf") {
      ks.push_back(0);
    } else {
      ks.push_back(static_cast<std::size_t>(parse_count(part, "--ks", 0)));
    }
  }
  if (ks.empty()) throw ParseError("--ks", 0, "no cutoffs given");
  return ks;
}

int cmd_pr_curve(const std::string& queries_path, const std::string& gold_path,
                 const std::string& dict_path, const std::string& canonical_path,
                 const std::string& kb_path, const std::string& ks_spec,
                 const std::string& out_path, const CommonOptions& options) {
  std::vector<Query> queries = load_queries_xml(queries_path);
  std::vector<GoldRow> gold = load_gold_tsv(gold_path);
  std::optional<CanonicalMap> canonical;
  if (!canonical_path.empty()) canonical = CanonicalMap::from_tsv(canonical_path);
  Dictionary dict = Dictionary::from_tsv(dict_path, canonical ? &*canonical : nullptr);
  LookupIndex index(dict, counts_of(options));
  std::optional<KnowledgeBase> kb;
  if (!kb_path.empty()) kb = KnowledgeBase::from_tsv(kb_path);

  CurveInputs inputs =
      curve_inputs(queries, gold, index, dict, kb ? &*kb : nullptr, options);
  std::vector<PrPoint> points = pr_curve(inputs.gold_ids, inputs.ranked, parse_ks(ks_spec));
  double oracle = oracle_accuracy(inputs.gold_ids, inputs.ranked);
  std::string rendered = pr_points_to_tsv(points);
  if (out_path.empty()) {
    std::cout << rendered;
  } else {
    write_file(out_path, rendered);
  }
  std::cerr << "oracle (recall at inf): " << oracle << "\n";
  return kExitOk;
}

int cmd_evaluate(const std::string& answers_path, const std::string& gold_path,
                 const std::string& subset, const std::string& tsv_out, bool pr,
                 const std::string& queries_path, const std::string& dict_path,
                 const std::string& canonical_path, const std::string& kb_path,
                 const std::string& ks_spec, const std::string& pr_out,
                 const CommonOptions& options) {
  std::vector<AnswerRow> answers = load_answers_tsv(answers_path);
  std::vector<GoldRow> gold = load_gold_tsv(gold_path);
  EvalReport report = micro_accuracy(
      gold, answers, subset == "kb" ? EvalSubset::kKbOnly : EvalSubset::kAll);
  std::cout << report.render_text();
  if (!tsv_out.empty()) write_file(tsv_out, report.render_tsv());

  if (pr) {
    if (queries_path.empty() || dict_path.empty()) {
      throw ParseError("--pr", 0, "--pr needs --queries and --dict");
    }
    return cmd_pr_curve(queries_path, gold_path, dict_path, canonical_path, kb_path,
                        ks_spec, pr_out, options);
  }
  return kExitOk;
}

int cmd_stats(const std::string& gold_path, const std::string& queries_path,
              const std::string& dict_path, const std::string& canonical_path,
              const std::string& tsv_out, const CommonOptions& options) {
  std::vector<GoldRow> gold = load_gold_tsv(gold_path);
  std::vector<Query> queries = load_queries_xml(queries_path);
  std::map<std::string_view, const GoldRow*> gold_by_id;
  for (const GoldRow& g : gold) gold_by_id.emplace(g.query_id, &g);

  // Gold views: entities a name was tagged with; names used for an entity.
  std::map<std::string, std::set<std::string>> ambiguity_view;
  std::map<std::string, std::set<std::string>> synonymy_view;
  for (const Query& query : queries) {
    auto it = gold_by_id.find(query.id);
    if (it == gold_by_id.end()) continue;
    const GoldRow& g = *it->second;
    auto& entities = ambiguity_view[query.name];
    if (!g.is_nil()) {
      entities.insert(g.kb_id);
      synonymy_view[g.kb_id].insert(query.name);
    }
  }

  std::string out;
  out += ambiguity_stats(ambiguity_view).render_text("gold ambiguity   ");
  out += synonymy_stats(synonymy_view).render_text("gold synonymy    ");

  if (!dict_path.empty()) {
    std::optional<CanonicalMap> canonical;
    if (!canonical_path.empty()) canonical = CanonicalMap::from_tsv(canonical_path);
    Dictionary dict = Dictionary::from_tsv(dict_path, canonical ? &*canonical : nullptr);
    LookupIndex index(dict, counts_of(options));

    std::map<std::string, std::set<std::string>> dict_ambiguity;
    for (const Query& query : queries) {
      auto& entities = dict_ambiguity[query.name];
      CandidateList list = generate_candidates(index, dict, query.name, options);
      for (const Candidate& c : list.candidates) entities.insert(c.entity);
    }
    out += ambiguity_stats(dict_ambiguity).render_text("dict ambiguity   ");

    // Reverse index over the dictionary, restricted to gold entities.
    std::map<std::string, std::set<std::string>> dict_synonymy;
    for (const GoldRow& g : gold) {
      if (g.wiki_title != "-" && !g.is_nil()) dict_synonymy[g.wiki_title];
    }
    for (const auto& [text, entries] : dict.entries()) {
      for (const DictionaryEntry& e : entries) {
        auto it = dict_synonymy.find(e.entity);
        if (it != dict_synonymy.end()) it->second.insert(text);
      }
    }
    if (!dict_synonymy.empty()) {
      out += synonymy_stats(dict_synonymy).render_text("dict synonymy    ");
    }
  }

  std::cout << out;
  if (!tsv_out.empty()) write_file(tsv_out, out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"word-expert named-entity disambiguation pipeline"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value config file (keys may be "
                                 "prefixed subcommand.option)")
      ->envname("NEDKIT_CONFIG");
  app.allow_config_extras(true);

  // build-canonical
  auto* build_canonical = app.add_subcommand(
      "build-canonical", "resolve the redirect graph into canonical titles");
  std::string pages, redirects, kb_path, out, canonical_out;
  build_canonical->add_option("--pages", pages, "pages.tsv")->required();
  build_canonical->add_option("--redirects", redirects, "redirects.tsv")->required();
  build_canonical->add_option("--kb", kb_path, "kb.tsv for canonical preference");
  build_canonical->add_option("--out", out, "canonical.tsv output")->required();

  // build-dict
  auto* build_dict = app.add_subcommand(
      "build-dict", "harvest the scored string-to-entity dictionary");
  std::vector<std::string> links;
  build_dict->add_option("--pages", pages, "pages.tsv")->required();
  build_dict->add_option("--redirects", redirects, "redirects.tsv")->required();
  build_dict->add_option("--links", links, "links.tsv (repeatable)")->required();
  build_dict->add_option("--kb", kb_path, "kb.tsv for canonical preference");
  build_dict->add_option("--out", out, "dictionary.tsv output")->required();
  build_dict->add_option("--canonical-out", canonical_out, "also write canonical.tsv");

  // lookup
  auto* lookup_cmd = app.add_subcommand("lookup", "candidate entities for a string");
  std::string dict_path, canonical_path, query;
  CommonOptions lookup_options;
  lookup_cmd->add_option("--dict", dict_path, "dictionary.tsv")->required();
  lookup_cmd->add_option("--canonical", canonical_path, "canonical.tsv (page kinds)");
  lookup_cmd->add_option("--query", query, "string to look up")->required();
  add_common_options(lookup_cmd, &lookup_options);

  // extract-spans
  auto* extract = app.add_subcommand("extract-spans",
                                     "gather training spans for one string");
  std::string corpus_path, target_string, span_mode = "t100", match_mode = "lex";
  CommonOptions extract_options;
  extract->add_option("--corpus", corpus_path, "corpus file")->required();
  extract->add_option("--dict", dict_path, "filter dictionary.tsv")->required();
  extract->add_option("--canonical", canonical_path, "canonical.tsv");
  extract->add_option("--string", target_string, "target string")->required();
  extract->add_option("--span-mode", span_mode, "t100 | sent | para")
      ->check(CLI::IsMember({"t100", "sent", "para"}));
  extract->add_option("--match-mode", match_mode, "lex | sense")
      ->check(CLI::IsMember({"lex", "sense"}));
  extract->add_option("--out", out, "spans output")->required();
  add_common_options(extract, &extract_options);

  // train
  auto* train = app.add_subcommand("train", "train one word-expert model");
  std::string spans_path;
  double l2 = 1.0;
  int max_iterations = 200;
  train->add_option("--spans", spans_path, "spans file")->required();
  train->add_option("--string", target_string, "target string")->required();
  train->add_option("--l2", l2, "l2 regularization strength");
  train->add_option("--max-iters", max_iterations, "optimizer iteration cap");
  train->add_option("--out", out, "model output")->required();

  // disambiguate
  auto* disambiguate = app.add_subcommand("disambiguate",
                                          "answer queries end to end");
  std::string queries_path, docs_path, models_dir, annotations_dir;
  bool expand = false;
  int workers = 1;
  CommonOptions dis_options;
  disambiguate->add_option("--queries", queries_path, "queries.xml")->required();
  disambiguate->add_option("--docs", docs_path, "document corpus")->required();
  disambiguate->add_option("--dict", dict_path, "dictionary.tsv")->required();
  disambiguate->add_option("--canonical", canonical_path, "canonical.tsv");
  disambiguate->add_option("--kb", kb_path, "kb.tsv");
  disambiguate->add_option("--models", models_dir, "directory of .model files");
  disambiguate->add_option("--annotations", annotations_dir,
                           "directory of <docid>.ann standoff files");
  disambiguate->add_option("--span-mode", span_mode, "t100 | sent | para")
      ->check(CLI::IsMember({"t100", "sent", "para"}));
  disambiguate->add_flag("--expand,!--no-expand", expand,
                         "expand mentions before lookup");
  disambiguate->add_option("--workers", workers, "parallel workers")
      ->check(CLI::PositiveNumber);
  disambiguate->add_option("--out", out, "answers.tsv (stdout when omitted)");
  add_common_options(disambiguate, &dis_options);

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "score answers against gold");
  std::string answers_path, gold_path, subset = "all", tsv_out, pr_out;
  std::string ks_spec = "1,2,3,5,10,20,50,inf";
  bool pr = false;
  CommonOptions eval_options;
  evaluate->add_option("--answers", answers_path, "answers.tsv")->required();
  evaluate->add_option("--gold", gold_path, "gold.tsv")->required();
  evaluate->add_option("--subset", subset, "all | kb")
      ->check(CLI::IsMember({"all", "kb"}));
  evaluate->add_option("--tsv", tsv_out, "machine-readable report output");
  evaluate->add_flag("--pr", pr, "also emit a precision/recall curve");
  evaluate->add_option("--queries", queries_path, "queries.xml (for --pr)");
  evaluate->add_option("--dict", dict_path, "dictionary.tsv (for --pr)");
  evaluate->add_option("--canonical", canonical_path, "canonical.tsv");
  evaluate->add_option("--kb", kb_path, "kb.tsv");
  evaluate->add_option("--ks", ks_spec, "comma-separated cutoffs, inf allowed");
  evaluate->add_option("--pr-out", pr_out, "curve TSV output (stdout when omitted)");
  add_common_options(evaluate, &eval_options);

  // stats
  auto* stats = app.add_subcommand("stats", "ambiguity and synonymy tables");
  CommonOptions stats_options;
  stats->add_option("--gold", gold_path, "gold.tsv")->required();
  stats->add_option("--queries", queries_path, "queries.xml")->required();
  stats->add_option("--dict", dict_path, "dictionary.tsv for dictionary views");
  stats->add_option("--canonical", canonical_path, "canonical.tsv");
  stats->add_option("--tsv", tsv_out, "also write the tables to a file");
  add_common_options(stats, &stats_options);

  // pr-curve
  auto* curve = app.add_subcommand("pr-curve", "precision/recall at k");
  CommonOptions curve_options;
  curve->add_option("--queries", queries_path, "queries.xml")->required();
  curve->add_option("--gold", gold_path, "gold.tsv")->required();
  curve->add_option("--dict", dict_path, "dictionary.tsv")->required();
  curve->add_option("--canonical", canonical_path, "canonical.tsv");
  curve->add_option("--kb", kb_path, "kb.tsv");
  curve->add_option("--ks", ks_spec, "comma-separated cutoffs, inf allowed");
  curve->add_option("--out", out, "curve TSV output (stdout when omitted)");
  add_common_options(curve, &curve_options);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (build_canonical->parsed()) {
      return cmd_build_canonical(pages, redirects, kb_path, out);
    }
    if (build_dict->parsed()) {
      return cmd_build_dict(pages, redirects, links, kb_path, out, canonical_out);
    }
    if (lookup_cmd->parsed()) {
      return cmd_lookup(dict_path, canonical_path, query, lookup_options);
    }
    if (extract->parsed()) {
      return cmd_extract_spans(corpus_path, dict_path, canonical_path, target_string,
                               span_mode, match_mode, out, extract_options);
    }
    if (train->parsed()) {
      return cmd_train(spans_path, target_string, l2, max_iterations, out);
    }
    if (disambiguate->parsed()) {
      return cmd_disambiguate(queries_path, docs_path, dict_path, canonical_path,
                              kb_path, models_dir, annotations_dir, span_mode, expand,
                              workers, out, dis_options);
    }
    if (evaluate->parsed()) {
      return cmd_evaluate(answers_path, gold_path, subset, tsv_out, pr, queries_path,
                          dict_path, canonical_path, kb_path, ks_spec, pr_out,
                          eval_options);
    }
    if (stats->parsed()) {
      return cmd_stats(gold_path, queries_path, dict_path, canonical_path, tsv_out,
                       stats_options);
    }
    if (curve->parsed()) {
      return cmd_pr_curve(queries_path, gold_path, dict_path, canonical_path, kb_path,
                          ks_spec, out, curve_options);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const NoCandidatesError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
