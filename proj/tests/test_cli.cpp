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
// End-to-end checks driving the built binary on fixture files.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "nedkit/tsv.hpp"

namespace {

const std::string kBin = NEDKIT_BIN;
const std::string kFixtures = NEDKIT_FIXTURE_DIR;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string command = kBin + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  std::size_t n;
  while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    result.out.append(buffer, n);
  }
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

// A scratch directory seeded with the built dictionary and canonical map.
class Workspace {
 public:
  Workspace() {
    dir_ = std::filesystem::temp_directory_path() / "nedkit_cli_test";
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_ / "models");
    RunResult built = run("build-dict --pages " + kFixtures +
                          "/cli_pages.tsv --redirects " + kFixtures +
                          "/cli_redirects.tsv --links " + kFixtures +
                          "/cli_links.tsv --out " + path("dict.tsv") +
                          " --canonical-out " + path("canonical.tsv"));
    REQUIRE(built.exit_code == 0);
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  std::filesystem::path dir_;
};

Workspace& workspace() {
  static Workspace* w = new Workspace();
  return *w;
}

std::string disambiguate_args(const Workspace& w, const std::string& extra) {
  return "disambiguate --queries " + kFixtures + "/cli_queries.xml --docs " +
         kFixtures + "/cli_docs.txt --dict " + w.path("dict.tsv") +
         " --canonical " + w.path("canonical.tsv") + " --kb " + kFixtures +
         "/cli_kb.tsv --cascade lnrm " + extra;
}

}  // namespace

TEST_CASE("build reproduces the hand-audited golden files") {
  Workspace& w = workspace();
  RunResult built = run("build-dict --pages " + kFixtures +
                        "/hank_pages.tsv --redirects " + kFixtures +
                        "/hank_redirects.tsv --links " + kFixtures +
                        "/hank_links.tsv --out " + w.path("hank_dict.tsv") +
                        " --canonical-out " + w.path("hank_canonical.tsv"));
  REQUIRE(built.exit_code == 0);
  CHECK(nedkit::read_file(w.path("hank_dict.tsv")) ==
        nedkit::read_file(kFixtures + "/hank_dictionary_golden.tsv"));
  CHECK(nedkit::read_file(w.path("hank_canonical.tsv")) ==
        nedkit::read_file(kFixtures + "/hank_canonical_golden.tsv"));
}

TEST_CASE("build outputs are byte-identical across reruns") {
  Workspace& w = workspace();
  std::string dict_first = nedkit::read_file(w.path("dict.tsv"));
  std::string canon_first = nedkit::read_file(w.path("canonical.tsv"));
  RunResult again = run("build-dict --pages " + kFixtures +
                        "/cli_pages.tsv --redirects " + kFixtures +
                        "/cli_redirects.tsv --links " + kFixtures +
                        "/cli_links.tsv --out " + w.path("dict2.tsv") +
                        " --canonical-out " + w.path("canonical2.tsv"));
  CHECK(again.exit_code == 0);
  CHECK(nedkit::read_file(w.path("dict2.tsv")) == dict_first);
  CHECK(nedkit::read_file(w.path("canonical2.tsv")) == canon_first);
}

TEST_CASE("lookup prints rank, entity, score and origin") {
  Workspace& w = workspace();
  RunResult result = run("lookup --dict " + w.path("dict.tsv") + " --canonical " +
                         w.path("canonical.tsv") + " --query Abbott --cascade exct");
  CHECK(result.exit_code == 0);
  CHECK(result.out ==
        "1\tAbbott_Laboratories\t0.9615\tEXCT\n"
        "2\tBud_Abbott\t0.0385\tEXCT\n");
}

TEST_CASE("redirect queries resolve through the canonical map") {
  Workspace& w = workspace();
  RunResult result = run("lookup --dict " + w.path("dict.tsv") +
                         " --query Stanford --cascade lnrm");
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("Stanford_University") != std::string::npos);
}

TEST_CASE("empty links file leaves only zero-score membership rows") {
  Workspace& w = workspace();
  nedkit::write_file(w.path("empty_links.tsv"), "");
  RunResult built = run("build-dict --pages " + kFixtures +
                        "/cli_pages.tsv --redirects " + kFixtures +
                        "/cli_redirects.tsv --links " + w.path("empty_links.tsv") +
                        " --out " + w.path("dict_empty.tsv"));
  CHECK(built.exit_code == 0);
  std::string dict = nedkit::read_file(w.path("dict_empty.tsv"));
  CHECK(!dict.empty());
  for (std::string_view rest(dict); !rest.empty();) {
    std::size_t eol = rest.find('\n');
    std::string_view line = rest.substr(0, eol);
    rest = rest.substr(eol + 1);
    CHECK(line.find("\t0.0000\t") != std::string_view::npos);
  }
}

TEST_CASE("dictionary-only disambiguation equals cascade top-1") {
  Workspace& w = workspace();
  RunResult result = run(disambiguate_args(w, "--out " + w.path("answers_dict.tsv")));
  REQUIRE(result.exit_code == 0);
  std::string answers = nedkit::read_file(w.path("answers_dict.tsv"));
  CHECK(answers ==
        "EL01\tE0000101\tAbbott_Laboratories\n"
        "EL02\tE0000103\tStanford_University\n"
        "EL03\tNIL\t!missing_doc\n");
}

TEST_CASE("classifier mode flips the Abbott answer") {
  Workspace& w = workspace();
  RunResult extracted = run("extract-spans --corpus " + kFixtures +
                            "/cli_train_corpus.txt --dict " + w.path("dict.tsv") +
                            " --canonical " + w.path("canonical.tsv") +
                            " --string Abbott --out " + w.path("abbott_spans.tsv"));
  REQUIRE(extracted.exit_code == 0);
  RunResult trained = run("train --spans " + w.path("abbott_spans.tsv") +
                          " --string Abbott --out " +
                          w.path("models/abbott.model"));
  REQUIRE(trained.exit_code == 0);

  RunResult result = run(disambiguate_args(
      w, "--models " + w.path("models") + " --out " + w.path("answers_clf.tsv")));
  REQUIRE(result.exit_code == 0);
  std::string answers = nedkit::read_file(w.path("answers_clf.tsv"));
  CHECK(answers.find("EL01\tE0000102\tBud_Abbott") != std::string::npos);
  // The dictionary answer differs from the classifier answer on EL01.
  CHECK(nedkit::read_file(w.path("answers_dict.tsv")) != answers);
}

TEST_CASE("expansion rewrites ABC through the spelled-out title") {
  Workspace& w = workspace();
  std::string base = "disambiguate --queries " + kFixtures +
                     "/cli_expand_queries.xml --docs " + kFixtures +
                     "/cli_docs.txt --dict " + w.path("dict.tsv") + " --kb " +
                     kFixtures + "/cli_kb.tsv --cascade lnrm ";
  RunResult plain = run(base + "--out " + w.path("answers_plain.tsv"));
  REQUIRE(plain.exit_code == 0);
  CHECK(nedkit::read_file(w.path("answers_plain.tsv")) ==
        "EL10\tE0000105\tAmerican_Broadcasting_Company\n");

  RunResult expanded = run(base + "--expand --out " + w.path("answers_exp.tsv"));
  REQUIRE(expanded.exit_code == 0);
  CHECK(nedkit::read_file(w.path("answers_exp.tsv")) ==
        "EL10\tE0000106\tAustralian_Broadcasting_Corporation\n");
}

TEST_CASE("worker count never changes the output bytes") {
  Workspace& w = workspace();
  RunResult one = run(disambiguate_args(w, "--workers 1 --out " + w.path("w1.tsv")));
  RunResult four = run(disambiguate_args(w, "--workers 4 --out " + w.path("w4.tsv")));
  REQUIRE(one.exit_code == 0);
  REQUIRE(four.exit_code == 0);
  CHECK(nedkit::read_file(w.path("w1.tsv")) == nedkit::read_file(w.path("w4.tsv")));
}

TEST_CASE("evaluate reports micro accuracy and genre breakdown") {
  Workspace& w = workspace();
  RunResult result = run("evaluate --answers " + w.path("answers_dict.tsv") +
                         " --gold " + kFixtures + "/cli_gold.tsv");
  REQUIRE(result.exit_code == 0);
  // EL01 wrong (labs vs Bud), EL02 right, EL03 right (NIL via missing doc).
  CHECK(result.out.find("micro-accuracy        0.6667") != std::string::npos);
  CHECK(result.out.find("genre:news") != std::string::npos);

  RunResult kb_only = run("evaluate --answers " + w.path("answers_dict.tsv") +
                          " --gold " + kFixtures + "/cli_gold.tsv --subset kb");
  CHECK(kb_only.out.find("queries               2") != std::string::npos);
  CHECK(kb_only.out.find("micro-accuracy        0.5000") != std::string::npos);
}

TEST_CASE("evaluate emits a pr curve when asked") {
  Workspace& w = workspace();
  RunResult result = run("evaluate --answers " + w.path("answers_dict.tsv") +
                         " --gold " + kFixtures + "/cli_gold.tsv --pr --queries " +
                         kFixtures + "/cli_queries.xml --dict " + w.path("dict.tsv") +
                         " --kb " + kFixtures + "/cli_kb.tsv --ks 1,inf --pr-out " +
                         w.path("pr.tsv"));
  REQUIRE(result.exit_code == 0);
  std::string curve = nedkit::read_file(w.path("pr.tsv"));
  // Bud_Abbott sits at rank 2 for Abbott: recall 0.5 at 1, 1.0 unbounded.
  CHECK(curve ==
        "1\t0.5000\t0.5000\n"
        "inf\t0.6667\t1.0000\n");
}

TEST_CASE("pr-curve subcommand writes the same curve") {
  Workspace& w = workspace();
  RunResult result = run("pr-curve --queries " + kFixtures +
                         "/cli_queries.xml --gold " + kFixtures +
                         "/cli_gold.tsv --dict " + w.path("dict.tsv") + " --kb " +
                         kFixtures + "/cli_kb.tsv --ks 1,inf");
  REQUIRE(result.exit_code == 0);
  CHECK(result.out == "1\t0.5000\t0.5000\ninf\t0.6667\t1.0000\n");
}

TEST_CASE("stats prints gold and dictionary tables") {
  Workspace& w = workspace();
  RunResult result = run("stats --gold " + kFixtures + "/cli_gold.tsv --queries " +
                         kFixtures + "/cli_queries.xml --dict " + w.path("dict.tsv"));
  REQUIRE(result.exit_code == 0);
  CHECK(result.out.find("gold ambiguity") != std::string::npos);
  CHECK(result.out.find("gold synonymy") != std::string::npos);
  CHECK(result.out.find("dict ambiguity") != std::string::npos);
  CHECK(result.out.find("strings=2") != std::string::npos);  // Abbott, Stanford
}

TEST_CASE("usage errors exit 1, schema errors exit 2") {
  Workspace& w = workspace();
  CHECK(run("no-such-command").exit_code == 1);
  CHECK(run("lookup --query x").exit_code == 1);  // missing required --dict

  nedkit::write_file(w.path("broken_links.tsv"), "wiki\tonly three fields\t1\n");
  RunResult schema = run("build-dict --pages " + kFixtures +
                         "/cli_pages.tsv --redirects " + kFixtures +
                         "/cli_redirects.tsv --links " + w.path("broken_links.tsv") +
                         " --out " + w.path("broken_dict.tsv"));
  CHECK(schema.exit_code == 2);

  RunResult missing = run("evaluate --answers " + w.path("nonexistent.tsv") +
                          " --gold " + kFixtures + "/cli_gold.tsv");
  CHECK(missing.exit_code == 2);
}

TEST_CASE("config file supplies defaults, flags override") {
  Workspace& w = workspace();
  nedkit::write_file(w.path("nedkit.conf"),
                     "lookup.cascade=exct\nlookup.counts=wiki\n");
  RunResult from_config = run("--config " + w.path("nedkit.conf") +
                              " lookup --dict " + w.path("dict.tsv") +
                              " --query Abbott");
  REQUIRE(from_config.exit_code == 0);
  // Wiki-only counts: 500/530 and 30/530.
  CHECK(from_config.out ==
        "1\tAbbott_Laboratories\t0.9434\tEXCT\n"
        "2\tBud_Abbott\t0.0566\tEXCT\n");

  RunResult overridden = run("--config " + w.path("nedkit.conf") +
                             " lookup --dict " + w.path("dict.tsv") +
                             " --query Abbott --counts both");
  REQUIRE(overridden.exit_code == 0);
  CHECK(overridden.out.find("0.9615") != std::string::npos);
}
