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
// Pre-extracted corpus format: `#doc <id>` headers, blank-line paragraph
// breaks, [[Target_Title|anchor text]] links inline.

#ifndef NEDKIT_CORPUS_HPP_
#define NEDKIT_CORPUS_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace nedkit {

struct Anchor {
  std::string target;  // url_title as written
  std::string text;    // anchor text
  std::size_t begin = 0;  // byte range in the paragraph's plain text
  std::size_t end = 0;
};

struct Paragraph {
  std::string text;  // link markup replaced by anchor text
  std::vector<Anchor> anchors;
};

struct Document {
  std::string id;
  std::vector<Paragraph> paragraphs;

  // Paragraphs joined with single newlines; annotation offsets and title
  // matching work over this form.
  std::string plain_text() const;
};

struct Corpus {
  std::vector<Document> docs;
  const Document* find(std::string_view id) const;
};

Paragraph parse_paragraph(std::string_view markup);
Corpus parse_corpus(std::string_view content, const std::string& file = "<memory>");
Corpus load_corpus(const std::string& path);

}  // namespace nedkit

#endif  // NEDKIT_CORPUS_HPP_
