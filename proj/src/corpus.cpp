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

#include "nedkit/corpus.hpp"

#include "nedkit/error.hpp"
#include "nedkit/tsv.hpp"

namespace nedkit {

Paragraph parse_paragraph(std::string_view markup) {
  Paragraph out;
  std::size_t i = 0;
  while (i < markup.size()) {
    if (markup[i] == '[' && i + 1 < markup.size() && markup[i + 1] == '[') {
      std::size_t close = markup.find("]]", i + 2);
      if (close != std::string_view::npos) {
        std::string_view inner = markup.substr(i + 2, close - i - 2);
        std::size_t pipe = inner.find('|');
        Anchor anchor;
        if (pipe == std::string_view::npos) {
          anchor.target = std::string(inner);
          anchor.text = std::string(inner);
          for (char& c : anchor.text) {
            if (c == '_') c = ' ';
          }
        } else {
          anchor.target = std::string(inner.substr(0, pipe));
          anchor.text = std::string(inner.substr(pipe + 1));
        }
        anchor.begin = out.text.size();
        out.text.append(anchor.text);
        anchor.end = out.text.size();
        if (!anchor.target.empty() && !anchor.text.empty()) {
          out.anchors.push_back(std::move(anchor));
        }
        i = close + 2;
        continue;
      }
    }
    out.text.push_back(markup[i]);
    ++i;
  }
  return out;
}

Corpus parse_corpus(std::string_view content, const std::string& file) {
  Corpus corpus;
  Document* doc = nullptr;
  std::string paragraph_markup;

  auto flush_paragraph = [&]() {
    if (paragraph_markup.empty()) return;
    if (doc == nullptr) {
      throw ParseError(file, 0, "paragraph text before any #doc header");
    }
    doc->paragraphs.push_back(parse_paragraph(paragraph_markup));
    paragraph_markup.clear();
  };

  std::string_view rest = content;
  while (!rest.empty()) {
    std::size_t eol = rest.find('\n');
    std::string_view line =
        eol == std::string_view::npos ? rest : rest.substr(0, eol);
    rest = eol == std::string_view::npos ? std::string_view() : rest.substr(eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line.rfind("#doc ", 0) == 0) {
      flush_paragraph();
      corpus.docs.push_back(Document{std::string(line.substr(5)), {}});
      doc = &corpus.docs.back();
      continue;
    }
    if (line.empty()) {
      flush_paragraph();
      continue;
    }
    if (!paragraph_markup.empty()) paragraph_markup.push_back(' ');
    paragraph_markup.append(line);
  }
  flush_paragraph();
  return corpus;
}

Corpus load_corpus(const std::string& path) {
  return parse_corpus(read_file(path), path);
}

std::string Document::plain_text() const {
  std::string out;
  for (const Paragraph& p : paragraphs) {
    if (!out.empty()) out.push_back('\n');
    out.append(p.text);
  }
  return out;
}

const Document* Corpus::find(std::string_view id) const {
  for (const Document& doc : docs) {
    if (doc.id == id) return &doc;
  }
  return nullptr;
}

}  // namespace nedkit
