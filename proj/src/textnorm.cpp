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

#include "nedkit/textnorm.hpp"

#include <algorithm>
#include <vector>

#include "nedkit/utf8.hpp"

namespace nedkit {
namespace {

// ASCII base letters for the precomposed Latin-1 Supplement letters
// U+00C0..U+00FF; 0 marks letters with no compatibility decomposition
// (those are kept, lowercased). Multiplication/division signs map to 0
// and survive as non-ASCII symbols.
constexpr const char* kLatin1Base[0x40] = {
    "a", "a", "a", "a", "a", "a", 0,   "c", "e", "e", "e", "e", "i", "i", "i", "i",
    0,   "n", "o", "o", "o", "o", "o", 0,   0,   "u", "u", "u", "u", "y", 0,   0,
    "a", "a", "a", "a", "a", "a", 0,   "c", "e", "e", "e", "e", "i", "i", "i", "i",
    0,   "n", "o", "o", "o", "o", "o", 0,   0,   "u", "u", "u", "u", "y", 0,   "y"};

// Latin Extended-A U+0100..U+017F. Letters without a decomposition (stroked
// and run-together forms) map to 0, except the compatibility ligatures
// U+0132/U+0133 (ij) and U+017F (long s) which NFKD does unfold.
constexpr const char* kLatinExtABase[0x80] = {
    // 0x100 Ā..Ď: macron/breve/ogonek/acute/caron series
    "a", "a", "a", "a", "a", "a", "c", "c", "c", "c", "c", "c", "c", "c", "d", "d",
    // 0x110 Đ..ğ: D-stroke kept
    0, 0, "e", "e", "e", "e", "e", "e", "e", "e", "e", "e", "g", "g", "g", "g",
    // 0x120 Ġ..į: H-stroke kept
    "g", "g", "g", "g", "h", "h", 0, 0, "i", "i", "i", "i", "i", "i", "i", "i",
    // 0x130 İ..Ŀ: dotless i and kra kept
    "i", 0, "ij", "ij", "j", "j", "k", "k", 0, "l", "l", "l", "l", "l", "l", "l",
    // 0x140 ŀ..ŏ: L-stroke and eng kept
    "l", 0, 0, "n", "n", "n", "n", "n", "n", "n", 0, 0, "o", "o", "o", "o",
    // 0x150 Ő..ş: oe ligature kept (no NFKD decomposition)
    "o", "o", 0, 0, "r", "r", "r", "r", "r", "r", "s", "s", "s", "s", "s", "s",
    // 0x160 Š..ů: T-stroke kept
    "s", "s", "t", "t", "t", "t", 0, 0, "u", "u", "u", "u", "u", "u", "u", "u",
    // 0x170 Ű..ſ
    "u", "u", "u", "u", "w", "w", "y", "y", "y", "z", "z", "z", "z", "z", "z", "s"};

bool is_combining_mark(char32_t cp) {
  return (cp >= 0x0300 && cp <= 0x036F) || (cp >= 0x1AB0 && cp <= 0x1AFF) ||
         (cp >= 0x20D0 && cp <= 0x20FF) || (cp >= 0xFE20 && cp <= 0xFE2F);
}

void fold_codepoint(char32_t cp, std::string* out) {
  if (cp < 0x80) {
    if ((cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z')) {
      out->push_back(static_cast<char>(cp));
    } else if (cp >= 'A' && cp <= 'Z') {
      out->push_back(static_cast<char>(cp - 'A' + 'a'));
    }
    return;
  }
  if (is_combining_mark(cp)) return;
  if (cp >= 0xC0 && cp <= 0xFF) {
    if (const char* base = kLatin1Base[cp - 0xC0]) {
      out->append(base);
      return;
    }
    // Keep, lowercased where Latin-1 has a case pair.
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) cp += 0x20;
    utf8_encode(cp, out);
    return;
  }
  if (cp >= 0x100 && cp <= 0x17F) {
    if (const char* base = kLatinExtABase[cp - 0x100]) {
      out->append(base);
      return;
    }
    switch (cp) {  // case pairs among the kept letters
      case 0x110: cp = 0x111; break;
      case 0x126: cp = 0x127; break;
      case 0x141: cp = 0x142; break;
      case 0x14A: cp = 0x14B; break;
      case 0x152: cp = 0x153; break;
      case 0x166: cp = 0x167; break;
      default: break;
    }
    utf8_encode(cp, out);
    return;
  }
  // Halfwidth/fullwidth compatibility forms.
  if (cp >= 0xFF01 && cp <= 0xFF5E) {
    fold_codepoint(cp - 0xFEE0, out);
    return;
  }
  // Latin ligatures.
  switch (cp) {
    case 0xFB00: out->append("ff"); return;
    case 0xFB01: out->append("fi"); return;
    case 0xFB02: out->append("fl"); return;
    case 0xFB03: out->append("ffi"); return;
    case 0xFB04: out->append("ffl"); return;
    case 0xFB05:
    case 0xFB06: out->append("st"); return;
    default: break;
  }
  utf8_encode(cp, out);
}

}  // namespace

std::string lnrm(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    fold_codepoint(utf8_decode(s, &i), &out);
  }
  return out;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  if (a.size() > b.size()) std::swap(a, b);
  std::vector<std::size_t> prev(a.size() + 1), curr(a.size() + 1);
  for (std::size_t i = 0; i <= a.size(); ++i) prev[i] = i;
  for (std::size_t j = 1; j <= b.size(); ++j) {
    curr[0] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
      std::size_t subst = prev[i - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      curr[i] = std::min({prev[i] + 1, curr[i - 1] + 1, subst});
    }
    std::swap(prev, curr);
  }
  return prev[a.size()];
}

}  // namespace nedkit
