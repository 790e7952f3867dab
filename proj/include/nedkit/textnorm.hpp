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

#ifndef NEDKIT_TEXTNORM_HPP_
#define NEDKIT_TEXTNORM_HPP_

#include <cstddef>
#include <string>
#include <string_view>

namespace nedkit {

// Lower-cased normalized form: compatibility-decomposes precomposed Latin
// letters, drops combining marks, lowercases, and drops ASCII-range
// non-alphanumerics. Non-ASCII characters without a decomposition are kept.
// An empty result means the string maps to no lookup keys.
std::string lnrm(std::string_view s);

// Unit-cost edit distance over the raw UTF-8 byte sequences.
std::size_t levenshtein(std::string_view a, std::string_view b);

}  // namespace nedkit

#endif  // NEDKIT_TEXTNORM_HPP_
