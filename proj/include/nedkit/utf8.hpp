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

#ifndef NEDKIT_UTF8_HPP_
#define NEDKIT_UTF8_HPP_

#include <cstddef>
#include <string>
#include <string_view>

namespace nedkit {

// Decodes the code point starting at s[i] and advances i past it.
// Invalid sequences decode as the single byte value (Latin-1 fallback),
// so no input can make decoding fail or stall.
char32_t utf8_decode(std::string_view s, std::size_t* i);

void utf8_encode(char32_t cp, std::string* out);

}  // namespace nedkit

#endif  // NEDKIT_UTF8_HPP_
