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

#ifndef NEDKIT_TSV_HPP_
#define NEDKIT_TSV_HPP_

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace nedkit {

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

std::vector<std::string_view> split(std::string_view s, char sep);

// Calls fn(line_number, fields) for every non-empty line; 1-based line
// numbers, CRLF tolerated. Throws ParseError when a line does not have
// exactly n_cols tab-separated fields.
void for_each_tsv_row(
    const std::string& path, std::size_t n_cols,
    const std::function<void(std::size_t, const std::vector<std::string_view>&)>& fn);

long long parse_count(std::string_view s, const std::string& file, std::size_t line);

}  // namespace nedkit

#endif  // NEDKIT_TSV_HPP_
