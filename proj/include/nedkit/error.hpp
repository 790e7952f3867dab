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

#ifndef NEDKIT_ERROR_HPP_
#define NEDKIT_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nedkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Title canonicalization produced an empty identifier.
class EmptyTitleError : public Error {
 public:
  using Error::Error;
};

// Malformed input row; carries the offending file and line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& file, std::size_t line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_ = 0;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// The filter dictionary has no candidates for a target string.
class NoCandidatesError : public Error {
 public:
  using Error::Error;
};

// Fewer than two populated classes; no classifier can be trained.
class DegenerateTrainingError : public Error {
 public:
  using Error::Error;
};

// Neither a classifier nor a back-off candidate is available.
class NoAnswerError : public Error {
 public:
  using Error::Error;
};

class MentionNotFoundError : public Error {
 public:
  using Error::Error;
};

}  // namespace nedkit

#endif  // NEDKIT_ERROR_HPP_
