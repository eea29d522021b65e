// Copyright 2026 The fedpod-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace fedpod {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad inputs: out-of-range values, invalid configuration, violated
// preconditions. The CLI maps this family to exit status 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Shape disagreement between values that must agree (vector dims, list
// lengths).
class StructuralError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : ValidationError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A statistical model could not be fitted (e.g. every count is zero).
class DegenerateModelError : public Error {
 public:
  using Error::Error;
};

// No node is eligible to take part in a round.
class EmptyCohortError : public Error {
 public:
  using Error::Error;
};

class TrainingDivergenceError : public Error {
 public:
  TrainingDivergenceError(std::string node_id, int round_index, const std::string& what)
      : Error(what), node_id_(std::move(node_id)), round_index_(round_index) {}

  const std::string& node_id() const noexcept { return node_id_; }
  // 0 when raised outside the round loop.
  int round_index() const noexcept { return round_index_; }

 private:
  std::string node_id_;
  int round_index_;
};

}  // namespace fedpod
