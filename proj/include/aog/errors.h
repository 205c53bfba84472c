// Copyright 2026 The AOG Authors
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

#ifndef AOG_ERRORS_H_
#define AOG_ERRORS_H_

#include <stdexcept>
#include <string>

namespace aog {

// Bad argument values or shapes (dimension mismatch, nonpositive constants).
class InvalidArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A point lies outside the set an operation is defined on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The operation is not available for this set, game or learner
// (e.g. a gap on an unbounded set, or a best response for a quadratic player).
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Calls made in the wrong order on a stateful object.
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed or inconsistent experiment configuration. `field` names the
// offending key ("" when the error is about the document as a whole).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)),
        message_(message) {}
  const std::string& field() const { return field_; }
  // The message without the field prefix.
  const std::string& message() const { return message_; }

 private:
  std::string field_;
  std::string message_;
};

// A scripted gradient source produced a non-finite value.
class AdversaryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace aog

#endif  // AOG_ERRORS_H_
