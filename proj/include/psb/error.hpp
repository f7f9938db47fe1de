// Copyright 2026 The Playlist Story Builder Authors
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

#ifndef PSB_ERROR_HPP_
#define PSB_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace psb {

// Base class for every error raised by the library. The CLI maps the
// concrete subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (empty input, bad size, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A position outside the template domain [0, 1].
class DomainError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class DuplicateIdError : public Error {
 public:
  explicit DuplicateIdError(std::string id)
      : Error("duplicate track id \"" + id + "\""), id_(std::move(id)) {}

  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class VersionMismatchError : public Error {
 public:
  explicit VersionMismatchError(long long found)
      : Error("unsupported manifest version " + std::to_string(found) +
              " (expected 1)"),
        found_(found) {}

  long long found() const { return found_; }

 private:
  long long found_;
};

// One or more tracks lack a requested feature. For select_feature the
// feature list has a single entry; for zeta it lists every absent weight.
class MissingFeatureError : public Error {
 public:
  struct Entry {
    std::string track_id;
    std::vector<std::string> features;
  };

  explicit MissingFeatureError(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }

 private:
  static std::string Describe(const std::vector<Entry>& entries);

  std::vector<Entry> entries_;
};

// No perfect matching exists under the requested threshold.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace psb

#endif  // PSB_ERROR_HPP_
