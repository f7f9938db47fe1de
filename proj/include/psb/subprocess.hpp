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

#ifndef PSB_SUBPROCESS_HPP_
#define PSB_SUBPROCESS_HPP_

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace psb {

struct ProcessResult {
  // Exit status when the child exited normally; empty when it was killed
  // by a signal, timed out, or could not be started.
  std::optional<int> exit_code;
  bool timed_out = false;
  std::string standard_output;
  std::string error;  // launch or wait failure description
};

// Runs argv[0] (looked up on PATH) with stdin from /dev/null, capturing
// stdout. stderr is inherited. The child is killed once `timeout` elapses.
ProcessResult RunProcess(const std::vector<std::string>& argv,
                         std::chrono::milliseconds timeout);

// Whitespace-separated words; single and double quotes group words and
// backslash escapes the next character outside single quotes.
std::vector<std::string> SplitCommandLine(std::string_view text);

// How to invoke an external tempo extractor on one audio file.
struct ExtractorSpec {
  static constexpr std::string_view kPathPlaceholder = "{path}";

  std::string command;
  std::vector<std::string> args;
  std::chrono::milliseconds timeout{std::chrono::seconds(120)};

  // Throws InvalidArgument for an empty command or non-positive timeout.
  static ExtractorSpec FromCommandLine(std::string_view text,
                                       std::chrono::milliseconds timeout);

  // Argument vector with every "{path}" occurrence replaced by audio_path.
  std::vector<std::string> Argv(const std::string& audio_path) const;
};

inline constexpr double kMinTempoBpm = 20.0;
inline constexpr double kMaxTempoBpm = 400.0;

// A single decimal number, optionally surrounded by whitespace, within
// [kMinTempoBpm, kMaxTempoBpm]. Anything else yields nullopt.
std::optional<double> ParseTempoOutput(std::string_view text);

}  // namespace psb

#endif  // PSB_SUBPROCESS_HPP_
