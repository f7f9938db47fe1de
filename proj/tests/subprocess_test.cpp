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

#include "psb/subprocess.hpp"

#include <gtest/gtest.h>

#include "psb/error.hpp"
#include "test_util.hpp"

namespace psb {
namespace {

using namespace std::chrono_literals;

TEST(SplitCommandLineTest, QuotesAndEscapes) {
  EXPECT_EQ(SplitCommandLine("  tool --x {path}  "),
            (std::vector<std::string>{"tool", "--x", "{path}"}));
  EXPECT_EQ(SplitCommandLine(R"(python3 'my script.py' "a \"b\"" c\ d)"),
            (std::vector<std::string>{"python3", "my script.py", "a \"b\"", "c d"}));
  EXPECT_EQ(SplitCommandLine("''"), (std::vector<std::string>{""}));
  EXPECT_TRUE(SplitCommandLine("   ").empty());
  EXPECT_THROW(SplitCommandLine("tool 'open"), InvalidArgument);
}

TEST(ExtractorSpecTest, SubstitutesEveryPlaceholder) {
  const ExtractorSpec spec =
      ExtractorSpec::FromCommandLine("adapter --in={path} --log {path}.log", 5s);
  EXPECT_EQ(spec.command, "adapter");
  EXPECT_EQ(spec.Argv("/m/a b.wav"),
            (std::vector<std::string>{"adapter", "--in=/m/a b.wav", "--log",
                                      "/m/a b.wav.log"}));
  EXPECT_THROW(ExtractorSpec::FromCommandLine("", 5s), InvalidArgument);
  EXPECT_THROW(ExtractorSpec::FromCommandLine("x", 0s), InvalidArgument);
}

TEST(ParseTempoOutputTest, ContractParsing) {
  EXPECT_EQ(ParseTempoOutput("120.0"), 120.0);
  EXPECT_EQ(ParseTempoOutput(" \t96.5\n"), 96.5);
  EXPECT_EQ(ParseTempoOutput("20"), 20.0);
  EXPECT_EQ(ParseTempoOutput("400"), 400.0);
  EXPECT_FALSE(ParseTempoOutput(""));
  EXPECT_FALSE(ParseTempoOutput("19.99"));
  EXPECT_FALSE(ParseTempoOutput("400.01"));
  EXPECT_FALSE(ParseTempoOutput("120 bpm"));
  EXPECT_FALSE(ParseTempoOutput("120\n121"));
  EXPECT_FALSE(ParseTempoOutput("nan"));
  EXPECT_FALSE(ParseTempoOutput("inf"));
}

TEST(RunProcessTest, CapturesStdoutAndExitCode) {
  const ProcessResult ok = RunProcess({"sh", "-c", "printf 'hi'; exit 0"}, 5s);
  ASSERT_TRUE(ok.exit_code);
  EXPECT_EQ(*ok.exit_code, 0);
  EXPECT_EQ(ok.standard_output, "hi");

  const ProcessResult fail = RunProcess({"sh", "-c", "exit 7"}, 5s);
  ASSERT_TRUE(fail.exit_code);
  EXPECT_EQ(*fail.exit_code, 7);
}

TEST(RunProcessTest, MissingExecutable) {
  const ProcessResult r = RunProcess({"/nonexistent/psb-extractor"}, 5s);
  EXPECT_FALSE(r.exit_code);
  EXPECT_FALSE(r.error.empty());
}

TEST(RunProcessTest, TimeoutKillsChild) {
  const auto start = std::chrono::steady_clock::now();
  const ProcessResult r = RunProcess({"sleep", "10"}, 200ms);
  EXPECT_TRUE(r.timed_out);
  EXPECT_FALSE(r.exit_code);
  EXPECT_LT(std::chrono::steady_clock::now() - start, 5s);
}

}  // namespace
}  // namespace psb
