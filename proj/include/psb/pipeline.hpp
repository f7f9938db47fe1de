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

#ifndef PSB_PIPELINE_HPP_
#define PSB_PIPELINE_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "psb/feature_model.hpp"
#include "psb/fitter.hpp"
#include "psb/template_curve.hpp"

namespace psb {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInput = 2,
  kExitExtractor = 3,
};

struct FitReportEntry {
  std::size_t position = 0;
  double t = 0.0;
  double target = 0.0;
  std::string track_id;
  double raw_value = 0.0;
  double normalized_value = 0.0;
  double deviation = 0.0;
};

struct FitReport {
  std::string feature_name;
  std::string curve_name;
  double d_min = 0.0;
  double total_cost = 0.0;
  std::vector<FitReportEntry> entries;
};

FitReport BuildFitReport(const FeatureManifest& manifest,
                         const std::string& feature_name,
                         const std::vector<double>& raw_values,
                         const TemplateCurve& curve, const FitResult& fit);

std::string FitReportToJson(const FitReport& report);
FitReport FitReportFromJson(std::string_view text);

// "#EXTM3U" followed by one path per line.
std::string RenderM3u(const std::vector<std::string>& paths);

// "default" selects the shipped curve; anything else is a curve JSON path.
TemplateCurve ResolveCurve(const std::string& selector);

struct FitCommand {
  std::string manifest_path;
  std::string feature = "tempo";
  std::string curve = "default";
  bool pre_normalized = false;
  std::string playlist_path;
  std::string report_path;
};

struct ExtractCommand {
  std::string dir;
  std::string extractor_cmd;
  double timeout_seconds = 120.0;
  int jobs = 0;  // <= 0: one per hardware thread
  std::string out_path;
};

struct ZetaCommand {
  std::string manifest_path;
  std::string weights_path;
  std::string out_path;
};

// Each command returns an ExitCode and writes diagnostics to `err`.
int CmdFit(const FitCommand& cmd, std::ostream& out, std::ostream& err);
int CmdCurve(long long n, const std::string& out_path, std::ostream& out,
             std::ostream& err);
int CmdExtract(const ExtractCommand& cmd, std::ostream& out, std::ostream& err);
int CmdZeta(const ZetaCommand& cmd, std::ostream& out, std::ostream& err);

// Audio files below dir (recursive) with a recognised extension, sorted.
std::vector<std::filesystem::path> ScanAudioFiles(
    const std::filesystem::path& dir);

bool IsAudioExtension(const std::filesystem::path& path);

}  // namespace psb

#endif  // PSB_PIPELINE_HPP_
