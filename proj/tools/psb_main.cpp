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

// psb: orders a collection of tracks so a chosen per-track feature follows a
// narrative-arc template.

#include <iostream>

#include "CLI11.hpp"
#include "psb/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Narrative-arc playlist builder"};
  app.require_subcommand(1);

  psb::FitCommand fit;
  auto* fit_cmd = app.add_subcommand("fit", "Order a manifest along a template curve");
  fit_cmd->add_option("--manifest", fit.manifest_path, "Feature manifest (JSON)")->required();
  fit_cmd->add_option("--feature", fit.feature, "Feature to fit")->capture_default_str();
  fit_cmd->add_option("--curve", fit.curve, "\"default\" or a curve JSON file")
      ->capture_default_str();
  fit_cmd->add_flag("--pre-normalized", fit.pre_normalized,
                    "Feature values are already in [0, 1]");
  fit_cmd->add_option("--playlist", fit.playlist_path, "Output M3U playlist")->required();
  fit_cmd->add_option("--report", fit.report_path, "Output fit report (JSON)")->required();

  long long samples = 0;
  std::string curve_out;
  auto* curve_cmd = app.add_subcommand("curve", "Export template samples as CSV");
  curve_cmd->add_option("--n", samples, "Number of samples (>= 2)")->required();
  curve_cmd->add_option("--out", curve_out, "Output CSV")->required();

  psb::ExtractCommand extract;
  auto* extract_cmd = app.add_subcommand("extract", "Extract tempo for a directory of audio");
  extract_cmd->add_option("--dir", extract.dir, "Directory to scan")->required();
  extract_cmd->add_option("--extractor-cmd", extract.extractor_cmd,
                          "Extractor command line containing {path}")
      ->required();
  extract_cmd->add_option("--timeout", extract.timeout_seconds, "Per-file timeout in seconds")
      ->capture_default_str();
  extract_cmd->add_option("--jobs", extract.jobs, "Concurrent extractor processes");
  extract_cmd->add_option("--out", extract.out_path, "Output manifest")->required();

  psb::ZetaCommand zeta;
  auto* zeta_cmd = app.add_subcommand("zeta", "Add the learned zeta feature to a manifest");
  zeta_cmd->add_option("--manifest", zeta.manifest_path, "Input manifest")->required();
  zeta_cmd->add_option("--weights", zeta.weights_path, "Projection weights (JSON)")
      ->required();
  zeta_cmd->add_option("--out", zeta.out_path, "Output manifest")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return psb::kExitUsage;
  }

  if (*fit_cmd) return psb::CmdFit(fit, std::cout, std::cerr);
  if (*curve_cmd) return psb::CmdCurve(samples, curve_out, std::cout, std::cerr);
  if (*extract_cmd) return psb::CmdExtract(extract, std::cout, std::cerr);
  if (*zeta_cmd) return psb::CmdZeta(zeta, std::cout, std::cerr);
  return psb::kExitUsage;
}
