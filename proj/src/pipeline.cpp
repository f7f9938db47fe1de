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

#include "psb/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "psb/error.hpp"
#include "psb/subprocess.hpp"

namespace psb {
namespace fs = std::filesystem;
namespace {

using OrderedJson = nlohmann::ordered_json;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write \"" + path + "\"");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw InvalidArgument("failed writing \"" + path + "\"");
}

// Maps library errors onto exit codes; the diagnostic goes to err.
template <typename Body>
int Guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const MissingFeatureError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitInput;
}

FileStamp StampOf(const fs::path& p) {
  FileStamp stamp;
  stamp.size = fs::file_size(p);
  stamp.mtime_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                       fs::last_write_time(p).time_since_epoch())
                       .count();
  return stamp;
}

struct ExtractionOutcome {
  std::optional<double> tempo;
  std::string failure;
};

ExtractionOutcome ExtractOne(const ExtractorSpec& spec, const std::string& path) {
  const ProcessResult r = RunProcess(spec.Argv(path), spec.timeout);
  ExtractionOutcome out;
  if (!r.error.empty()) {
    out.failure = r.error;
  } else if (r.timed_out) {
    out.failure = "timed out";
  } else if (!r.exit_code) {
    out.failure = "terminated by a signal";
  } else if (*r.exit_code != 0) {
    out.failure = "exit status " + std::to_string(*r.exit_code);
  } else if (auto bpm = ParseTempoOutput(r.standard_output)) {
    out.tempo = *bpm;
  } else {
    out.failure = "output is not a tempo in [20, 400] BPM";
  }
  return out;
}

}  // namespace

bool IsAudioExtension(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext == ".wav" || ext == ".mp3" || ext == ".flac" || ext == ".ogg" ||
         ext == ".m4a";
}

std::vector<fs::path> ScanAudioFiles(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(
           dir, fs::directory_options::skip_permission_denied)) {
    if (entry.is_regular_file() && IsAudioExtension(entry.path())) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

FitReport BuildFitReport(const FeatureManifest& manifest,
                         const std::string& feature_name,
                         const std::vector<double>& raw_values,
                         const TemplateCurve& curve, const FitResult& fit) {
  FitReport report;
  report.feature_name = feature_name;
  report.curve_name = curve.name();
  report.d_min = fit.d_min;
  report.total_cost = fit.total_cost;
  const std::size_t n = fit.ordering.size();
  report.entries.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t i = fit.ordering[j];
    report.entries.push_back({j, GridPosition(j, n), fit.targets[j],
                              manifest.tracks[i].id, raw_values[i],
                              fit.normalized[i], fit.deviations[j]});
  }
  return report;
}

std::string FitReportToJson(const FitReport& report) {
  OrderedJson doc;
  doc["feature_name"] = report.feature_name;
  doc["curve_name"] = report.curve_name;
  doc["d_min"] = report.d_min;
  doc["total_cost"] = report.total_cost;
  doc["entries"] = OrderedJson::array();
  for (const FitReportEntry& e : report.entries) {
    doc["entries"].push_back({{"position", e.position},
                              {"t", e.t},
                              {"target", e.target},
                              {"track_id", e.track_id},
                              {"raw_value", e.raw_value},
                              {"normalized_value", e.normalized_value},
                              {"deviation", e.deviation}});
  }
  return doc.dump(2) + "\n";
}

FitReport FitReportFromJson(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text.begin(), text.end());
    FitReport report;
    report.feature_name = doc.at("feature_name").get<std::string>();
    report.curve_name = doc.at("curve_name").get<std::string>();
    report.d_min = doc.at("d_min").get<double>();
    report.total_cost = doc.at("total_cost").get<double>();
    for (const auto& e : doc.at("entries")) {
      report.entries.push_back({e.at("position").get<std::size_t>(),
                                e.at("t").get<double>(),
                                e.at("target").get<double>(),
                                e.at("track_id").get<std::string>(),
                                e.at("raw_value").get<double>(),
                                e.at("normalized_value").get<double>(),
                                e.at("deviation").get<double>()});
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("fit report: ") + e.what());
  }
}

std::string RenderM3u(const std::vector<std::string>& paths) {
  std::string out = "#EXTM3U\n";
  for (const std::string& p : paths) {
    out += p;
    out += '\n';
  }
  return out;
}

TemplateCurve ResolveCurve(const std::string& selector) {
  if (selector == "default") return DefaultNarrativeCurve();
  return LoadCurveJson(ReadFile(selector));
}

int CmdFit(const FitCommand& cmd, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    const FeatureManifest manifest = LoadManifestFile(cmd.manifest_path);
    if (manifest.tracks.empty()) {
      err << "error: manifest \"" << cmd.manifest_path << "\" has no tracks\n";
      return static_cast<int>(kExitInput);
    }
    const std::vector<double> raw = SelectFeature(manifest, cmd.feature);

    const TemplateCurve curve = ResolveCurve(cmd.curve);
    if (const auto violations = ValidateCurve(curve); !violations.empty()) {
      err << "error: curve \"" << curve.name() << "\" is invalid:\n";
      for (const auto& v : violations) err << "  " << v.message << "\n";
      return static_cast<int>(kExitInput);
    }

    FitOptions options;
    options.pre_normalized = cmd.pre_normalized;
    const FitResult fit = Fit(raw, curve, options);
    const FitReport report =
        BuildFitReport(manifest, cmd.feature, raw, curve, fit);

    // Media paths are resolved against the manifest's directory.
    const fs::path base = fs::absolute(cmd.manifest_path).parent_path();
    std::vector<std::string> paths;
    std::vector<std::string> lacking;
    for (const std::size_t i : fit.ordering) {
      const TrackRecord& t = manifest.tracks[i];
      if (t.media_path) {
        paths.push_back((base / *t.media_path).lexically_normal().string());
      } else {
        lacking.push_back(t.id);
      }
    }
    if (!paths.empty() && !lacking.empty()) {
      err << "error: tracks without a media path:";
      for (const auto& id : lacking) err << " " << id;
      err << "\n";
      return static_cast<int>(kExitInput);
    }

    WriteFile(cmd.report_path, FitReportToJson(report));
    if (paths.empty()) {
      err << "warning: no track has a media path; playlist not written\n";
    } else {
      WriteFile(cmd.playlist_path, RenderM3u(paths));
    }
    char line[128];
    std::snprintf(line, sizeof(line), "d_min=%.17g\ntotal_cost=%.17g\n",
                  fit.d_min, fit.total_cost);
    out << line;
    return static_cast<int>(kExitOk);
  });
}

int CmdCurve(long long n, const std::string& out_path, std::ostream& out,
             std::ostream& err) {
  if (n < 2) {
    err << "error: --n must be at least 2 (got " << n << ")\n";
    return kExitUsage;
  }
  return Guarded(err, [&] {
    WriteFile(out_path, CurveSamplesCsv(DefaultNarrativeCurve(),
                                        static_cast<std::size_t>(n)));
    out << "wrote " << n << " samples to " << out_path << "\n";
    return static_cast<int>(kExitOk);
  });
}

int CmdExtract(const ExtractCommand& cmd, std::ostream& out, std::ostream& err) {
  ExtractorSpec spec;
  try {
    spec = ExtractorSpec::FromCommandLine(
        cmd.extractor_cmd,
        std::chrono::milliseconds(
            static_cast<long long>(cmd.timeout_seconds * 1000.0)));
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::error_code ec;
  if (!fs::is_directory(cmd.dir, ec)) {
    err << "error: \"" << cmd.dir << "\" is not a readable directory\n";
    return kExitInput;
  }

  return Guarded(err, [&] {
    const std::vector<fs::path> files = ScanAudioFiles(cmd.dir);

    // Previous output doubles as the cache.
    std::map<std::string, TrackRecord> cache;
    if (fs::exists(cmd.out_path)) {
      try {
        for (TrackRecord& t : LoadManifestFile(cmd.out_path).tracks) {
          if (t.media_path && t.source && t.features.count("tempo")) {
            std::string key = *t.media_path;
            cache.emplace(std::move(key), std::move(t));
          }
        }
      } catch (const Error& e) {
        err << "warning: ignoring unreadable cache \"" << cmd.out_path
            << "\": " << e.what() << "\n";
      }
    }

    std::vector<TrackRecord> tracks(files.size());
    std::vector<std::size_t> pending;
    for (std::size_t k = 0; k < files.size(); ++k) {
      const fs::path abs = fs::absolute(files[k]).lexically_normal();
      TrackRecord& t = tracks[k];
      t.id = files[k].lexically_relative(cmd.dir).generic_string();
      t.media_path = abs.string();
      t.source = StampOf(files[k]);
      const auto hit = cache.find(*t.media_path);
      if (hit != cache.end() && hit->second.source == t.source) {
        t.features = hit->second.features;
      } else {
        pending.push_back(k);
      }
    }

    std::vector<ExtractionOutcome> outcomes(files.size());
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min<std::size_t>(
        pending.size(), cmd.jobs > 0 ? static_cast<std::size_t>(cmd.jobs) : hw);
    std::atomic<std::size_t> next{0};
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (std::size_t q = next++; q < pending.size(); q = next++) {
            const std::size_t k = pending[q];
            outcomes[k] = ExtractOne(spec, *tracks[k].media_path);
          }
        });
      }
    }

    std::vector<std::size_t> failed;
    for (const std::size_t k : pending) {
      if (outcomes[k].tempo) {
        tracks[k].features["tempo"] = *outcomes[k].tempo;
      } else {
        failed.push_back(k);
      }
    }
    if (!failed.empty()) {
      err << "error: extraction failed for " << failed.size() << " file(s):\n";
      for (const std::size_t k : failed) {
        err << "  " << *tracks[k].media_path << ": " << outcomes[k].failure
            << "\n";
      }
      return static_cast<int>(kExitExtractor);
    }

    if (files.empty()) {
      err << "warning: no audio files found under \"" << cmd.dir << "\"\n";
    }
    FeatureManifest manifest;
    manifest.tracks = std::move(tracks);
    WriteFile(cmd.out_path, SerializeManifest(manifest));
    out << "tracks=" << manifest.tracks.size() << " extracted=" << pending.size()
        << " reused=" << manifest.tracks.size() - pending.size() << "\n";
    return static_cast<int>(kExitOk);
  });
}

int CmdZeta(const ZetaCommand& cmd, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    FeatureManifest manifest = LoadManifestFile(cmd.manifest_path);
    const ZetaProjection projection =
        LoadZetaProjection(ReadFile(cmd.weights_path));

    std::vector<double> zetas(manifest.tracks.size());
    std::vector<MissingFeatureError::Entry> missing;
    for (std::size_t k = 0; k < manifest.tracks.size(); ++k) {
      try {
        zetas[k] = Zeta(projection, manifest.tracks[k]);
      } catch (const MissingFeatureError& e) {
        missing.insert(missing.end(), e.entries().begin(), e.entries().end());
      }
    }
    if (!missing.empty()) throw MissingFeatureError(std::move(missing));

    for (std::size_t k = 0; k < manifest.tracks.size(); ++k) {
      TrackRecord& t = manifest.tracks[k];
      if (t.features.count("zeta")) {
        err << "warning: overwriting existing zeta of track \"" << t.id
            << "\"\n";
      }
      t.features["zeta"] = zetas[k];
    }
    WriteFile(cmd.out_path, SerializeManifest(manifest));
    out << "tracks=" << manifest.tracks.size() << "\n";
    return static_cast<int>(kExitOk);
  });
}

}  // namespace psb
