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

#ifndef PSB_FEATURE_MODEL_HPP_
#define PSB_FEATURE_MODEL_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace psb {

// Size and modification time of the media file a track was extracted from.
// Used as the extraction cache key alongside the path.
struct FileStamp {
  std::uintmax_t size = 0;
  std::int64_t mtime_ns = 0;

  friend bool operator==(const FileStamp&, const FileStamp&) = default;
};

struct TrackRecord {
  std::string id;
  std::optional<std::string> media_path;
  std::map<std::string, double> features;
  std::optional<FileStamp> source;

  friend bool operator==(const TrackRecord&, const TrackRecord&) = default;
};

struct FeatureManifest {
  static constexpr int kVersion = 1;

  int version = kVersion;
  std::vector<TrackRecord> tracks;

  friend bool operator==(const FeatureManifest&,
                         const FeatureManifest&) = default;
};

// Parses the UTF-8 JSON manifest. Track order follows the file; fields
// this library does not know are ignored.
FeatureManifest LoadManifest(std::string_view bytes);
FeatureManifest LoadManifestFile(const std::string& path);

// Deterministic serialization (sorted feature keys, two-space indent).
std::string SerializeManifest(const FeatureManifest& manifest);

// One value per track in manifest order. Throws MissingFeatureError naming
// every track that lacks the feature.
std::vector<double> SelectFeature(const FeatureManifest& manifest,
                                  std::string_view name);

// Per-collection min-max scaling into [0, 1]; a constant input maps to 0.5.
std::vector<double> Normalize(std::span<const double> values);

// Learned scalar encoder: sigmoid of a linear map over named features.
struct ZetaProjection {
  std::map<std::string, double> weights;
  double bias = 0.0;
};

// {"bias": <number>, "weights": {"<feature>": <number>, ...}}
ZetaProjection LoadZetaProjection(std::string_view bytes);

double Sigmoid(double u);

// Result lies strictly inside (0, 1); saturated values are pulled in to the
// neighbouring representable double.
double Zeta(const ZetaProjection& projection, const TrackRecord& track);

struct ContrastiveLossInput {
  double prediction = 0.0;
  double target = 0.0;
  std::vector<double> noise_encodings;
};

// (prediction - target)^2 - mean_i (prediction - noise_i)^2
double ContrastiveLoss(const ContrastiveLossInput& input);

}  // namespace psb

#endif  // PSB_FEATURE_MODEL_HPP_
