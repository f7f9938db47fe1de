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

#include "psb/feature_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "psb/error.hpp"

namespace psb {
namespace {

using nlohmann::json;

// Converts a byte offset into 1-based line and column numbers.
std::pair<std::size_t, std::size_t> LineColumn(std::string_view text,
                                               std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t k = 0; k < offset; ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

[[noreturn]] void SchemaError(const std::string& where, const std::string& what) {
  throw ParseError("manifest " + where + ": " + what, 0, 0);
}

json ParseJson(std::string_view bytes, std::string_view what) {
  try {
    return json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    // e.byte is the 1-based index of the offending character.
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, column] = LineColumn(bytes, offset);
    std::ostringstream msg;
    msg << what << " parse error at line " << line << ", column " << column
        << " (offset " << offset << ")";
    throw ParseError(msg.str(), line, column);
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + " parse error: " + e.what(), 0, 0);
  }
}

double FiniteNumber(const json& j, const std::string& where) {
  if (!j.is_number()) SchemaError(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) SchemaError(where, "value is not finite");
  return v;
}

TrackRecord ParseTrack(const json& jt, std::size_t index) {
  const std::string where = "tracks[" + std::to_string(index) + "]";
  if (!jt.is_object()) SchemaError(where, "expected an object");
  TrackRecord track;

  const auto id = jt.find("id");
  if (id == jt.end() || !id->is_string()) {
    SchemaError(where, "missing string field \"id\"");
  }
  track.id = id->get<std::string>();
  if (track.id.empty()) SchemaError(where, "empty track id");

  if (const auto path = jt.find("path"); path != jt.end() && !path->is_null()) {
    if (!path->is_string()) SchemaError(where + ".path", "expected a string");
    track.media_path = path->get<std::string>();
  }

  if (const auto features = jt.find("features"); features != jt.end()) {
    if (!features->is_object()) {
      SchemaError(where + ".features", "expected an object");
    }
    for (const auto& [name, value] : features->items()) {
      track.features[name] =
          FiniteNumber(value, where + ".features." + name);
    }
  }

  if (const auto source = jt.find("source"); source != jt.end()) {
    if (!source->is_object()) SchemaError(where + ".source", "expected an object");
    FileStamp stamp;
    try {
      stamp.size = source->at("size").get<std::uintmax_t>();
      stamp.mtime_ns = source->at("mtime_ns").get<std::int64_t>();
    } catch (const json::exception&) {
      SchemaError(where + ".source", "expected integer size and mtime_ns");
    }
    track.source = stamp;
  }
  return track;
}

}  // namespace

MissingFeatureError::MissingFeatureError(std::vector<Entry> entries)
    : Error(Describe(entries)), entries_(std::move(entries)) {}

std::string MissingFeatureError::Describe(const std::vector<Entry>& entries) {
  std::string out = "missing features:";
  for (const Entry& e : entries) {
    out += " track \"" + e.track_id + "\" lacks";
    for (std::size_t k = 0; k < e.features.size(); ++k) {
      out += (k == 0 ? " \"" : ", \"") + e.features[k] + "\"";
    }
    out += ";";
  }
  out.pop_back();
  return out;
}

FeatureManifest LoadManifest(std::string_view bytes) {
  const json doc = ParseJson(bytes, "manifest");
  if (!doc.is_object()) SchemaError("root", "expected an object");

  const auto version = doc.find("version");
  if (version == doc.end()) SchemaError("root", "missing \"version\"");
  if (!version->is_number_integer()) {
    SchemaError("version", "expected an integer");
  }
  const long long found = version->get<long long>();
  if (found != FeatureManifest::kVersion) throw VersionMismatchError(found);

  const auto tracks = doc.find("tracks");
  if (tracks == doc.end() || !tracks->is_array()) {
    SchemaError("root", "missing array \"tracks\"");
  }

  FeatureManifest manifest;
  std::unordered_set<std::string> seen;
  for (std::size_t k = 0; k < tracks->size(); ++k) {
    TrackRecord track = ParseTrack((*tracks)[k], k);
    if (!seen.insert(track.id).second) throw DuplicateIdError(track.id);
    manifest.tracks.push_back(std::move(track));
  }
  return manifest;
}

FeatureManifest LoadManifestFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read manifest \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return LoadManifest(buf.str());
}

std::string SerializeManifest(const FeatureManifest& manifest) {
  nlohmann::ordered_json doc;
  doc["version"] = manifest.version;
  doc["tracks"] = nlohmann::ordered_json::array();
  for (const TrackRecord& t : manifest.tracks) {
    nlohmann::ordered_json jt;
    jt["id"] = t.id;
    if (t.media_path) jt["path"] = *t.media_path;
    jt["features"] = nlohmann::ordered_json::object();
    for (const auto& [name, value] : t.features) jt["features"][name] = value;
    if (t.source) {
      jt["source"] = {{"size", t.source->size},
                      {"mtime_ns", t.source->mtime_ns}};
    }
    doc["tracks"].push_back(std::move(jt));
  }
  return doc.dump(2) + "\n";
}

std::vector<double> SelectFeature(const FeatureManifest& manifest,
                                  std::string_view name) {
  if (name.empty()) throw InvalidArgument("feature name must be nonempty");
  const std::string key(name);
  std::vector<double> out;
  out.reserve(manifest.tracks.size());
  std::vector<MissingFeatureError::Entry> missing;
  for (const TrackRecord& t : manifest.tracks) {
    const auto it = t.features.find(key);
    if (it == t.features.end()) {
      missing.push_back({t.id, {key}});
    } else {
      out.push_back(it->second);
    }
  }
  if (!missing.empty()) throw MissingFeatureError(std::move(missing));
  return out;
}

std::vector<double> Normalize(std::span<const double> values) {
  if (values.empty()) throw InvalidArgument("cannot normalize an empty vector");
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidArgument("non-finite value to normalize");
  }
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  std::vector<double> out(values.size());
  if (!(hi > lo)) {
    std::fill(out.begin(), out.end(), 0.5);
    return out;
  }
  double range = hi - lo;
  if (std::isfinite(range)) {
    for (std::size_t k = 0; k < values.size(); ++k) {
      out[k] = (values[k] - lo) / range;
    }
  } else {
    // hi - lo overflows; halve everything first
    range = hi / 2 - lo / 2;
    for (std::size_t k = 0; k < values.size(); ++k) {
      out[k] = (values[k] / 2 - lo / 2) / range;
    }
  }
  return out;
}

ZetaProjection LoadZetaProjection(std::string_view bytes) {
  const json doc = ParseJson(bytes, "weights");
  if (!doc.is_object()) throw InvalidArgument("weights: expected an object");
  ZetaProjection projection;
  const auto bias = doc.find("bias");
  if (bias == doc.end() || !bias->is_number()) {
    throw InvalidArgument("weights: missing numeric \"bias\"");
  }
  projection.bias = bias->get<double>();
  if (!std::isfinite(projection.bias)) {
    throw InvalidArgument("weights: bias is not finite");
  }
  const auto weights = doc.find("weights");
  if (weights == doc.end() || !weights->is_object()) {
    throw InvalidArgument("weights: missing object \"weights\"");
  }
  for (const auto& [name, value] : weights->items()) {
    if (!value.is_number() || !std::isfinite(value.get<double>())) {
      throw InvalidArgument("weights: \"" + name + "\" is not a finite number");
    }
    projection.weights[name] = value.get<double>();
  }
  return projection;
}

double Sigmoid(double u) {
  if (u >= 0.0) return 1.0 / (1.0 + std::exp(-u));
  const double e = std::exp(u);
  return e / (1.0 + e);
}

double Zeta(const ZetaProjection& projection, const TrackRecord& track) {
  std::vector<std::string> absent;
  double u = projection.bias;
  for (const auto& [name, weight] : projection.weights) {
    const auto it = track.features.find(name);
    if (it == track.features.end()) {
      absent.push_back(name);
      continue;
    }
    u += weight * it->second;
  }
  if (!absent.empty()) {
    throw MissingFeatureError({{track.id, std::move(absent)}});
  }
  if (std::isnan(u)) {
    throw InvalidArgument("zeta pre-activation for \"" + track.id +
                          "\" is undefined");
  }
  constexpr double kLowest = std::numeric_limits<double>::denorm_min();
  const double kHighest = std::nextafter(1.0, 0.0);
  return std::clamp(Sigmoid(u), kLowest, kHighest);
}

double ContrastiveLoss(const ContrastiveLossInput& input) {
  if (input.noise_encodings.empty()) {
    throw InvalidArgument("contrastive loss needs at least one noise encoding");
  }
  if (!std::isfinite(input.prediction) || !std::isfinite(input.target)) {
    throw InvalidArgument("contrastive loss input is not finite");
  }
  const double fit = input.prediction - input.target;
  double noise = 0.0;
  for (double e : input.noise_encodings) {
    if (!std::isfinite(e)) {
      throw InvalidArgument("contrastive loss noise encoding is not finite");
    }
    const double diff = input.prediction - e;
    noise += diff * diff;
  }
  return fit * fit - noise / static_cast<double>(input.noise_encodings.size());
}

}  // namespace psb
