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

#include "psb/template_curve.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "psb/error.hpp"

namespace psb {
namespace {

std::string FormatDouble(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

std::string FormatViolation(std::string_view what, double t, double magnitude) {
  std::ostringstream out;
  out << what << " at t = " << FormatDouble(t) << " (magnitude "
      << FormatDouble(magnitude) << ")";
  return out.str();
}

bool CoefficientsFinite(const PolySegment& s) {
  return std::isfinite(s.c0.ToDouble()) && std::isfinite(s.c1.ToDouble()) &&
         std::isfinite(s.c2.ToDouble());
}

// Minimum and maximum of a quadratic piece over its closed interval.
std::pair<std::pair<double, double>, std::pair<double, double>> SegmentExtrema(
    const PolySegment& s) {
  std::vector<double> candidates = {s.t_lo, s.t_hi};
  const double c1 = s.c1.ToDouble();
  const double c2 = s.c2.ToDouble();
  if (c2 != 0.0) {
    const double vertex = -c1 / (2.0 * c2);
    if (vertex > s.t_lo && vertex < s.t_hi) candidates.push_back(vertex);
  }
  std::pair<double, double> lo{s.t_lo, s.Eval(s.t_lo)};
  std::pair<double, double> hi = lo;
  for (double t : candidates) {
    const double v = s.Eval(t);
    if (v < lo.second) lo = {t, v};
    if (v > hi.second) hi = {t, v};
  }
  return {lo, hi};
}

Rational CoefficientFromJson(const nlohmann::json& j) {
  if (j.is_string()) return Rational::Parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number_float()) return Rational::Parse(j.dump());
  throw InvalidArgument("curve coefficient must be a number or fraction string");
}

}  // namespace

double PolySegment::Eval(double t) const {
  return c0.ToDouble() + c1.ToDouble() * t + c2.ToDouble() * t * t;
}

double PolySegment::Slope(double t) const {
  return c1.ToDouble() + 2.0 * c2.ToDouble() * t;
}

TemplateCurve::TemplateCurve(std::string name, std::vector<PolySegment> segments,
                             std::vector<Anchor> anchors)
    : name_(std::move(name)),
      segments_(std::move(segments)),
      anchors_(std::move(anchors)) {}

int TemplateCurve::SegmentIndex(double t) const {
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    const PolySegment& s = segments_[k];
    if (s.t_lo <= t && t < s.t_hi) return static_cast<int>(k);
  }
  if (!segments_.empty() && t == segments_.back().t_hi) {
    return static_cast<int>(segments_.size()) - 1;
  }
  return -1;
}

double TemplateCurve::Eval(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw DomainError("template position " + FormatDouble(t) +
                      " outside [0, 1]");
  }
  const int k = SegmentIndex(t);
  if (k < 0) {
    throw DomainError("template position " + FormatDouble(t) +
                      " not covered by any segment");
  }
  return segments_[k].Eval(t);
}

TemplateCurve DefaultNarrativeCurve() {
  // Neutral start, mild rise (exposition), collapse (crisis), recovery to the
  // peak (climax), and a conclusion above the start but below the peak.
  std::vector<PolySegment> segments = {
      {0.0, 0.2, Rational(1, 2), Rational(5, 2), Rational(-25, 4)},
      {0.2, 0.3, Rational(-1, 4), Rational(10), Rational(-25)},
      {0.3, 0.5, Rational(25, 8), Rational(-25, 2), Rational(25, 2)},
      {0.5, 0.65, Rational(50, 9), Rational(-200, 9), Rational(200, 9)},
      {0.65, 0.8, Rational(-119, 9), Rational(320, 9), Rational(-200, 9)},
      {0.8, 1.0, Rational(-3), Rational(10), Rational(-25, 4)},
  };
  std::vector<Anchor> anchors = {
      {0.0, 0.5}, {0.2, 0.75}, {0.3, 0.5}, {0.5, 0.0},
      {0.65, 0.5}, {0.8, 1.0}, {1.0, 0.75},
  };
  return TemplateCurve("default", std::move(segments), std::move(anchors));
}

double GridPosition(std::size_t j, std::size_t n) {
  if (n <= 1) return 0.0;
  return static_cast<double>(j) / static_cast<double>(n - 1);
}

std::vector<double> SamplePositions(const TemplateCurve& curve, std::size_t n) {
  if (n == 0) throw InvalidArgument("cannot sample zero positions");
  std::vector<double> z(n);
  for (std::size_t j = 0; j < n; ++j) z[j] = curve.Eval(GridPosition(j, n));
  return z;
}

std::string_view ToString(CurveViolation::Kind kind) {
  switch (kind) {
    case CurveViolation::Kind::kEmpty: return "empty";
    case CurveViolation::Kind::kDomainGap: return "domain_gap";
    case CurveViolation::Kind::kDegenerateSegment: return "degenerate_segment";
    case CurveViolation::Kind::kNonFinite: return "non_finite";
    case CurveViolation::Kind::kDiscontinuity: return "discontinuity";
    case CurveViolation::Kind::kAnchorMismatch: return "anchor_mismatch";
    case CurveViolation::Kind::kOutOfRange: return "out_of_range";
  }
  return "unknown";
}

std::vector<CurveViolation> ValidateCurve(const TemplateCurve& curve) {
  using Kind = CurveViolation::Kind;
  std::vector<CurveViolation> report;
  const auto& segs = curve.segments();
  if (segs.empty()) {
    report.push_back({Kind::kEmpty, 0.0, 1.0, "curve has no segments"});
    return report;
  }

  bool well_formed = true;
  for (const PolySegment& s : segs) {
    if (!std::isfinite(s.t_lo) || !std::isfinite(s.t_hi) ||
        !CoefficientsFinite(s)) {
      report.push_back({Kind::kNonFinite, s.t_lo,
                        std::numeric_limits<double>::infinity(),
                        "segment starting at t = " + FormatDouble(s.t_lo) +
                            " has a non-finite bound or coefficient"});
      well_formed = false;
    } else if (!(s.t_lo < s.t_hi)) {
      report.push_back({Kind::kDegenerateSegment, s.t_lo, s.t_lo - s.t_hi,
                        FormatViolation("segment with t_lo >= t_hi", s.t_lo,
                                        s.t_lo - s.t_hi)});
      well_formed = false;
    }
  }

  if (segs.front().t_lo != 0.0) {
    const double gap = std::abs(segs.front().t_lo);
    report.push_back({Kind::kDomainGap, 0.0, gap,
                      FormatViolation("domain does not start at 0", 0.0, gap)});
  }
  for (std::size_t k = 0; k + 1 < segs.size(); ++k) {
    const double end = segs[k].t_hi;
    const double next = segs[k + 1].t_lo;
    if (end != next) {
      const double gap = std::abs(next - end);
      report.push_back(
          {Kind::kDomainGap, end, gap,
           FormatViolation(next > end ? "domain gap" : "segment overlap", end,
                           gap)});
      continue;
    }
    if (!well_formed) continue;
    const double jump = std::abs(segs[k].Eval(end) - segs[k + 1].Eval(end));
    if (!(jump <= kContinuityTolerance)) {
      report.push_back({Kind::kDiscontinuity, end, jump,
                        FormatViolation("discontinuity", end, jump)});
    }
  }
  if (segs.back().t_hi != 1.0) {
    const double where = segs.back().t_hi;
    const double gap = std::abs(1.0 - where);
    report.push_back({Kind::kDomainGap, where, gap,
                      FormatViolation("domain does not end at 1", where, gap)});
  }

  if (!well_formed) return report;

  for (const Anchor& a : curve.anchors()) {
    const int k = (a.t >= 0.0 && a.t <= 1.0) ? curve.SegmentIndex(a.t) : -1;
    if (k < 0) {
      report.push_back({Kind::kAnchorMismatch, a.t,
                        std::numeric_limits<double>::infinity(),
                        "anchor at t = " + FormatDouble(a.t) +
                            " is not covered by any segment"});
      continue;
    }
    const double miss = std::abs(segs[k].Eval(a.t) - a.y);
    if (!(miss <= kAnchorTolerance)) {
      report.push_back({Kind::kAnchorMismatch, a.t, miss,
                        FormatViolation("anchor mismatch", a.t, miss)});
    }
  }

  for (const PolySegment& s : segs) {
    const auto [lo, hi] = SegmentExtrema(s);
    if (lo.second < -kAnchorTolerance) {
      report.push_back({Kind::kOutOfRange, lo.first, -lo.second,
                        FormatViolation("value below 0", lo.first, -lo.second)});
    }
    if (hi.second > 1.0 + kAnchorTolerance) {
      report.push_back(
          {Kind::kOutOfRange, hi.first, hi.second - 1.0,
           FormatViolation("value above 1", hi.first, hi.second - 1.0)});
    }
  }
  return report;
}

TemplateCurve LoadCurveJson(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("curve JSON: ") + e.what());
  }
  try {
    std::vector<PolySegment> segments;
    for (const auto& js : doc.at("segments")) {
      segments.push_back({js.at("t_lo").get<double>(),
                          js.at("t_hi").get<double>(),
                          CoefficientFromJson(js.at("c0")),
                          CoefficientFromJson(js.at("c1")),
                          CoefficientFromJson(js.at("c2"))});
    }
    std::vector<Anchor> anchors;
    if (doc.contains("anchors")) {
      for (const auto& ja : doc.at("anchors")) {
        if (ja.is_array()) {
          anchors.push_back({ja.at(0).get<double>(), ja.at(1).get<double>()});
        } else {
          anchors.push_back({ja.at("t").get<double>(), ja.at("y").get<double>()});
        }
      }
    }
    return TemplateCurve(doc.value("name", std::string("custom")),
                         std::move(segments), std::move(anchors));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("curve JSON: ") + e.what());
  }
}

std::string CurveSamplesCsv(const TemplateCurve& curve, std::size_t n) {
  if (n < 2) throw InvalidArgument("curve export needs at least 2 samples");
  std::string out = "t,value\n";
  for (std::size_t j = 0; j < n; ++j) {
    const double t = GridPosition(j, n);
    out += FormatDouble(t);
    out += ',';
    out += FormatDouble(curve.Eval(t));
    out += '\n';
  }
  return out;
}

}  // namespace psb
