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

#ifndef PSB_TEMPLATE_CURVE_HPP_
#define PSB_TEMPLATE_CURVE_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "psb/rational.hpp"

namespace psb {

/// One quadratic piece, value = c0 + c1*t + c2*t^2 over [t_lo, t_hi).
struct PolySegment {
  double t_lo = 0.0;
  double t_hi = 1.0;
  Rational c0;
  Rational c1;
  Rational c2;

  double Eval(double t) const;
  /// First derivative c1 + 2*c2*t.
  double Slope(double t) const;
};

struct Anchor {
  double t = 0.0;
  double y = 0.0;
};

/// A narrative-arc template: a piecewise quadratic tiling [0, 1].
///
/// Segments are half-open [t_lo, t_hi) except the last one, which also
/// owns t = 1. Construction does not validate; use ValidateCurve() to
/// obtain a list of invariant violations. The object is immutable and
/// safe to share between threads.
class TemplateCurve {
 public:
  TemplateCurve(std::string name, std::vector<PolySegment> segments,
                std::vector<Anchor> anchors = {});

  const std::string& name() const { return name_; }
  const std::vector<PolySegment>& segments() const { return segments_; }
  const std::vector<Anchor>& anchors() const { return anchors_; }

  /// Throws DomainError when t is outside [0, 1] or not covered by any
  /// segment.
  double Eval(double t) const;

  /// Index of the segment owning t, or -1 when no segment covers it.
  int SegmentIndex(double t) const;

 private:
  std::string name_;
  std::vector<PolySegment> segments_;
  std::vector<Anchor> anchors_;
};

/// The shipped exposition / crisis / climax / conclusion arc.
TemplateCurve DefaultNarrativeCurve();

inline double EvalTemplate(const TemplateCurve& curve, double t) {
  return curve.Eval(t);
}

/// z[j] = f(j / (n - 1)); the single position of a one-item grid is t = 0.
std::vector<double> SamplePositions(const TemplateCurve& curve, std::size_t n);

/// Grid position of index j out of n, matching SamplePositions.
double GridPosition(std::size_t j, std::size_t n);

struct CurveViolation {
  enum class Kind {
    kEmpty,
    kDomainGap,
    kDegenerateSegment,
    kNonFinite,
    kDiscontinuity,
    kAnchorMismatch,
    kOutOfRange,
  };
  Kind kind;
  double t;          // breakpoint, anchor, or gap location
  double magnitude;  // measured discrepancy
  std::string message;
};

std::string_view ToString(CurveViolation::Kind kind);

inline constexpr double kContinuityTolerance = 1e-9;
inline constexpr double kAnchorTolerance = 1e-12;

/// Empty iff every TemplateCurve invariant holds.
std::vector<CurveViolation> ValidateCurve(const TemplateCurve& curve);

/// Loads a curve from JSON:
///   {"name": "...", "segments": [{"t_lo": 0, "t_hi": 0.2,
///     "c0": "1/2", "c1": "5/2", "c2": "-25/4"}, ...],
///    "anchors": [[0.0, 0.5], ...]}
/// Coefficients are exact fraction strings or JSON numbers (reparsed as
/// exact decimals).
TemplateCurve LoadCurveJson(std::string_view text);

/// CSV with header "t,value" and n uniformly spaced rows on [0, 1].
std::string CurveSamplesCsv(const TemplateCurve& curve, std::size_t n);

}  // namespace psb

#endif  // PSB_TEMPLATE_CURVE_HPP_
