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

#include "psb/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>

#include "psb/error.hpp"

namespace psb {
namespace {

std::int64_t CheckedMul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw InvalidArgument("rational overflow");
  }
  return out;
}

std::int64_t CheckedAdd(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw InvalidArgument("rational overflow");
  }
  return out;
}

std::int64_t ParseInteger(std::string_view text, std::string_view whole) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  std::int64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidArgument("malformed rational \"" + std::string(whole) + "\"");
  }
  return value;
}

std::int64_t Pow10(int exponent) {
  std::int64_t out = 1;
  for (int k = 0; k < exponent; ++k) out = CheckedMul(out, 10);
  return out;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  if (den < 0) {
    num = CheckedMul(num, -1);
    den = CheckedMul(den, -1);
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::Parse(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(ParseInteger(text.substr(0, slash), whole),
                    ParseInteger(text.substr(slash + 1), whole));
  }

  // Decimal: [sign] digits [. digits] [e|E [sign] digits]
  int exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    exponent = static_cast<int>(ParseInteger(text.substr(e + 1), whole));
    text = text.substr(0, e);
  }
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  std::string digits;
  bool seen_point = false;
  for (char c : text) {
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_point) --exponent;
    } else {
      throw InvalidArgument("malformed rational \"" + std::string(whole) +
                            "\"");
    }
  }
  if (digits.empty()) {
    throw InvalidArgument("malformed rational \"" + std::string(whole) + "\"");
  }
  std::int64_t mantissa = 0;
  for (char c : digits) {
    mantissa = CheckedAdd(CheckedMul(mantissa, 10), c - '0');
  }
  if (negative) mantissa = -mantissa;
  if (exponent >= 0) return Rational(CheckedMul(mantissa, Pow10(exponent)), 1);
  return Rational(mantissa, Pow10(-exponent));
}

std::string Rational::ToString() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator+(const Rational& other) const {
  const std::int64_t g = std::gcd(den_, other.den_);
  const std::int64_t lhs_scale = other.den_ / g;
  const std::int64_t rhs_scale = den_ / g;
  return Rational(CheckedAdd(CheckedMul(num_, lhs_scale),
                             CheckedMul(other.num_, rhs_scale)),
                  CheckedMul(den_, lhs_scale));
}

}  // namespace psb
