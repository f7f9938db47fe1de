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

#ifndef PSB_RATIONAL_HPP_
#define PSB_RATIONAL_HPP_

#include <cstdint>
#include <string>
#include <string_view>

namespace psb {

// An exact fraction num/den with den > 0 and gcd(num, den) = 1.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  // Accepts "p", "p/q", and plain decimal notation such as "-0.125" or
  // "2.5e-1". Throws InvalidArgument on malformed text or overflow.
  static Rational Parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double ToDouble() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  std::string ToString() const;

  Rational operator+(const Rational& other) const;
  Rational operator-() const { return Rational(-num_, den_); }
  Rational operator-(const Rational& other) const { return *this + (-other); }

  friend bool operator==(const Rational&, const Rational&) = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace psb

#endif  // PSB_RATIONAL_HPP_
