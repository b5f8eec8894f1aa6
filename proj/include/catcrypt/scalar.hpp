// Copyright 2026 The catcrypt Authors
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

#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

namespace catcrypt {

using Rational = mpq_class;

// Exact rational or binary64. Arithmetic between two rationals stays exact;
// any operation touching a float yields a float.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(int v) : value_(Rational(v)) {}
  Scalar(long v) : value_(Rational(v)) {}
  Scalar(const Rational& v) : value_(v) { canonicalize(); }

  static Scalar ratio(long num, long den);
  static Scalar from_double(double v) { return Scalar(FloatTag{}, v); }
  // Accepts "p/q", integers and decimals (parsed exactly), or a float with
  // an exponent / trailing 'f' (parsed as binary64).
  static Scalar parse(std::string_view text);

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  const Rational& rational() const;
  double to_double() const;
  Scalar to_float() const { return from_double(to_double()); }

  bool is_zero() const;
  int sign() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

  // "p/q" or "n" for rationals, shortest round-trip decimal for floats.
  std::string str() const;

 private:
  struct FloatTag {};
  Scalar(FloatTag, double v) : value_(v) {}
  void canonicalize();

  std::variant<Rational, double> value_;
};

Scalar abs(const Scalar& s);
Scalar max(const Scalar& a, const Scalar& b);
Scalar min(const Scalar& a, const Scalar& b);
std::ostream& operator<<(std::ostream& os, const Scalar& s);

// Default tolerances for float mode.
inline constexpr double kTolEq = 1e-9;
inline constexpr double kTolSum = 1e-9;

}  // namespace catcrypt
