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

#include "catcrypt/scalar.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "catcrypt/error.hpp"

namespace catcrypt {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::ColumnNotStochastic: return "ColumnNotStochastic";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InterfaceMismatch: return "InterfaceMismatch";
    case ErrorCode::BadPermutation: return "BadPermutation";
    case ErrorCode::ElementOutOfRange: return "ElementOutOfRange";
    case ErrorCode::BadPortSelection: return "BadPortSelection";
    case ErrorCode::SizeLimit: return "SizeLimit";
    case ErrorCode::ModeMismatch: return "ModeMismatch";
    case ErrorCode::ChainMismatch: return "ChainMismatch";
    case ErrorCode::NotCausal: return "NotCausal";
    case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorCode::DirectionMismatch: return "DirectionMismatch";
    case ErrorCode::AcausalSchedule: return "AcausalSchedule";
    case ErrorCode::SignatureMismatch: return "SignatureMismatch";
    case ErrorCode::WiringMismatch: return "WiringMismatch";
    case ErrorCode::NotDeterministic: return "NotDeterministic";
    case ErrorCode::CompositeVerificationFailed:
      return "CompositeVerificationFailed";
    case ErrorCode::ProblemTooLarge: return "ProblemTooLarge";
    case ErrorCode::NotLatinSquare: return "NotLatinSquare";
    case ErrorCode::NotAssociative: return "NotAssociative";
    case ErrorCode::NoIdentity: return "NoIdentity";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnresolvedName: return "UnresolvedName";
    case ErrorCode::DuplicateName: return "DuplicateName";
  }
  return "Unknown";
}

Scalar Scalar::ratio(long num, long den) {
  if (den == 0) fail(ErrorCode::InvalidArgument, "zero denominator");
  return Scalar(Rational(num, den));
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

Rational parse_integer(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s))
    fail(ErrorCode::InvalidArgument, "bad integer '" + std::string(s) + "'");
  mpz_class z(std::string(s), 10);
  if (neg) z = -z;
  return Rational(z);
}

}  // namespace

Scalar Scalar::parse(std::string_view text) {
  if (text.empty()) fail(ErrorCode::InvalidArgument, "empty number");
  if (text.back() == 'f' || text.find_first_of("eE") != std::string_view::npos) {
    std::string_view body = text.back() == 'f' ? text.substr(0, text.size() - 1)
                                               : text;
    double v = 0;
    auto [ptr, ec] =
        std::from_chars(body.data(), body.data() + body.size(), v);
    if (ec != std::errc() || ptr != body.data() + body.size())
      fail(ErrorCode::InvalidArgument, "bad float '" + std::string(text) + "'");
    return from_double(v);
  }
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_integer(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && den_text[0] == '-')
      fail(ErrorCode::InvalidArgument, "negative denominator");
    Rational den = parse_integer(den_text);
    if (den == 0) fail(ErrorCode::InvalidArgument, "zero denominator");
    return Scalar(Rational(num / den));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    bool neg = !text.empty() && text[0] == '-';
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+'))
      whole.remove_prefix(1);
    if ((whole.empty() && frac.empty()) ||
        (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac)))
      fail(ErrorCode::InvalidArgument, "bad decimal '" + std::string(text) + "'");
    mpz_class scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    mpz_class w = whole.empty() ? mpz_class(0) : mpz_class(std::string(whole));
    mpz_class f = frac.empty() ? mpz_class(0) : mpz_class(std::string(frac));
    Rational r(w * scale + f, scale);
    r.canonicalize();
    if (neg) r = -r;
    return Scalar(r);
  }
  return Scalar(parse_integer(text));
}

const Rational& Scalar::rational() const {
  if (auto p = std::get_if<Rational>(&value_)) return *p;
  fail(ErrorCode::ModeMismatch, "scalar is not exact");
}

double Scalar::to_double() const {
  if (auto p = std::get_if<Rational>(&value_)) return p->get_d();
  return std::get<double>(value_);
}

void Scalar::canonicalize() {
  if (auto p = std::get_if<Rational>(&value_)) p->canonicalize();
}

bool Scalar::is_zero() const { return sign() == 0; }

int Scalar::sign() const {
  if (auto p = std::get_if<Rational>(&value_)) return sgn(*p);
  double d = std::get<double>(value_);
  return (d > 0) - (d < 0);
}

#define CATCRYPT_SCALAR_OP(op)                                        \
  Scalar& Scalar::operator op##=(const Scalar& o) {                   \
    auto* a = std::get_if<Rational>(&value_);                         \
    auto* b = std::get_if<Rational>(&o.value_);                       \
    if (a && b) {                                                     \
      *a op## = *b;                                                   \
    } else {                                                          \
      value_ = to_double() op o.to_double();                          \
    }                                                                 \
    return *this;                                                     \
  }

CATCRYPT_SCALAR_OP(+)
CATCRYPT_SCALAR_OP(-)
CATCRYPT_SCALAR_OP(*)
#undef CATCRYPT_SCALAR_OP

Scalar& Scalar::operator/=(const Scalar& o) {
  auto* a = std::get_if<Rational>(&value_);
  auto* b = std::get_if<Rational>(&o.value_);
  if (a && b) {
    if (*b == 0) fail(ErrorCode::InvalidArgument, "division by zero");
    *a /= *b;
  } else {
    value_ = to_double() / o.to_double();
  }
  return *this;
}

Scalar Scalar::operator-() const {
  if (auto p = std::get_if<Rational>(&value_)) return Scalar(Rational(-*p));
  return from_double(-std::get<double>(value_));
}

bool operator==(const Scalar& a, const Scalar& b) {
  auto* x = std::get_if<Rational>(&a.value_);
  auto* y = std::get_if<Rational>(&b.value_);
  if (x && y) return *x == *y;
  return a.to_double() == b.to_double();
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  auto* x = std::get_if<Rational>(&a.value_);
  auto* y = std::get_if<Rational>(&b.value_);
  int c;
  if (x && y) {
    c = cmp(*x, *y);
  } else {
    double u = a.to_double(), v = b.to_double();
    c = (u > v) - (u < v);
  }
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater
                        : std::strong_ordering::equal);
}

std::string Scalar::str() const {
  if (auto p = std::get_if<Rational>(&value_)) return p->get_str();
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, std::get<double>(value_));
  std::string s(buf, ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s + "f";
}

Scalar abs(const Scalar& s) { return s.sign() < 0 ? -s : s; }
Scalar max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }
Scalar min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.str();
}

}  // namespace catcrypt
