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


#include <doctest.h>

#include <random>

#include "catcrypt/error.hpp"
#include "catcrypt/scalar.hpp"

using namespace catcrypt;

TEST_CASE("parse reads fractions and decimals exactly") {
  CHECK(Scalar::parse("1/2") == Scalar::ratio(1, 2));
  CHECK(Scalar::parse("6/4") == Scalar::ratio(3, 2));
  CHECK(Scalar::parse("-2/6") == Scalar::ratio(-1, 3));
  CHECK(Scalar::parse("0.25") == Scalar::ratio(1, 4));
  CHECK(Scalar::parse(".5") == Scalar::ratio(1, 2));
  CHECK(Scalar::parse("-0.125") == Scalar::ratio(-1, 8));
  CHECK(Scalar::parse("3") == Scalar(3));
  CHECK(Scalar::parse("0.1").is_exact());
  // 0.1 is not a binary fraction; exact parsing keeps it 1/10
  CHECK(Scalar::parse("0.1") * Scalar(10) == Scalar(1));
}

TEST_CASE("parse keeps float spellings as binary64") {
  Scalar f = Scalar::parse("0.5f");
  CHECK_FALSE(f.is_exact());
  CHECK(f.to_double() == 0.5);
  CHECK_FALSE(Scalar::parse("1e-3").is_exact());
}

TEST_CASE("parse rejects junk") {
  for (const char* bad : {"", "1/0", "a", "1/-2", "1.2.3", "--1", "1/"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Scalar::parse(bad), Error);
  }
}

TEST_CASE("exact arithmetic stays canonical") {
  Scalar a = Scalar::ratio(2, 4);
  CHECK(a.str() == "1/2");
  CHECK((a + Scalar::ratio(1, 3)).str() == "5/6");
  CHECK((a - a).is_zero());
  CHECK((a * Scalar(4)).str() == "2");
  CHECK((Scalar(1) / Scalar(3)).str() == "1/3");
  CHECK_THROWS_AS(Scalar(1) / Scalar(0), Error);
  CHECK(abs(Scalar::ratio(-3, 7)) == Scalar::ratio(3, 7));
  CHECK(max(Scalar(1), Scalar::ratio(3, 2)) == Scalar::ratio(3, 2));
  CHECK(min(Scalar(1), Scalar::ratio(3, 2)) == Scalar(1));
}

TEST_CASE("mixing exact and float degrades to float") {
  Scalar x = Scalar::ratio(1, 4) + Scalar::from_double(0.25);
  CHECK_FALSE(x.is_exact());
  CHECK(x.to_double() == 0.5);
  CHECK_THROWS_AS(x.rational(), Error);
}

TEST_CASE("ordering agrees with the rationals") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 20);
  for (int i = 0; i < 1000; ++i) {
    long a = num(rng), b = den(rng), c = num(rng), d = den(rng);
    Scalar x = Scalar::ratio(a, b), y = Scalar::ratio(c, d);
    // a/b < c/d  iff  a d < c b  (b, d > 0)
    CHECK((x < y) == (a * d < c * b));
    CHECK((x == y) == (a * d == c * b));
    CHECK(Scalar::parse(x.str()) == x);
  }
}
