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
#include "catcrypt/kernel.hpp"
#include "support/gen.hpp"
#include "support/oracle.hpp"

using namespace catcrypt;

namespace {

const Alphabet kBit{"bit", 2, {}};
const Alphabet kTrit{"trit", 3, {}};

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("make validates stochasticity") {
  CHECK_NOTHROW(Kernel::make({kBit}, {kBit}, {{1, 0}, {0, 1}}));
  CHECK(code_of([] { Kernel::make({kBit}, {kBit}, {{1, -1}, {0, 2}}); }) ==
        ErrorCode::NegativeEntry);
  CHECK(code_of([] {
          Kernel::make({kBit}, {kBit}, {{Scalar::ratio(1, 2), 0}, {Scalar::ratio(1, 3), 1}});
        }) == ErrorCode::ColumnNotStochastic);
  CHECK(code_of([] { Kernel::make({kBit}, {kBit}, std::vector<Scalar>{1, 0, 1}); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("float tables pass within the sum tolerance") {
  std::vector<Scalar> t{Scalar::from_double(0.1), Scalar::from_double(0.2),
                        Scalar::from_double(0.7)};
  CHECK_NOTHROW(Kernel::make({}, {kTrit}, t));
  t[2] = Scalar::from_double(0.71);
  CHECK_THROWS_AS(Kernel::make({}, {kTrit}, t), Error);
}

TEST_CASE("size limit applies before allocation") {
  const std::size_t old = max_port_product();
  set_max_port_product(64);
  Alphabet big{"big", 128, {}};
  CHECK(code_of([&] { uniform({big}); }) == ErrorCode::SizeLimit);
  set_max_port_product(old);
  CHECK_NOTHROW(uniform({big}));
}

TEST_CASE("small named kernels") {
  Kernel c = copy(kBit);
  CHECK(c.rows() == 4);
  CHECK(c.at(0, 0) == Scalar(1));
  CHECK(c.at(3, 1) == Scalar(1));
  CHECK(c.at(1, 0) == Scalar(0));

  Kernel s = swap(kBit, kTrit);
  CHECK(s.dom() == Ports{kBit, kTrit});
  CHECK(s.cod() == Ports{kTrit, kBit});
  // (b, t) -> (t, b): column b*3+t has its 1 at row t*2+b
  for (std::size_t b = 0; b < 2; ++b)
    for (std::size_t t = 0; t < 3; ++t) CHECK(s.at(t * 2 + b, b * 3 + t) == Scalar(1));

  Kernel u = uniform({kTrit});
  for (std::size_t r = 0; r < 3; ++r) CHECK(u.at(r, 0) == Scalar::ratio(1, 3));

  Kernel d = deletion({kBit, kTrit});
  CHECK(d.rows() == 1);
  CHECK(d.cols() == 6);

  Kernel p = point(kTrit, 2);
  CHECK(p.at(2, 0) == Scalar(1));
  CHECK_THROWS_AS(point(kTrit, 3), Error);
}

TEST_CASE("compose matches the oracle and checks interfaces") {
  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    Ports a = gen::ports(rng), b = gen::ports(rng), c = gen::ports(rng);
    Kernel f = gen::kernel(rng, a, b), g = gen::kernel(rng, b, c);
    CHECK(compose(g, f) == oracle::compose(g, f));
  }
  CHECK_THROWS_AS(compose(identity({kBit}), identity({kTrit})), Error);
}

TEST_CASE("tensor matches the oracle") {
  std::mt19937 rng(12);
  for (int i = 0; i < 300; ++i) {
    Kernel f = gen::kernel(rng, gen::ports(rng), gen::ports(rng));
    Kernel g = gen::kernel(rng, gen::ports(rng), gen::ports(rng));
    CHECK(tensor(f, g) == oracle::tensor(f, g));
  }
}

TEST_CASE("unit laws and copy/delete") {
  std::mt19937 rng(13);
  for (int i = 0; i < 200; ++i) {
    Ports a = gen::ports(rng), b = gen::ports(rng);
    Kernel f = gen::kernel(rng, a, b);
    CHECK(compose(f, identity(a)) == f);
    CHECK(compose(identity(b), f) == f);
    CHECK(tensor(f, Kernel()) == f);
    CHECK(compose(deletion(b), f) == deletion(a));
  }
  // delete one leg of a copy
  Kernel drop = tensor(identity({kTrit}), deletion({kTrit}));
  CHECK(compose(drop, copy(kTrit)) == identity({kTrit}));
}

TEST_CASE("permutation and marginalize") {
  Kernel id3 = identity({kBit, kTrit, kBit});
  const std::size_t perm[] = {2, 0, 1};
  Kernel p = permutation({kBit, kTrit, kBit}, perm);
  CHECK(p.cod() == Ports{kBit, kBit, kTrit});
  const std::size_t keep[] = {2, 0, 1};
  CHECK(marginalize(id3, keep) == p);
  const std::size_t bad[] = {0, 0, 1};
  CHECK_THROWS_AS(permutation({kBit, kTrit, kBit}, bad), Error);

  std::mt19937 rng(14);
  for (int i = 0; i < 200; ++i) {
    Ports a = gen::ports(rng), b{gen::alphabet(rng), gen::alphabet(rng)};
    Kernel f = gen::kernel(rng, a, b);
    const std::size_t first[] = {0};
    // keeping port 0 = composing with identity x delete
    Kernel expect = oracle::compose(tensor(identity({b[0]}), deletion({b[1]})), f);
    CHECK(marginalize(f, first) == expect);
  }
}

TEST_CASE("channel distance matches the oracle and is a metric on samples") {
  std::mt19937 rng(15);
  for (int i = 0; i < 300; ++i) {
    Ports a = gen::ports(rng), b = gen::ports(rng);
    Kernel f = gen::kernel(rng, a, b), g = gen::kernel(rng, a, b), h = gen::kernel(rng, a, b);
    CHECK(channel_distance(f, g) == oracle::channel_distance(f, g));
    CHECK(channel_distance(f, f).is_zero());
    CHECK(channel_distance(f, g) == channel_distance(g, f));
    CHECK(channel_distance(f, h) <= channel_distance(f, g) + channel_distance(g, h));
    CHECK(channel_distance(f, g) <= Scalar(1));
    CHECK(equal_within(f, g, channel_distance(f, g) * Scalar(2)));
  }
}

TEST_CASE("dist round-trips through a state") {
  Dist d = Dist::make(kTrit, {Scalar::ratio(1, 2), Scalar::ratio(1, 3), Scalar::ratio(1, 6)});
  Dist back = Dist::from_state(d.as_state());
  CHECK(back.weights == d.weights);
  CHECK_THROWS_AS(Dist::make(kBit, {Scalar(1), Scalar(1)}), Error);
}

TEST_CASE("deterministic kernels") {
  std::mt19937 rng(16);
  for (int i = 0; i < 100; ++i) {
    Ports a = gen::ports(rng), b = gen::ports(rng);
    CHECK(gen::deterministic_kernel(rng, a, b).is_deterministic());
  }
  CHECK_FALSE(uniform({kBit}).is_deterministic());
  CHECK(uniform({kBit}).to_float().is_exact() == false);
}
