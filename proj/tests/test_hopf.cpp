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
#include "catcrypt/hopf.hpp"
#include "support/gen.hpp"
#include "support/oracle.hpp"

using namespace catcrypt;

namespace {

std::vector<FiniteGroup> small_groups() {
  std::vector<FiniteGroup> gs;
  for (std::size_t n = 2; n <= 8; ++n) gs.push_back(cyclic_group(n));
  gs.push_back(symmetric3());
  return gs;
}

// A loop of order 5 that is not associative.
const std::vector<std::vector<std::size_t>> kL5{
    {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

Scalar magnitude(Scalar x) { return x < Scalar(0) ? -x : x; }

}  // namespace

TEST_CASE("group tables") {
  FiniteGroup s3 = symmetric3();
  CHECK(s3.order == 6);
  bool abelian = true;
  for (std::size_t a = 0; a < 6; ++a) {
    CHECK(s3.mul(a, s3.inverse[a]) == s3.identity);
    for (std::size_t b = 0; b < 6; ++b)
      if (s3.mul(a, b) != s3.mul(b, a)) abelian = false;
  }
  CHECK_FALSE(abelian);
  CHECK(group_from_name("cyclic:5").order == 5);
  CHECK(group_from_name("s3").order == 6);

  CHECK(code_of([] { group_from_table("x", {{0, 1}, {0, 1}}); }) == ErrorCode::NotLatinSquare);
  CHECK(code_of([] { group_from_table("x", {{0, 2, 1}, {2, 1, 0}, {1, 0, 2}}); }) ==
        ErrorCode::NoIdentity);
  CHECK(code_of([] { group_from_table("x", kL5); }) == ErrorCode::NotAssociative);
  CHECK(loop_from_table("l5", kL5).order == 5);
}

TEST_CASE("structure kernels match the table") {
  for (const auto& g : small_groups()) {
    GroupKernels k = group_kernels(g);
    const std::size_t n = g.order;
    for (std::size_t x = 0; x < n; ++x) {
      CHECK(k.inv.at(g.inverse[x], x) == Scalar(1));
      for (std::size_t y = 0; y < n; ++y)
        CHECK(k.mult.at(g.mul(x, y), x * n + y) == Scalar(1));
    }
    // antipode law, recomputed with the reference composition
    Kernel lhs = oracle::compose(
        k.mult, oracle::compose(oracle::tensor(identity({g.alphabet()}), k.inv), k.copy));
    Kernel rhs = oracle::compose(k.unit, k.del);
    CHECK(oracle::channel_distance(lhs, rhs) == Scalar(0));
  }
}

TEST_CASE("groups satisfy every Hopf axiom") {
  for (const auto& g : small_groups()) {
    auto res = hopf_axiom_suite(g);
    CHECK(res.size() == 7);
    for (const auto& a : res) {
      INFO(g.name << " " << a.id << " " << a.name);
      CHECK(a.passed);
    }
  }
}

TEST_CASE("a non-associative loop fails associativity") {
  auto res = hopf_axiom_suite(loop_from_table("l5", kL5));
  REQUIRE(res.size() == 7);
  CHECK(res[0].id == "H1");
  CHECK_FALSE(res[0].passed);
}

TEST_CASE("one-time pad is correct and secure over every group") {
  for (const auto& g : small_groups()) {
    OtpInstance inst = build_otp(g);
    INFO(g.name);
    CHECK(otp_correctness(inst));
    OtpSecurity sec = otp_security(inst);
    CHECK(sec.secure());
    REQUIRE(sec.searched.simulator);
  }
}

TEST_CASE("the searched simulator on Z2 is the uniform fake") {
  OtpInstance inst = build_otp(cyclic_group(2));
  OtpSecurity sec = otp_security(inst);
  REQUIRE(sec.searched.simulator);
  const Behavior& s = sec.searched.simulator->sigma;
  oracle::for_each_assignment(s.signature(), [&](const auto& v) {
    CHECK(oracle::entry(s, v) == Scalar::ratio(1, 2));
  });
}

TEST_CASE("a constant key is insecure with a checked certificate") {
  for (std::size_t n : {2u, 3u}) {
    std::vector<Scalar> w(n, Scalar(0));
    w[0] = 1;
    OtpInstance inst = build_otp(cyclic_group(n), w);
    CHECK(otp_correctness(inst));
    OtpSecurity sec = otp_security(inst);
    CHECK(sec.searched.verdict == Verdict::Insecure);
    CHECK(sec.searched.farkas);
    CHECK(sec.searched.certificate_verified);
    // the adversary reads the message off the ciphertext
    CHECK(min_epsilon(inst.protocol, inst.real, inst.target, kEve).epsilon ==
          Scalar(1) - Scalar::ratio(1, static_cast<long>(n)));
  }
}

TEST_CASE("biased key on Z2 leaks its bias") {
  for (Scalar p : {Scalar(0), Scalar::ratio(1, 4), Scalar::ratio(1, 3), Scalar::ratio(1, 2)}) {
    OtpInstance inst = build_otp(cyclic_group(2), std::vector<Scalar>{p, Scalar(1) - p});
    Scalar eps = check_secure_with(inst.protocol, inst.real, inst.target, kEve, inst.sigma).epsilon;
    CHECK(eps == magnitude(p - Scalar::ratio(1, 2)));
  }
}

TEST_CASE("decrypting without the inverse breaks correctness") {
  for (std::size_t n = 3; n <= 5; ++n) {
    OtpInstance bad = corrupt_decryption(build_otp(cyclic_group(n)));
    CHECK_FALSE(otp_correctness(bad));
  }
  // in Z2 every element is its own inverse
  CHECK(otp_correctness(corrupt_decryption(build_otp(cyclic_group(2)))));
}

TEST_CASE("stream cipher distance equals the expander's bias") {
  std::mt19937 rng(31);
  const Alphabet seed{"seed", 2, {}};
  for (int i = 0; i < 10; ++i) {
    FiniteGroup g = cyclic_group(gen::pick(rng, 2, 4));
    std::vector<std::size_t> f{gen::pick(rng, 0, g.order - 1), gen::pick(rng, 0, g.order - 1)};
    Kernel ex = deterministic({seed}, {g.alphabet()}, f);
    // pushforward of a uniform seed against the uniform key
    std::vector<Scalar> v(g.order, Scalar(0)), u(g.order, Scalar::ratio(1, static_cast<long>(g.order)));
    for (auto x : f) v[x] += Scalar::ratio(1, 2);
    const Scalar want = oracle::tv(v, u);
    StreamCipherReport rep = stream_cipher_demo(g, ex);
    CHECK(rep.eps_expander == want);
    CHECK(rep.composed.epsilon == want);
    CHECK(rep.composed.epsilon <= rep.composed.epsilon_bound);
  }
}

TEST_CASE("key expansion checks the expander's shape") {
  Kernel wrong = identity({Alphabet{"Z3", 3, {}}});
  CHECK_THROWS_AS(key_expansion(cyclic_group(2), wrong), Error);
}
