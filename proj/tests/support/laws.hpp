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


// Randomized law suites. Each returns how many cases ran and how many broke
// the law, so the unit tests and the acceptance report can share them.

#pragma once

#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "catcrypt/comb.hpp"
#include "catcrypt/error.hpp"
#include "support/gen.hpp"
#include "support/oracle.hpp"

namespace laws {

using namespace catcrypt;

struct LawResult {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::size_t skipped = 0;  // e.g. random wiring formed a cycle
  std::string first_failure;

  void record(bool ok, const std::string& what) {
    ++cases;
    if (!ok && failures++ == 0) first_failure = what;
  }
  bool ok(std::size_t min_cases) const { return failures == 0 && cases >= min_cases; }
};

// Same ports and the same probability for every assignment, regardless of
// port order and round labels.
inline bool same_process(const Behavior& x, const Behavior& y) {
  if (!same_ports(x.signature(), y.signature())) return false;
  bool same = true;
  oracle::for_each_assignment(x.signature(), [&](const auto& v) {
    if (same && oracle::entry(x, v) != oracle::entry(y, v)) same = false;
  });
  return same;
}

// Random wires between opposite-direction ports with equal alphabets.
inline std::vector<Wire> random_wiring(std::mt19937& rng, const Signature& a,
                                       const Signature& b, double p = 0.6,
                                       std::set<std::string> used = {}) {
  std::vector<Wire> w;
  for (const auto& pa : a.ports())
    for (const auto& pb : b.ports()) {
      if (used.count(pa.id) || used.count(pb.id)) continue;
      if (pa.direction == pb.direction || !(pa.alphabet == pb.alphabet)) continue;
      if (!gen::coin(rng, p)) continue;
      w.push_back({pa.id, pb.id});
      used.insert(pa.id);
      used.insert(pb.id);
    }
  return w;
}

inline gen::SigShape small_shape(std::mt19937& rng) {
  return {gen::pick(rng, 1, 2), 2, 2};
}

inline Behavior random_comb(std::mt19937& rng, const std::string& prefix) {
  return gen::causal(rng, gen::signature(rng, prefix, small_shape(rng), prefix + "P"));
}

inline bool is_acausal(const Error& e) { return e.code() == ErrorCode::AcausalSchedule; }

// (f x g) o (h x k) = (f o h) x (g o k) for kernels, and linking two tensors
// equals tensoring two links for combs.
inline LawResult interchange(std::uint32_t seed, std::size_t n) {
  std::mt19937 rng(seed);
  LawResult r;
  for (std::size_t i = 0; i < n; ++i) {
    Ports a = gen::ports(rng), b = gen::ports(rng), c = gen::ports(rng);
    Ports d = gen::ports(rng), e = gen::ports(rng), f = gen::ports(rng);
    Kernel h = gen::kernel(rng, a, b), k = gen::kernel(rng, d, e);
    Kernel g1 = gen::kernel(rng, b, c), g2 = gen::kernel(rng, e, f);
    r.record(compose(tensor(g1, g2), tensor(h, k)) == tensor(compose(g1, h), compose(g2, k)),
             "kernel interchange, case " + std::to_string(i));
  }
  std::size_t done = 0;
  for (std::size_t attempt = 0; done < n && attempt < 20 * n; ++attempt) {
    Behavior A = random_comb(rng, "a."), B = random_comb(rng, "b.");
    Behavior C = random_comb(rng, "c."), D = random_comb(rng, "d.");
    auto wac = random_wiring(rng, A.signature(), C.signature());
    auto wbd = random_wiring(rng, B.signature(), D.signature());
    try {
      Behavior rhs = tensor_behavior(link(A, C, wac), link(B, D, wbd));
      auto both = wac;
      both.insert(both.end(), wbd.begin(), wbd.end());
      Behavior lhs = link(tensor_behavior(A, B), tensor_behavior(C, D), both);
      r.record(same_process(lhs, rhs), "comb interchange, attempt " + std::to_string(attempt));
      ++done;
    } catch (const Error& e) {
      if (!is_acausal(e)) throw;
      ++r.skipped;
    }
  }
  return r;
}

// Kernel composition and tensor, and chains of linked combs.
inline LawResult associativity(std::uint32_t seed, std::size_t n) {
  std::mt19937 rng(seed);
  LawResult r;
  for (std::size_t i = 0; i < n; ++i) {
    Ports a = gen::ports(rng), b = gen::ports(rng), c = gen::ports(rng), d = gen::ports(rng);
    Kernel f = gen::kernel(rng, a, b), g = gen::kernel(rng, b, c), h = gen::kernel(rng, c, d);
    r.record(compose(h, compose(g, f)) == compose(compose(h, g), f),
             "compose associativity, case " + std::to_string(i));
    r.record(tensor(f, tensor(g, h)) == tensor(tensor(f, g), h),
             "tensor associativity, case " + std::to_string(i));
  }
  std::size_t done = 0;
  for (std::size_t attempt = 0; done < n && attempt < 20 * n; ++attempt) {
    Behavior A = random_comb(rng, "a."), B = random_comb(rng, "b."), C = random_comb(rng, "c.");
    auto wab = random_wiring(rng, A.signature(), B.signature());
    std::set<std::string> taken;  // each port of B is wired at most once
    for (const auto& w : wab) taken.insert(w.b_port);
    auto wbc = random_wiring(rng, B.signature(), C.signature(), 0.6, taken);
    try {
      Behavior left = link(link(A, B, wab), C, wbc);
      Behavior right = link(A, link(B, C, wbc), wab);
      r.record(same_process(left, right), "link associativity, attempt " + std::to_string(attempt));
      ++done;
    } catch (const Error& e) {
      if (!is_acausal(e)) throw;
      ++r.skipped;
    }
  }
  return r;
}

// d(a,a) = 0, symmetry, triangle inequality, range [0,1], and agreement with
// strategy enumeration.
inline LawResult pseudometric(std::uint32_t seed, std::size_t n) {
  std::mt19937 rng(seed);
  LawResult r;
  for (std::size_t i = 0; i < n; ++i) {
    auto sig = gen::signature(rng, "", small_shape(rng));
    Behavior a = gen::causal(rng, sig), b = gen::causal(rng, sig), c = gen::causal(rng, sig);
    const Scalar ab = behavior_distance(a, b), ba = behavior_distance(b, a);
    const Scalar bc = behavior_distance(b, c), ac = behavior_distance(a, c);
    const bool ok = behavior_distance(a, a).is_zero() && ab == ba && ac <= ab + bc &&
                    ab.sign() >= 0 && ab <= Scalar(1) &&
                    ab == oracle::distance_by_strategies(a, b);
    r.record(ok, "pseudometric, case " + std::to_string(i));
  }
  return r;
}

// flatten(realize(b)) = b for causal b, exactly.
inline LawResult round_trip(std::uint32_t seed, std::size_t n) {
  std::mt19937 rng(seed);
  LawResult r;
  for (std::size_t i = 0; i < n; ++i) {
    gen::SigShape shape{gen::pick(rng, 1, 3), 2, 2};
    auto sig = gen::signature(rng, "", shape);
    Behavior b = gen::causal(rng, sig);
    Behavior back = flatten(realize(b));
    r.record(back.signature() == b.signature() && back.table() == b.table(),
             "round trip, case " + std::to_string(i));
  }
  return r;
}

// Links and tensors of causal combs are causal by the definition.
inline LawResult causality(std::uint32_t seed, std::size_t n) {
  std::mt19937 rng(seed);
  LawResult r;
  std::size_t done = 0;
  for (std::size_t attempt = 0; done < n && attempt < 20 * n; ++attempt) {
    Behavior A = random_comb(rng, "a."), B = random_comb(rng, "b.");
    auto w = random_wiring(rng, A.signature(), B.signature());
    try {
      Behavior l = link(A, B, w);
      Behavior t = tensor_behavior(A, B);
      r.record(oracle::causal(l.signature(), l.table()) &&
                   oracle::causal(t.signature(), t.table()),
               "causality, attempt " + std::to_string(attempt));
      ++done;
    } catch (const Error& e) {
      if (!is_acausal(e)) throw;
      ++r.skipped;
    }
  }
  return r;
}

}  // namespace laws
