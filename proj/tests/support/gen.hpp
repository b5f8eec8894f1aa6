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


// Random inputs for the property suites. Everything is exact: weights are
// small integers normalized to rationals, so laws can be checked with ==.

#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "catcrypt/comb.hpp"
#include "catcrypt/kernel.hpp"

namespace gen {

using namespace catcrypt;

inline std::size_t pick(std::mt19937& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(std::mt19937& rng, double p = 0.5) {
  return std::bernoulli_distribution(p)(rng);
}

// Nonnegative weights with at least one positive entry, summing to 1.
// Zeros are common on purpose: they hit the degenerate branches.
inline std::vector<Scalar> distribution(std::mt19937& rng, std::size_t n,
                                        long max_weight = 4) {
  std::vector<long> w(n);
  long total = 0;
  for (auto& x : w) {
    x = static_cast<long>(pick(rng, 0, static_cast<std::size_t>(max_weight)));
    total += x;
  }
  if (total == 0) {
    w[pick(rng, 0, n - 1)] = 1;
    total = 1;
  }
  std::vector<Scalar> out;
  for (long x : w) out.push_back(Scalar::ratio(x, total));
  return out;
}

inline Alphabet alphabet(std::mt19937& rng, std::size_t max_size = 3) {
  const std::size_t n = pick(rng, 1, max_size);
  return Alphabet{"A" + std::to_string(n), n, {}};
}

inline Ports ports(std::mt19937& rng, std::size_t max_ports = 2, std::size_t max_size = 3) {
  Ports p;
  for (std::size_t i = pick(rng, 0, max_ports); i > 0; --i) p.push_back(alphabet(rng, max_size));
  return p;
}

// Random column-stochastic kernel, built column by column.
inline Kernel kernel(std::mt19937& rng, const Ports& dom, const Ports& cod) {
  std::size_t rows = 1, cols = 1;
  for (const auto& a : dom) cols *= a.size;
  for (const auto& a : cod) rows *= a.size;
  std::vector<Scalar> table(rows * cols);
  for (std::size_t c = 0; c < cols; ++c) {
    auto col = distribution(rng, rows);
    for (std::size_t r = 0; r < rows; ++r) table[r * cols + c] = col[r];
  }
  return Kernel::make(dom, cod, std::move(table));
}

inline Kernel deterministic_kernel(std::mt19937& rng, const Ports& dom, const Ports& cod) {
  std::size_t rows = 1, cols = 1;
  for (const auto& a : dom) cols *= a.size;
  for (const auto& a : cod) rows *= a.size;
  std::vector<std::size_t> image(cols);
  for (auto& i : image) i = pick(rng, 0, rows - 1);
  return catcrypt::deterministic(dom, cod, image);
}

struct SigShape {
  std::size_t rounds = 2;
  std::size_t max_ports_per_round = 2;
  std::size_t max_size = 2;
};

// Ports "<prefix>i<k>" / "<prefix>o<k>" spread over the rounds, party P.
inline Signature signature(std::mt19937& rng, const std::string& prefix = "",
                           SigShape shape = {}, const std::string& party = "P") {
  std::vector<PortSpec> ps;
  std::size_t n = 0;
  for (std::size_t r = 1; r <= shape.rounds; ++r) {
    for (std::size_t i = pick(rng, 0, shape.max_ports_per_round); i > 0; --i)
      ps.push_back({prefix + "i" + std::to_string(n++), party, alphabet(rng, shape.max_size),
                    Direction::In, r});
    for (std::size_t i = pick(rng, 0, shape.max_ports_per_round); i > 0; --i)
      ps.push_back({prefix + "o" + std::to_string(n++), party, alphabet(rng, shape.max_size),
                    Direction::Out, r});
  }
  return Signature::make({party}, shape.rounds, std::move(ps));
}

// Causal table by the chain rule: each round's outputs get a fresh random
// distribution for every history of earlier inputs, outputs and this
// round's inputs. Does not go through the library's comb machinery.
inline Behavior causal(std::mt19937& rng, const Signature& sig) {
  const auto& ports = sig.ports();
  const auto& ins = sig.in_ports();
  const auto& outs = sig.out_ports();
  Ports in_a, out_a;
  for (auto i : ins) in_a.push_back(ports[i].alphabet);
  for (auto o : outs) out_a.push_back(ports[o].alphabet);
  std::size_t rows = 1, cols = 1;
  for (const auto& a : in_a) cols *= a.size;
  for (const auto& a : out_a) rows *= a.size;

  auto digits = [](std::size_t idx, const Ports& p) {
    std::vector<std::size_t> d(p.size());
    for (std::size_t k = p.size(); k-- > 0;) {
      d[k] = idx % p[k].size;
      idx /= p[k].size;
    }
    return d;
  };

  // memo[(round, history)] = distribution over the round's output tuple
  std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::vector<Scalar>> memo;
  std::vector<Scalar> table(rows * cols);
  for (std::size_t c = 0; c < cols; ++c) {
    auto x = digits(c, in_a);
    for (std::size_t r = 0; r < rows; ++r) {
      auto y = digits(r, out_a);
      Scalar p = 1;
      std::vector<std::size_t> history;
      for (std::size_t round = 1; round <= sig.rounds() && !p.is_zero(); ++round) {
        for (std::size_t k = 0; k < ins.size(); ++k)
          if (ports[ins[k]].round == round) history.push_back(x[k]);
        std::size_t size = 1, idx = 0;
        for (std::size_t k = 0; k < outs.size(); ++k)
          if (ports[outs[k]].round == round) {
            idx = idx * ports[outs[k]].alphabet.size + y[k];
            size *= ports[outs[k]].alphabet.size;
          }
        auto key = std::make_pair(round, history);
        auto it = memo.find(key);
        if (it == memo.end()) it = memo.emplace(key, distribution(rng, size)).first;
        p *= it->second[idx];
        for (std::size_t k = 0; k < outs.size(); ++k)
          if (ports[outs[k]].round == round) history.push_back(y[k]);
      }
      table[r * cols + c] = p;
    }
  }
  return Behavior::make(sig, Kernel::make(in_a, out_a, std::move(table)));
}

// Same signature, but an early output copies a later input. Returns false
// when the signature has no such pair of nontrivial ports.
inline bool acausal_table(const Signature& sig, Kernel& out) {
  const auto& ports = sig.ports();
  const auto& ins = sig.in_ports();
  const auto& outs = sig.out_ports();
  for (std::size_t ko = 0; ko < outs.size(); ++ko)
    for (std::size_t ki = 0; ki < ins.size(); ++ki) {
      const auto& po = ports[outs[ko]];
      const auto& pi = ports[ins[ki]];
      if (pi.round <= po.round || pi.alphabet.size < 2 || po.alphabet.size < 2) continue;
      Ports in_a = sig.in_alphabets(), out_a = sig.out_alphabets();
      std::size_t cols = 1;
      for (const auto& a : in_a) cols *= a.size;
      std::vector<std::size_t> image(cols);
      for (std::size_t c = 0; c < cols; ++c) {
        std::size_t rest = c, xi = 0;
        for (std::size_t k = in_a.size(); k-- > 0;) {
          if (k == ki) xi = rest % in_a[k].size;
          rest /= in_a[k].size;
        }
        std::size_t row = 0;
        for (std::size_t k = 0; k < out_a.size(); ++k)
          row = row * out_a[k].size + (k == ko ? xi % out_a[k].size : 0);
        image[c] = row;
      }
      out = catcrypt::deterministic(in_a, out_a, image);
      return true;
    }
  return false;
}

}  // namespace gen
