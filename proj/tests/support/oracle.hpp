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


// Reference computations written from the definitions, by brute force.
// They only read tables through Kernel::at and never call the library
// routine they are compared against.

#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "catcrypt/comb.hpp"
#include "catcrypt/kernel.hpp"

namespace oracle {

using namespace catcrypt;

inline Kernel compose(const Kernel& g, const Kernel& f) {
  std::vector<Scalar> t(g.rows() * f.cols());
  for (std::size_t r = 0; r < g.rows(); ++r)
    for (std::size_t c = 0; c < f.cols(); ++c) {
      Scalar s = 0;
      for (std::size_t k = 0; k < f.rows(); ++k) s += g.at(r, k) * f.at(k, c);
      t[r * f.cols() + c] = s;
    }
  return Kernel::trusted(f.dom(), g.cod(), std::move(t));
}

inline Kernel tensor(const Kernel& f, const Kernel& g) {
  Ports dom = f.dom(), cod = f.cod();
  dom.insert(dom.end(), g.dom().begin(), g.dom().end());
  cod.insert(cod.end(), g.cod().begin(), g.cod().end());
  const std::size_t cols = f.cols() * g.cols();
  std::vector<Scalar> t(f.rows() * g.rows() * cols);
  for (std::size_t r1 = 0; r1 < f.rows(); ++r1)
    for (std::size_t r2 = 0; r2 < g.rows(); ++r2)
      for (std::size_t c1 = 0; c1 < f.cols(); ++c1)
        for (std::size_t c2 = 0; c2 < g.cols(); ++c2)
          t[(r1 * g.rows() + r2) * cols + c1 * g.cols() + c2] = f.at(r1, c1) * g.at(r2, c2);
  return Kernel::trusted(std::move(dom), std::move(cod), std::move(t));
}

inline Scalar tv(const std::vector<Scalar>& p, const std::vector<Scalar>& q) {
  Scalar s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += abs(p[i] - q[i]);
  return s / Scalar(2);
}

// max over inputs of the total variation between output distributions.
inline Scalar channel_distance(const Kernel& f, const Kernel& g) {
  Scalar best = 0;
  for (std::size_t c = 0; c < f.cols(); ++c) {
    std::vector<Scalar> p, q;
    for (std::size_t r = 0; r < f.rows(); ++r) {
      p.push_back(f.at(r, c));
      q.push_back(g.at(r, c));
    }
    best = max(best, tv(p, q));
  }
  return best;
}

namespace detail {

inline std::vector<std::size_t> digits(std::size_t idx, const Ports& p) {
  std::vector<std::size_t> d(p.size());
  for (std::size_t k = p.size(); k-- > 0;) {
    d[k] = idx % p[k].size;
    idx /= p[k].size;
  }
  return d;
}

inline std::size_t index(const std::vector<std::size_t>& d, const Ports& p) {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < p.size(); ++k) idx = idx * p[k].size + d[k];
  return idx;
}

}  // namespace detail

// Causality straight from the definition: for every round r, two input
// tuples that agree up to round r give the same marginal on outputs up to
// round r.
inline bool causal(const Signature& sig, const Kernel& t) {
  const auto& ports = sig.ports();
  const auto& ins = sig.in_ports();
  const auto& outs = sig.out_ports();
  const Ports in_a = sig.in_alphabets(), out_a = sig.out_alphabets();
  for (std::size_t r = 1; r <= sig.rounds(); ++r) {
    for (std::size_t c1 = 0; c1 < t.cols(); ++c1)
      for (std::size_t c2 = c1 + 1; c2 < t.cols(); ++c2) {
        auto x1 = detail::digits(c1, in_a), x2 = detail::digits(c2, in_a);
        bool agree = true;
        for (std::size_t k = 0; k < ins.size(); ++k)
          if (ports[ins[k]].round <= r && x1[k] != x2[k]) agree = false;
        if (!agree) continue;
        // marginal on early outputs
        std::map<std::vector<std::size_t>, Scalar> m1, m2;
        for (std::size_t row = 0; row < t.rows(); ++row) {
          auto y = detail::digits(row, out_a);
          std::vector<std::size_t> early;
          for (std::size_t k = 0; k < outs.size(); ++k)
            if (ports[outs[k]].round <= r) early.push_back(y[k]);
          m1[early] += t.at(row, c1);
          m2[early] += t.at(row, c2);
        }
        if (m1 != m2) return false;
      }
  }
  return true;
}

// Distinguishing advantage between two behaviors on the same signature with
// at most two rounds, by enumerating every deterministic adaptive strategy:
// pick the round-1 inputs, then round-2 inputs as a function of the round-1
// outputs, and score half the L1 gap of the resulting transcripts.
inline Scalar distance_by_strategies(const Behavior& a, const Behavior& b) {
  const Signature& sig = a.signature();
  const auto& ports = sig.ports();
  const auto& ins = sig.in_ports();
  const auto& outs = sig.out_ports();
  const Ports in_a = sig.in_alphabets(), out_a = sig.out_alphabets();
  const Kernel& ta = a.table();
  const Kernel& tb = b.table();

  auto sizes_at = [&](const std::vector<std::size_t>& idx, std::size_t round) {
    std::size_t n = 1;
    for (auto i : idx)
      if (ports[i].round == round) n *= ports[i].alphabet.size;
    return n;
  };
  // split a per-round tuple index into the round's port digits
  auto scatter = [&](const std::vector<std::size_t>& idx, std::size_t round,
                     std::size_t value, std::vector<std::size_t>& digits) {
    for (std::size_t k = idx.size(); k-- > 0;)
      if (ports[idx[k]].round == round) {
        digits[k] = value % ports[idx[k]].alphabet.size;
        value /= ports[idx[k]].alphabet.size;
      }
  };

  const std::size_t X1 = sizes_at(ins, 1), X2 = sig.rounds() > 1 ? sizes_at(ins, 2) : 1;
  const std::size_t Y1 = sizes_at(outs, 1), Y2 = sig.rounds() > 1 ? sizes_at(outs, 2) : 1;

  Scalar best = 0;
  std::vector<std::size_t> strategy(Y1, 0);  // round-2 input per round-1 output
  for (std::size_t x1 = 0; x1 < X1; ++x1) {
    std::fill(strategy.begin(), strategy.end(), 0);
    while (true) {
      Scalar gap = 0;
      for (std::size_t y1 = 0; y1 < Y1; ++y1)
        for (std::size_t y2 = 0; y2 < Y2; ++y2) {
          std::vector<std::size_t> xd(ins.size()), yd(outs.size());
          scatter(ins, 1, x1, xd);
          scatter(ins, 2, strategy[y1], xd);
          scatter(outs, 1, y1, yd);
          scatter(outs, 2, y2, yd);
          const std::size_t row = detail::index(yd, out_a);
          const std::size_t col = detail::index(xd, in_a);
          gap += abs(ta.at(row, col) - tb.at(row, col));
        }
      best = max(best, gap / Scalar(2));
      // next strategy
      std::size_t k = 0;
      while (k < Y1 && ++strategy[k] == X2) strategy[k++] = 0;
      if (k == Y1) break;
    }
  }
  return best;
}

// Entry of a behavior by port ids, for comparing tables whose port orders
// differ.
inline Scalar entry(const Behavior& b, const std::map<std::string, std::size_t>& values) {
  const auto& sig = b.signature();
  std::vector<std::size_t> xd, yd;
  for (auto i : sig.in_ports()) xd.push_back(values.at(sig.ports()[i].id));
  for (auto o : sig.out_ports()) yd.push_back(values.at(sig.ports()[o].id));
  return b.table().at(detail::index(yd, sig.out_alphabets()),
                      detail::index(xd, sig.in_alphabets()));
}

// Every assignment of values to the ports of `sig`.
inline void for_each_assignment(
    const Signature& sig,
    const std::function<void(const std::map<std::string, std::size_t>&)>& fn) {
  const auto& ports = sig.ports();
  std::vector<std::size_t> v(ports.size(), 0);
  while (true) {
    std::map<std::string, std::size_t> m;
    for (std::size_t k = 0; k < ports.size(); ++k) m[ports[k].id] = v[k];
    fn(m);
    std::size_t k = 0;
    while (k < ports.size() && ++v[k] == ports[k].alphabet.size) v[k++] = 0;
    if (k == ports.size()) break;
  }
}

}  // namespace oracle
