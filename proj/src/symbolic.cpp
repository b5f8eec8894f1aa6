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

#include "catcrypt/symbolic.hpp"

#include "catcrypt/error.hpp"

namespace catcrypt {

std::size_t LpBuilder::add_var(std::optional<Scalar> lower) {
  return prog_.add_var(std::move(lower));
}

void LpBuilder::add_row(LinearForm terms, Scalar rhs) {
  prog_.add_row(terms, std::move(rhs));
}

void LpBuilder::add_geq(LinearForm terms, Scalar rhs) {
  terms.emplace_back(add_var(), Scalar(-1));
  add_row(std::move(terms), std::move(rhs));
}

LinearBehavior LpBuilder::add_behavior(const Signature& sig) {
  const Ports dom = sig.in_alphabets();
  const Ports cod = sig.out_alphabets();
  const std::size_t rows = port_product(cod), cols = port_product(dom);
  const std::size_t first = prog_.num_vars;
  for (std::size_t i = 0; i < rows * cols; ++i) add_var();
  LinearBehavior lb = unknown_behavior(sig, first);

  for (std::size_t c = 0; c < cols; ++c) {
    LinearForm sum;
    for (std::size_t r = 0; r < rows; ++r) sum.emplace_back(first + r * cols + c, 1);
    add_row(std::move(sum), 1);
  }

  // Causality: for each round, the marginal of outputs so far must match
  // the column with every later input set to zero. The last marginal
  // entry follows from the column sums and is skipped.
  const auto& ports = sig.ports();
  for (std::size_t round = 1; round < sig.rounds(); ++round) {
    std::vector<std::size_t> early_out, late_in;
    for (std::size_t q = 0; q < sig.out_ports().size(); ++q)
      if (ports[sig.out_ports()[q]].round <= round) early_out.push_back(q);
    for (std::size_t q = 0; q < sig.in_ports().size(); ++q)
      if (ports[sig.in_ports()[q]].round > round) late_in.push_back(q);
    if (late_in.empty()) continue;
    Ports early_alpha;
    for (auto q : early_out) early_alpha.push_back(cod[q]);
    const std::size_t nmarg = port_product(early_alpha);
    std::vector<std::vector<std::size_t>> rows_of(nmarg);
    std::vector<std::size_t> sub(early_out.size());
    for (std::size_t r = 0; r < rows; ++r) {
      auto digits = decode_tuple(r, cod);
      for (std::size_t i = 0; i < early_out.size(); ++i) sub[i] = digits[early_out[i]];
      rows_of[encode_tuple(sub, early_alpha)].push_back(r);
    }
    for (std::size_t c = 0; c < cols; ++c) {
      auto digits = decode_tuple(c, dom);
      for (auto q : late_in) digits[q] = 0;
      const std::size_t ref = encode_tuple(digits, dom);
      if (ref == c) continue;
      for (std::size_t o = 0; o + 1 < nmarg; ++o) {
        LinearForm f;
        for (auto r : rows_of[o]) {
          f.emplace_back(first + r * cols + c, 1);
          f.emplace_back(first + r * cols + ref, -1);
        }
        add_row(std::move(f), 0);
      }
    }
  }
  return lb;
}

void LpBuilder::add_equal(const LinearBehavior& lhs, const Behavior& rhs) {
  const auto aligned = align(lhs, rhs.signature());
  const auto& data = rhs.table().data();
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (aligned.table[i].empty() && data[i].is_zero()) continue;
    add_row(aligned.table[i], data[i]);
  }
}

void LpBuilder::add_equal(const LinearBehavior& lhs, const LinearBehavior& rhs) {
  const auto aligned = align(lhs, rhs.signature);
  for (std::size_t i = 0; i < rhs.table.size(); ++i) {
    LinearForm f = aligned.table[i];
    for (const auto& [v, c] : rhs.table[i]) f.emplace_back(v, -c);
    if (f.empty()) continue;
    add_row(std::move(f), 0);
  }
}

std::size_t LpBuilder::distance_node(const LinearBehavior& lhs,
                                     const Behavior& rhs,
                                     const std::vector<RoundLayout>& layout,
                                     std::size_t round, std::size_t col,
                                     std::size_t row) {
  const std::size_t v = add_var();
  if (round == layout.size()) {
    const std::size_t idx = row * rhs.table().cols() + col;
    const Scalar& t = rhs.table().data()[idx];
    // v >= L - t and v >= t - L
    LinearForm up{{v, Scalar(1)}}, down{{v, Scalar(1)}};
    for (const auto& [x, c] : lhs.table[idx]) {
      up.emplace_back(x, -c);
      down.emplace_back(x, c);
    }
    add_geq(std::move(up), -t);
    add_geq(std::move(down), t);
    return v;
  }
  for (auto xo : layout[round].x_off) {
    LinearForm f{{v, Scalar(1)}};
    for (auto yo : layout[round].y_off)
      f.emplace_back(distance_node(lhs, rhs, layout, round + 1, col + xo, row + yo),
                     Scalar(-1));
    add_geq(std::move(f), 0);
  }
  return v;
}

std::size_t LpBuilder::add_distance(const LinearBehavior& lhs, const Behavior& rhs) {
  const auto aligned = align(lhs, rhs.signature());
  return distance_node(aligned, rhs, round_layout(rhs.signature()), 0, 0, 0);
}

Behavior read_behavior(const LinearBehavior& b, const std::vector<Scalar>& point) {
  // Float solves may leave round-off below zero.
  std::vector<Scalar> clean = point;
  for (auto& v : clean)
    if (!v.is_exact() && v.sign() < 0 && v.to_double() > -lp::kTolLp)
      v = Scalar::from_double(0.0);
  return evaluate(b, clean);
}

}  // namespace catcrypt
