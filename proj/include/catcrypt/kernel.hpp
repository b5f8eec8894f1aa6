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

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "catcrypt/scalar.hpp"

namespace catcrypt {

struct Alphabet {
  std::string name;
  std::size_t size = 1;
  std::vector<std::string> labels;

  // Validates size >= 1 and distinct labels (when given).
  static Alphabet make(std::string name, std::size_t size,
                       std::vector<std::string> labels = {});
  static Alphabet trivial() { return Alphabet{"I", 1, {}}; }

  std::string label(std::size_t i) const;

  // Interface matching only looks at the name and the size.
  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.name == b.name && a.size == b.size;
  }
};

using Ports = std::vector<Alphabet>;

// Upper bound on the product of port sizes for any table the library
// allocates. Default 2^20.
std::size_t max_port_product();
void set_max_port_product(std::size_t cap);

std::size_t port_product(std::span<const Alphabet> ports);

// Mixed-radix helpers. Leftmost port is the most significant digit.
std::vector<std::size_t> decode_tuple(std::size_t index,
                                      std::span<const Alphabet> ports);
std::size_t encode_tuple(std::span<const std::size_t> digits,
                         std::span<const Alphabet> ports);

// A column-stochastic matrix from dom-tuples to cod-tuples. Entry (r, c) is
// the probability of cod-tuple r given dom-tuple c; storage is row-major.
class Kernel {
 public:
  Kernel() = default;

  static Kernel make(Ports dom, Ports cod, std::vector<Scalar> table);
  static Kernel make(Ports dom, Ports cod,
                     const std::vector<std::vector<Scalar>>& rows);
  // Skips validation; for results that are stochastic by construction.
  static Kernel trusted(Ports dom, Ports cod, std::vector<Scalar> table);

  const Ports& dom() const { return dom_; }
  const Ports& cod() const { return cod_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Scalar& at(std::size_t row, std::size_t col) const {
    return data_[row * cols_ + col];
  }
  const std::vector<Scalar>& data() const { return data_; }

  bool is_exact() const;
  bool is_deterministic() const;
  Kernel to_float() const;

  // Re-checks the Kernel invariants; throws on violation.
  void validate() const;

  friend bool operator==(const Kernel& a, const Kernel& b) {
    return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.data_ == b.data_;
  }

 private:
  Kernel(Ports dom, Ports cod, std::vector<Scalar> data);

  Ports dom_;
  Ports cod_;
  std::size_t rows_ = 1;
  std::size_t cols_ = 1;
  std::vector<Scalar> data_{Scalar(1)};
};

struct Dist {
  Alphabet alphabet;
  std::vector<Scalar> weights;

  static Dist make(Alphabet alphabet, std::vector<Scalar> weights);
  Kernel as_state() const;
  static Dist from_state(const Kernel& state);
};

Kernel compose(const Kernel& g, const Kernel& f);
Kernel tensor(const Kernel& f, const Kernel& g);
Kernel tensor(std::initializer_list<Kernel> factors);

Kernel identity(Ports ports);
Kernel swap(const Alphabet& a, const Alphabet& b);
// Output port i carries input port perm[i].
Kernel permutation(Ports ports, std::span<const std::size_t> perm);
Kernel copy(const Alphabet& a, std::size_t copies = 2);
Kernel deletion(Ports ports);
Kernel point(Ports ports, std::span<const std::size_t> elements);
Kernel point(const Alphabet& a, std::size_t element);
Kernel uniform(Ports ports);
// Deterministic kernel from a function on dom-tuple indices.
Kernel deterministic(Ports dom, Ports cod,
                     std::span<const std::size_t> image);

bool equal_within(const Kernel& f, const Kernel& g, const Scalar& tol = 0);
Scalar channel_distance(const Kernel& f, const Kernel& g);
// Keeps the listed cod ports, in the listed order, summing out the rest.
Kernel marginalize(const Kernel& f, std::span<const std::size_t> keep);

}  // namespace catcrypt
