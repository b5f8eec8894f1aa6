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

#include "catcrypt/comb.hpp"
#include "catcrypt/lp.hpp"

namespace catcrypt {

// Accumulates an equality-form LP whose unknowns are behavior tables.
class LpBuilder {
 public:
  // Fresh variables for a stochastic causal table on `sig`.
  LinearBehavior add_behavior(const Signature& sig);
  std::size_t add_var(std::optional<Scalar> lower = Scalar(0));

  // lhs = rhs entrywise, ports matched by id.
  void add_equal(const LinearBehavior& lhs, const Behavior& rhs);
  void add_equal(const LinearBehavior& lhs, const LinearBehavior& rhs);

  // Variable v with v >= 2 * behavior_distance(lhs, rhs) at any feasible
  // point; minimizing v gives twice the distance exactly.
  std::size_t add_distance(const LinearBehavior& lhs, const Behavior& rhs);

  void add_row(LinearForm terms, Scalar rhs);
  // sum(terms) >= rhs via a slack column.
  void add_geq(LinearForm terms, Scalar rhs);

  lp::LinearProgram& program() { return prog_; }
  const lp::LinearProgram& program() const { return prog_; }

 private:
  std::size_t distance_node(const LinearBehavior& lhs, const Behavior& rhs,
                            const std::vector<RoundLayout>& layout,
                            std::size_t round, std::size_t col,
                            std::size_t row);
  lp::LinearProgram prog_;
};

// Values of the variables of `b` at an LP point.
Behavior read_behavior(const LinearBehavior& b, const std::vector<Scalar>& point);

}  // namespace catcrypt
