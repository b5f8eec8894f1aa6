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

#include <optional>
#include <string>
#include <vector>

#include "catcrypt/attack.hpp"
#include "catcrypt/symbolic.hpp"

namespace catcrypt {

// Bipartite resources: parties Alice then Bob.
Resource commitment_resource();
Resource ot_resource();
Resource identity_channel_resource(std::size_t size = 2);
Resource shared_bit_resource();
// lambda * commitment + (1 - lambda) * an open channel, both with a binary
// receipt; the open channel's receipt is the committed bit.
Resource commitment_mixture(const Scalar& lambda);

// Tripartite resources: Bob inputs "b"; Alice outputs "a"; Charlie "c".
Resource broadcast_resource();
Resource constant_resource();
Resource product_uniform_resource();

struct NogoVerdict {
  bool feasible = false;
  std::vector<Behavior> witness;
  std::optional<lp::FarkasCert> cert;
  bool certificate_verified = false;
  std::optional<Scalar> min_advantage;
  std::size_t lp_vars = 0;
  std::size_t lp_rows = 0;
};

// Mediator from copy 1's Bob interface to copy 2's Alice interface. Its
// ports carry the copy prefixes "1." and "2.".
Signature mediator_signature(const Signature& r);
// Copy 1 exposes Alice, copy 2 exposes Bob, g sits between them. The result
// has r's signature.
Behavior split(const Resource& r, const Behavior& g);
NogoVerdict split_check(const Resource& r, const lp::SolverOptions& opts = {});
// Optimal distinguishing advantage; the witness is the best mediator.
NogoVerdict min_split_advantage(const Resource& r, const lp::SolverOptions& opts = {});

// Ports of the joint process D: r's Alice and Charlie ports and two copies
// "L.x" / "R.x" of each Bob input x.
Signature doubled_middle_signature(const Signature& r);
// Witness order: D, s_A, s_B, s_C. When `fixed_d` is given only the
// simulators are unknowns.
NogoVerdict tripartite_split_check(const Resource& r,
                                   const std::optional<Behavior>& fixed_d = std::nullopt,
                                   const lp::SolverOptions& opts = {});

struct ContradictionReport {
  bool contradiction = false;
  std::vector<std::size_t> left, right;  // Bob inputs plugged in the middle
  std::vector<std::size_t> charlie_forced;  // support forced by eq_A
  std::vector<std::size_t> alice_forced;    // support forced by eq_C
  bool outputs_equal = false;               // eq_B forces Alice = Charlie
  std::string message;
};
ContradictionReport broadcast_contradiction_oracle(const Resource& r);

// D for the ring Alice - Bob(L) - Bob(R) - Charlie - Alice, each edge a copy
// of the shared state `cup` on X x X. f_a: [X(with Bob), X(with Charlie)] ->
// Alice outputs; f_b: [Bob inputs, X(with Alice), X(with Charlie)] -> I;
// f_c: [X(with Bob), X(with Alice)] -> Charlie outputs.
Behavior doubled_middle_from_protocol(const Resource& r, const Kernel& cup,
                                      const Kernel& f_a, const Kernel& f_b,
                                      const Kernel& f_c);

}  // namespace catcrypt
