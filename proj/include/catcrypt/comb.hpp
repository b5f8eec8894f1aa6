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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catcrypt/kernel.hpp"

namespace catcrypt {

enum class Direction { In, Out };

struct PortSpec {
  std::string id;
  std::string party;
  Alphabet alphabet;
  Direction direction = Direction::In;
  std::size_t round = 1;

  friend bool operator==(const PortSpec&, const PortSpec&) = default;
};

class Signature {
 public:
  Signature() = default;

  // Parties missing from `parties` are appended in port order.
  static Signature make(std::vector<std::string> parties, std::size_t rounds,
                        std::vector<PortSpec> ports);

  const std::vector<std::string>& parties() const { return parties_; }
  std::size_t rounds() const { return rounds_; }
  const std::vector<PortSpec>& ports() const { return ports_; }

  // Indices into ports(), in port order.
  const std::vector<std::size_t>& in_ports() const { return in_; }
  const std::vector<std::size_t>& out_ports() const { return out_; }
  Ports in_alphabets() const;
  Ports out_alphabets() const;

  std::optional<std::size_t> find(const std::string& id) const;
  const PortSpec& port(const std::string& id) const;
  std::vector<std::string> ports_of(const std::string& party) const;

  friend bool operator==(const Signature& a, const Signature& b) {
    return a.rounds_ == b.rounds_ && a.ports_ == b.ports_;
  }

 private:
  std::vector<std::string> parties_;
  std::size_t rounds_ = 1;
  std::vector<PortSpec> ports_;
  std::vector<std::size_t> in_;
  std::vector<std::size_t> out_;
};

// Same port ids with the same party, alphabet and direction; rounds and
// order may differ.
bool same_ports(const Signature& a, const Signature& b);

// Conditional transcript distribution P(outputs | inputs) of a causal
// multi-round process. The table is a Kernel from the in-ports to the
// out-ports, each in signature port order.
class Behavior {
 public:
  Behavior() = default;

  // Validates the interface and causality (NotCausal on violation).
  static Behavior make(Signature sig, Kernel table);
  static Behavior trusted(Signature sig, Kernel table);

  const Signature& signature() const { return sig_; }
  const Kernel& table() const { return table_; }

 private:
  Behavior(Signature sig, Kernel table)
      : sig_(std::move(sig)), table_(std::move(table)) {}
  Signature sig_;
  Kernel table_;
};

struct CausalityReport {
  bool causal = true;
  std::size_t round = 0;
  // In-port digits (signature in-port order) of the two columns that
  // disagree on the marginal of outputs up to `round`.
  std::vector<std::size_t> column_a;
  std::vector<std::size_t> column_b;
  std::string message;
};

CausalityReport check_causal(const Signature& sig, const Kernel& table);
inline CausalityReport check_causal(const Behavior& b) {
  return check_causal(b.signature(), b.table());
}

// Round i kernel: [M_{i-1}] ++ round-i inputs -> round-i outputs ++ [M_i].
struct CombKernels {
  Signature signature;
  std::vector<Alphabet> memory;  // M_0 .. M_k, ends trivial
  std::vector<Kernel> rounds;

  static CombKernels make(Signature sig, std::vector<Alphabet> memory,
                          std::vector<Kernel> rounds);
};

Behavior flatten(const CombKernels& comb);
CombKernels realize(const Behavior& b);

struct Wire {
  std::string a_port;
  std::string b_port;
};

struct Step {
  int comb = 0;  // 0 = first operand, 1 = second
  std::size_t round = 1;
  friend bool operator==(const Step&, const Step&) = default;
};
using Schedule = std::vector<Step>;

// Joint process with wired ports summed out. The result's rounds are the
// coarsest ones consistent with the schedule's step order.
Behavior link(const Behavior& a, const Behavior& b,
              const std::vector<Wire>& wiring, const Schedule& schedule);
// Deterministic topological schedule (earliest round first, ties to `a`).
Schedule infer_schedule(const Signature& a, const Signature& b,
                        const std::vector<Wire>& wiring);
Behavior link(const Behavior& a, const Behavior& b,
              const std::vector<Wire>& wiring);

// Signature that link(a, b, wiring, schedule) would produce.
Signature link_signature(const Signature& a, const Signature& b,
                         const std::vector<Wire>& wiring,
                         const Schedule& schedule);

// All of a's rounds, then all of b's.
Schedule sequential_schedule(const Signature& a, const Signature& b);
Behavior tensor_behavior(const Behavior& a, const Behavior& b);
Signature tensor_signature(const Signature& a, const Signature& b);
Behavior tensor_behavior(const Behavior& a, const Behavior& b,
                         const Schedule& schedule);

// The empty process: no ports, one round.
Behavior trivial_behavior();
// Single-round process that forwards each in-port to an out-port.
// `ports` lists (in-port, out-port) pairs sharing the alphabet.
Behavior identity_behavior(const std::vector<std::pair<PortSpec, PortSpec>>& ports);

// Sums out the named out-ports.
Behavior discard_outputs(const Behavior& b, const std::vector<std::string>& ids);
Behavior keep_outputs(const Behavior& b, const std::vector<std::string>& ids);
Behavior rename_ports(const Behavior& b,
                      const std::vector<std::pair<std::string, std::string>>& renames);
Behavior prefix_ports(const Behavior& b, const std::string& prefix);
Behavior reassign_party(const Behavior& b, const std::string& from,
                        const std::string& to);

// Reorders b's ports into sig's order (matched by id) and adopts sig's
// rounds; NotCausal if b is not causal for them.
Behavior conform(const Behavior& b, const Signature& sig);

bool behavior_equal(const Behavior& a, const Behavior& b, const Scalar& tol = 0);
// Maximum over deterministic adaptive input strategies of the total
// variation distance between the induced transcript distributions.
Scalar behavior_distance(const Behavior& a, const Behavior& b);

// Table-offset contributions of each round's local input/output tuples.
struct RoundLayout {
  std::vector<std::size_t> x_off;
  std::vector<std::size_t> y_off;
};
std::vector<RoundLayout> round_layout(const Signature& sig);

// Behavior whose entries are linear forms over LP variables.
using LinearForm = std::vector<std::pair<std::size_t, Scalar>>;
struct LinearBehavior {
  Signature signature;
  std::vector<LinearForm> table;  // row-major like Kernel
};

LinearBehavior unknown_behavior(const Signature& sig, std::size_t first_var);
LinearBehavior link(const LinearBehavior& a, const Behavior& b,
                    const std::vector<Wire>& wiring, const Schedule& schedule);
LinearBehavior link(const Behavior& a, const LinearBehavior& b,
                    const std::vector<Wire>& wiring, const Schedule& schedule);
// Reorders ports to sig's order, no causality check.
LinearBehavior align(const LinearBehavior& b, const Signature& sig);
Behavior evaluate(const LinearBehavior& b, const std::vector<Scalar>& values);

}  // namespace catcrypt
