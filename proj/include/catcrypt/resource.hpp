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

#include <string>
#include <vector>

#include "catcrypt/comb.hpp"

namespace catcrypt {

// An n-party process; every port belongs to one party.
struct Resource {
  Behavior behavior;

  static Resource make(Behavior b);
  const Signature& signature() const { return behavior.signature(); }
};

// One party's local process. Wires pair a comb port (a_port) with a port of
// the resource it runs on (b_port); the comb's other ports are its outer
// interface.
struct Converter {
  std::string party;
  Behavior comb;
  std::vector<Wire> wiring;

  static Converter make(std::string party, Behavior comb, std::vector<Wire> wiring);
  std::vector<std::string> outer_ports() const;
};

// Parties without a converter act as the identity on their ports.
struct Protocol {
  Signature source;
  Signature target;
  std::vector<Converter> converters;
  bool lifted = false;

  // WiringMismatch if the converters do not turn `source` into `target`.
  static Protocol make(Signature source, Signature target,
                       std::vector<Converter> converters);
  const Converter* converter_for(const std::string& party) const;
};

Protocol identity_protocol(const Signature& sig);

// Links the converters of the listed parties onto r, leaving every other
// port exposed. Port rounds are whatever the links produce.
Behavior run_converters(const Protocol& p, const Behavior& r,
                        const std::vector<std::string>& parties);

Resource apply_protocol(const Protocol& p, const Resource& r);
// q after p.
Protocol seq_compose(const Protocol& q, const Protocol& p);
Protocol par_compose(const Protocol& p, const Protocol& q);
// Tags p as living in the deterministic subcategory (NotDeterministic
// otherwise).
Protocol lift_deterministic(const Protocol& p);

// Same process with every table entry in binary64.
Behavior to_float(const Behavior& b);
Resource to_float(const Resource& r);
Protocol to_float(const Protocol& p);

Resource tensor_resource(const Resource& a, const Resource& b);
Signature prefix_signature(const Signature& sig, const std::string& prefix);
Resource prefix_resource(const Resource& r, const std::string& prefix);
Protocol prefix_protocol(const Protocol& p, const std::string& prefix);

// Deterministic process on `sig` where each listed out-port copies its
// paired in-port. Every out-port must be listed.
Behavior forwarding_behavior(
    const Signature& sig,
    const std::vector<std::pair<std::string, std::string>>& in_to_out);

}  // namespace catcrypt
