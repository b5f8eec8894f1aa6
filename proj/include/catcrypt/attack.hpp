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

#include <cstdint>
#include <random>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "catcrypt/lp.hpp"
#include "catcrypt/resource.hpp"

namespace catcrypt {

struct MinimalModel {};
struct MaximalModel {};
// One flag per party: true = that party may deviate arbitrarily.
struct PerPartyModel {
  std::vector<bool> maximal;
};
struct ColludingModel {
  std::vector<std::string> J;
};
using AttackModelSpec =
    std::variant<MinimalModel, MaximalModel, PerPartyModel, ColludingModel>;

// Dishonest parties of a model over the given party list. PerParty is the
// product of its factors and collapses to Colluding on the Maximal ones.
std::vector<std::string> dishonest_parties(const AttackModelSpec& spec,
                                           const std::vector<std::string>& parties);

// A comb acting on the dummy view. Wires pair a comb port with a view port.
struct Attack {
  std::vector<std::string> J;
  Behavior comb;
  std::vector<Wire> wiring;
};

// Simulator ports: the real dishonest ports under their own ids, and the
// ideal resource's dishonest ports under kIdealPrefix + id.
inline constexpr const char* kIdealPrefix = "ideal.";

struct SimulatorCert {
  std::vector<std::string> J;
  Behavior sigma;
  Scalar residual;  // max entry gap of the verified equation
};

enum class Verdict { Secure, Insecure, EpsSecure };
std::string to_string(Verdict v);

struct SecurityReport {
  Verdict verdict = Verdict::Insecure;
  Scalar epsilon = 0;
  std::optional<SimulatorCert> simulator;
  std::optional<lp::FarkasCert> farkas;
  bool certificate_verified = false;
  std::size_t lp_vars = 0;
  std::size_t lp_rows = 0;
  std::string message;
};

struct SecurityOptions {
  lp::SolverOptions lp;
};

// Honest converters linked onto r; the J parties' ports of r stay raw.
Behavior dummy_attack(const Protocol& p, const Resource& r,
                      const std::vector<std::string>& J);
Behavior apply_attack(const Protocol& p, const Resource& r, const Attack& a);
// sigma linked onto the J ports of s.
Behavior simulated_view(const Resource& s, const std::vector<std::string>& J,
                        const Behavior& sigma);

SecurityReport check_secure_with(const Protocol& p, const Resource& r,
                                 const Resource& s,
                                 const std::vector<std::string>& J,
                                 const Behavior& sigma);

// Two sub-rounds per round: real dishonest inputs in, ideal dishonest inputs
// out; then ideal dishonest outputs in, real dishonest outputs out.
Signature simulator_signature(const Signature& real, const Signature& ideal,
                              const std::vector<std::string>& J);

SecurityReport search_simulator(const Protocol& p, const Resource& r,
                                const Resource& s,
                                const std::vector<std::string>& J,
                                const SecurityOptions& opts = {});
SecurityReport min_epsilon(const Protocol& p, const Resource& r,
                           const Resource& s, const std::vector<std::string>& J,
                           const SecurityOptions& opts = {});

// Random causal comb on the J ports of `view` that also emits a bit on
// "adv_out" at the end. Entries are small-denominator rationals.
Attack random_attack(const Behavior& view, const std::vector<std::string>& J,
                     std::mt19937& rng);
Behavior random_causal_behavior(const Signature& sig, std::mt19937& rng);

// Runs the J parties' own converters but also copies every value they
// exchange with the resource to a "leak:" port.
Attack semi_honest_attack(const Protocol& p, const std::vector<std::string>& J);

struct SecurityClaim {
  Protocol protocol;
  Resource real;
  Resource ideal;
  SimulatorCert cert;
};

enum class CompositionMode { Sequential, Parallel };

struct ComposedCert {
  SecurityClaim claim;
  Scalar epsilon;        // measured on the composite
  Scalar epsilon_bound;  // sum of the parts
};

// Sequential: first's ideal resource is second's real resource. The
// composite simulator is re-verified; CompositeVerificationFailed if its
// distance exceeds the bound.
ComposedCert compose_certs(const SecurityClaim& first, const SecurityClaim& second,
                           CompositionMode mode);
Scalar claim_epsilon(const SecurityClaim& c);

// Renames every port of the claim to prefix + id. Simulator ports facing the
// ideal resource become "ideal." + prefix + id.
SecurityClaim prefix_claim(const SecurityClaim& c, const std::string& prefix);

// A morphism of the n-fold product: one local process per party.
struct PartyMorphism {
  std::vector<std::string> parties;
  std::vector<Behavior> parts;
};

// Componentwise linking along matching port ids; nullopt if some party's
// outputs of f are not exactly the inputs of g.
std::optional<PartyMorphism> compose_parts(const PartyMorphism& g,
                                           const PartyMorphism& f);
PartyMorphism tensor_parts(const PartyMorphism& f, const PartyMorphism& g);

struct AxiomCheck {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  bool all_passed() const;
};

// Honest inclusion, closure under composition and tensor of sampled
// members, and for dishonest parties the factorization through the dummy.
AxiomReport attack_model_axiom_suite(const AttackModelSpec& spec,
                                     const std::vector<PartyMorphism>& samples,
                                     std::uint64_t seed = 1);

}  // namespace catcrypt
