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

namespace catcrypt {

struct FiniteGroup {
  std::string name;
  std::size_t order = 1;
  std::vector<std::vector<std::size_t>> cayley;  // cayley[a][b] = a * b
  std::size_t identity = 0;
  std::vector<std::size_t> inverse;

  Alphabet alphabet() const;
  std::size_t mul(std::size_t a, std::size_t b) const { return cayley[a][b]; }
};

FiniteGroup cyclic_group(std::size_t n);
FiniteGroup symmetric3();
// Validated: NotLatinSquare, NoIdentity, NotAssociative.
FiniteGroup group_from_table(std::string name,
                             std::vector<std::vector<std::size_t>> table);
// Latin square with a two-sided identity; associativity is not checked, so
// the Hopf suite can be pointed at loops.
FiniteGroup loop_from_table(std::string name,
                            std::vector<std::vector<std::size_t>> table);
// "cyclic:N", "symmetric3" or "s3".
FiniteGroup group_from_name(const std::string& source);

struct GroupKernels {
  Kernel mult, inv, unit, copy, del, uniform;
};
GroupKernels group_kernels(const FiniteGroup& g);

struct AxiomResult {
  std::string id;    // H1..H7
  std::string name;
  bool passed = false;
};
std::vector<AxiomResult> hopf_axiom_suite(const FiniteGroup& g);

struct OtpInstance {
  FiniteGroup group;
  Resource key;
  Resource channel;
  Resource real;     // key then channel
  Protocol protocol;
  Resource target;   // secure channel
  Behavior sigma;    // uniform fake ciphertext
};

// Key distribution over the group (uniform when absent).
OtpInstance build_otp(const FiniteGroup& g,
                      const std::optional<std::vector<Scalar>>& key = std::nullopt);

inline const std::vector<std::string> kEve{"Eve"};

bool otp_correctness(const OtpInstance& inst);
// Bob decrypts with mult instead of mult . (id x inv).
OtpInstance corrupt_decryption(const OtpInstance& inst);

struct OtpSecurity {
  SecurityReport with_uniform;
  SecurityReport searched;
  bool secure() const;
};
OtpSecurity otp_security(const OtpInstance& inst, const SecurityOptions& opts = {});

struct StreamCipherReport {
  Scalar eps_expander;
  ComposedCert composed;
};
// Short key expanded by `expander` (short alphabet -> group) before OTP.
StreamCipherReport stream_cipher_demo(const FiniteGroup& g, const Kernel& expander);

// Key-expansion protocol from a short shared key to the OTP key resource.
struct KeyExpansion {
  Resource short_key;
  Protocol protocol;
  Resource long_key;
};
KeyExpansion key_expansion(const FiniteGroup& g, const Kernel& expander);

}  // namespace catcrypt
