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

#include "catcrypt/hopf.hpp"

#include <array>

#include "catcrypt/error.hpp"

namespace catcrypt {

Alphabet FiniteGroup::alphabet() const { return Alphabet{name, order, {}}; }

namespace {

void check_latin(const std::vector<std::vector<std::size_t>>& t) {
  const std::size_t n = t.size();
  if (n == 0) fail(ErrorCode::NotLatinSquare, "empty table");
  for (const auto& row : t)
    if (row.size() != n) fail(ErrorCode::NotLatinSquare, "table is not square");
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> in_row(n), in_col(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (t[i][j] >= n || t[j][i] >= n)
        fail(ErrorCode::NotLatinSquare, "entry out of range");
      if (in_row[t[i][j]])
        fail(ErrorCode::NotLatinSquare, "row " + std::to_string(i) + " repeats an element");
      if (in_col[t[j][i]])
        fail(ErrorCode::NotLatinSquare, "column " + std::to_string(i) + " repeats an element");
      in_row[t[i][j]] = in_col[t[j][i]] = true;
    }
  }
}

FiniteGroup with_identity(std::string name, std::vector<std::vector<std::size_t>> t) {
  const std::size_t n = t.size();
  std::optional<std::size_t> e;
  for (std::size_t c = 0; c < n && !e; ++c) {
    bool ok = true;
    for (std::size_t x = 0; x < n; ++x)
      if (t[c][x] != x || t[x][c] != x) ok = false;
    if (ok) e = c;
  }
  if (!e) fail(ErrorCode::NoIdentity, "no two-sided identity");
  std::vector<std::size_t> inv(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (t[x][y] == *e) inv[x] = y;
  return FiniteGroup{std::move(name), n, std::move(t), *e, std::move(inv)};
}

}  // namespace

FiniteGroup loop_from_table(std::string name,
                            std::vector<std::vector<std::size_t>> table) {
  check_latin(table);
  return with_identity(std::move(name), std::move(table));
}

FiniteGroup group_from_table(std::string name,
                             std::vector<std::vector<std::size_t>> table) {
  check_latin(table);
  auto g = with_identity(std::move(name), std::move(table));
  for (std::size_t a = 0; a < g.order; ++a)
    for (std::size_t b = 0; b < g.order; ++b)
      for (std::size_t c = 0; c < g.order; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
          fail(ErrorCode::NotAssociative,
               "(" + std::to_string(a) + "*" + std::to_string(b) + ")*" +
                   std::to_string(c) + " differs");
  return g;
}

FiniteGroup cyclic_group(std::size_t n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "cyclic group needs n >= 1");
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return group_from_table("Z" + std::to_string(n), std::move(t));
}

FiniteGroup symmetric3() {
  // Elements are permutations of {0,1,2} as images; product is (a*b)(i) = a(b(i)).
  const std::vector<std::array<int, 3>> perms{{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                              {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  std::vector<std::vector<std::size_t>> t(6, std::vector<std::size_t>(6));
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      std::array<int, 3> ab{};
      for (int i = 0; i < 3; ++i) ab[i] = perms[a][perms[b][i]];
      for (std::size_t c = 0; c < 6; ++c)
        if (perms[c] == ab) t[a][b] = c;
    }
  return group_from_table("S3", std::move(t));
}

FiniteGroup group_from_name(const std::string& source) {
  if (source == "symmetric3" || source == "s3" || source == "S3") return symmetric3();
  const std::string prefix = "cyclic:";
  if (source.rfind(prefix, 0) == 0) {
    try {
      return cyclic_group(std::stoul(source.substr(prefix.size())));
    } catch (const std::logic_error&) {
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown group '" + source + "'");
}

GroupKernels group_kernels(const FiniteGroup& g) {
  const Alphabet a = g.alphabet();
  const std::size_t n = g.order;
  std::vector<std::size_t> mult_image(n * n), inv_image(g.inverse);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) mult_image[x * n + y] = g.mul(x, y);
  return GroupKernels{deterministic({a, a}, {a}, mult_image),
                      deterministic({a}, {a}, inv_image),
                      point(a, g.identity),
                      copy(a),
                      deletion({a}),
                      uniform({a})};
}

std::vector<AxiomResult> hopf_axiom_suite(const FiniteGroup& g) {
  const auto k = group_kernels(g);
  const Alphabet a = g.alphabet();
  const Kernel id = identity({a});
  // id x swap x id applied to the outputs of copy x copy.
  const std::size_t middle_swap[] = {0, 2, 1, 3};
  auto eq = [](const Kernel& x, const Kernel& y) { return equal_within(x, y); };
  std::vector<AxiomResult> out;
  out.push_back({"H1", "associativity",
                 eq(compose(k.mult, tensor(k.mult, id)),
                    compose(k.mult, tensor(id, k.mult)))});
  out.push_back({"H2", "unit",
                 eq(compose(k.mult, tensor(k.unit, id)), id) &&
                     eq(compose(k.mult, tensor(id, k.unit)), id)});
  out.push_back({"H3", "coassociativity",
                 eq(compose(tensor(k.copy, id), k.copy),
                    compose(tensor(id, k.copy), k.copy))});
  out.push_back({"H4", "counit",
                 eq(compose(tensor(k.del, id), k.copy), id) &&
                     eq(compose(tensor(id, k.del), k.copy), id)});
  out.push_back({"H5", "bialgebra",
                 eq(compose(k.copy, k.mult),
                    compose(tensor(k.mult, k.mult),
                            marginalize(tensor(k.copy, k.copy), middle_swap)))});
  const Kernel unit_del = compose(k.unit, k.del);
  out.push_back({"H6", "antipode",
                 eq(compose(k.mult, compose(tensor(id, k.inv), k.copy)), unit_del) &&
                     eq(compose(k.mult, compose(tensor(k.inv, id), k.copy)),
                        unit_del)});
  out.push_back({"H7", "integral",
                 eq(compose(k.mult, tensor(k.uniform, id)),
                    compose(k.uniform, k.del))});
  return out;
}

namespace {

Behavior one_round(std::vector<PortSpec> ports, const Kernel& table) {
  for (auto& p : ports) p.round = 1;
  return Behavior::make(Signature::make({}, 1, std::move(ports)), table);
}

PortSpec in(std::string id, std::string party, Alphabet a) {
  return PortSpec{std::move(id), std::move(party), std::move(a), Direction::In, 1};
}
PortSpec out(std::string id, std::string party, Alphabet a) {
  return PortSpec{std::move(id), std::move(party), std::move(a), Direction::Out, 1};
}

Resource shared_key(const Alphabet& a, const std::vector<Scalar>& weights,
                    const std::string& ka, const std::string& kb) {
  auto dist = Dist::make(a, weights);
  return Resource::make(one_round({out(ka, "Alice", a), out(kb, "Bob", a)},
                                  compose(copy(a), dist.as_state())));
}

Converter decryptor(const FiniteGroup& g, bool use_inverse) {
  const Alphabet a = g.alphabet();
  std::vector<std::size_t> image(g.order * g.order);
  for (std::size_t k = 0; k < g.order; ++k)
    for (std::size_t c = 0; c < g.order; ++c)
      image[k * g.order + c] = g.mul(c, use_inverse ? g.inverse[k] : k);
  return Converter::make(
      "Bob",
      one_round({in("k", "Bob", a), in("c", "Bob", a), out("m_out", "Bob", a)},
                deterministic({a, a}, {a}, image)),
      {{"k", "kB"}, {"c", "c_bob"}});
}

}  // namespace

OtpInstance build_otp(const FiniteGroup& g, const std::optional<std::vector<Scalar>>& key) {
  const Alphabet a = g.alphabet();
  const Alphabet one = Alphabet::trivial();
  std::vector<Scalar> weights =
      key ? *key : std::vector<Scalar>(g.order, Scalar::ratio(1, static_cast<long>(g.order)));

  OtpInstance inst{g, shared_key(a, weights, "kA", "kB"), {}, {}, {}, {}, {}};
  inst.channel = Resource::make(
      one_round({in("c_in", "Alice", a), out("c_bob", "Bob", a), out("c_eve", "Eve", a)},
                copy(a)));
  inst.real = tensor_resource(inst.key, inst.channel);

  std::vector<std::size_t> enc(g.order * g.order);
  for (std::size_t m = 0; m < g.order; ++m)
    for (std::size_t k = 0; k < g.order; ++k) enc[m * g.order + k] = g.mul(m, k);
  Converter alice = Converter::make(
      "Alice",
      one_round({in("m", "Alice", a), in("k", "Alice", a), out("c", "Alice", a)},
                deterministic({a, a}, {a}, enc)),
      {{"k", "kA"}, {"c", "c_in"}});
  Converter eve = Converter::make(
      "Eve", one_round({in("c", "Eve", a), out("e", "Eve", one)},
                       deterministic({a}, {one}, std::vector<std::size_t>(g.order, 0))),
      {{"c", "c_eve"}});

  inst.target = Resource::make(
      one_round({in("m", "Alice", a), out("m_out", "Bob", a), out("e", "Eve", one)},
                tensor(identity({a}), point(one, 0))));
  inst.protocol = Protocol::make(inst.real.signature(), inst.target.signature(),
                                 {alice, decryptor(g, true), eve});

  const auto view = dummy_attack(inst.protocol, inst.real, kEve);
  const auto sig = simulator_signature(view.signature(), inst.target.signature(), kEve);
  inst.sigma = Behavior::make(sig, compose(uniform({a}), deletion({one})));
  return inst;
}

bool otp_correctness(const OtpInstance& inst) {
  auto honest = apply_protocol(inst.protocol, inst.real);
  return behavior_equal(honest.behavior, inst.target.behavior);
}

OtpInstance corrupt_decryption(const OtpInstance& inst) {
  OtpInstance bad = inst;
  std::vector<Converter> convs;
  for (const auto& c : inst.protocol.converters)
    convs.push_back(c.party == "Bob" ? decryptor(inst.group, false) : c);
  bad.protocol = Protocol::make(inst.protocol.source, inst.protocol.target, convs);
  return bad;
}

bool OtpSecurity::secure() const {
  return with_uniform.verdict == Verdict::Secure && searched.verdict == Verdict::Secure &&
         with_uniform.epsilon.is_zero() && searched.epsilon.is_zero();
}

OtpSecurity otp_security(const OtpInstance& inst, const SecurityOptions& opts) {
  return OtpSecurity{
      check_secure_with(inst.protocol, inst.real, inst.target, kEve, inst.sigma),
      search_simulator(inst.protocol, inst.real, inst.target, kEve, opts)};
}

KeyExpansion key_expansion(const FiniteGroup& g, const Kernel& expander) {
  const Alphabet a = g.alphabet();
  if (expander.dom().size() != 1 || expander.cod() != Ports{a})
    fail(ErrorCode::InterfaceMismatch, "expander must map one short key to the group");
  const Alphabet s = expander.dom()[0];
  KeyExpansion ke;
  ke.short_key = shared_key(s, std::vector<Scalar>(s.size, Scalar::ratio(1, static_cast<long>(s.size))),
                            "sA", "sB");
  ke.long_key = shared_key(a, std::vector<Scalar>(a.size, Scalar::ratio(1, static_cast<long>(a.size))),
                           "kA", "kB");
  auto side = [&](const std::string& party, const std::string& from, const std::string& to) {
    return Converter::make(party,
                           one_round({in("s", party, s), out(to, party, a)}, expander),
                           {{"s", from}});
  };
  ke.protocol = Protocol::make(ke.short_key.signature(), ke.long_key.signature(),
                               {side("Alice", "sA", "kA"), side("Bob", "sB", "kB")});
  return ke;
}

StreamCipherReport stream_cipher_demo(const FiniteGroup& g, const Kernel& expander) {
  const auto ke = key_expansion(g, expander);
  const auto otp = build_otp(g);
  const Alphabet s = expander.dom()[0];
  const Scalar eps1 = channel_distance(compose(expander, uniform({s})), uniform({g.alphabet()}));

  // Key expansion next to an untouched channel; Eve's simulator forwards.
  Protocol p1 = par_compose(ke.protocol, identity_protocol(otp.channel.signature()));
  Resource real1 = tensor_resource(ke.short_key, otp.channel);
  Resource ideal1 = tensor_resource(ke.long_key, otp.channel);
  const auto view = dummy_attack(p1, real1, kEve);
  const auto sig = simulator_signature(view.signature(), ideal1.signature(), kEve);
  Behavior sigma1 = forwarding_behavior(sig, {{std::string(kIdealPrefix) + "c_eve", "c_eve"}});

  SecurityClaim expand{p1, real1, ideal1, SimulatorCert{kEve, sigma1, 0}};
  SecurityClaim pad{otp.protocol, otp.real, otp.target, SimulatorCert{kEve, otp.sigma, 0}};
  StreamCipherReport report{eps1, compose_certs(expand, pad, CompositionMode::Sequential)};
  if (report.composed.epsilon > eps1)
    fail(ErrorCode::CompositeVerificationFailed,
         "stream cipher distance " + report.composed.epsilon.str() + " exceeds " + eps1.str());
  return report;
}

}  // namespace catcrypt
