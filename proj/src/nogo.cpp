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

#include "catcrypt/nogo.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "catcrypt/error.hpp"

namespace catcrypt {

namespace {

const Alphabet kBit{"bit", 2, {}};
const Alphabet kOne = Alphabet::trivial();

PortSpec port(std::string id, std::string party, Alphabet a, Direction d,
              std::size_t round = 1) {
  return PortSpec{std::move(id), std::move(party), std::move(a), d, round};
}

Resource resource(std::vector<std::string> parties, std::size_t rounds,
                  std::vector<PortSpec> ports, std::vector<Scalar> table) {
  auto sig = Signature::make(std::move(parties), rounds, std::move(ports));
  return Resource::make(Behavior::make(
      sig, Kernel::make(sig.in_alphabets(), sig.out_alphabets(), std::move(table))));
}

// Table of a deterministic resource from a function of the input digits.
std::vector<Scalar> function_table(const Signature& sig,
                                   const std::function<std::vector<std::size_t>(
                                       const std::vector<std::size_t>&)>& fn) {
  const Ports dom = sig.in_alphabets(), cod = sig.out_alphabets();
  std::vector<std::size_t> image;
  for (std::size_t c = 0; c < port_product(dom); ++c)
    image.push_back(encode_tuple(fn(decode_tuple(c, dom)), cod));
  return deterministic(dom, cod, image).data();
}

Resource deterministic_resource(std::vector<std::string> parties, std::size_t rounds,
                                std::vector<PortSpec> ports,
                                const std::function<std::vector<std::size_t>(
                                    const std::vector<std::size_t>&)>& fn) {
  auto sig = Signature::make(parties, rounds, ports);
  return resource(std::move(parties), rounds, std::move(ports), function_table(sig, fn));
}

Signature commitment_signature(const Alphabet& receipt) {
  return Signature::make({"Alice", "Bob"}, 2,
                         {port("b", "Alice", kBit, Direction::In, 1),
                          port("receipt", "Bob", receipt, Direction::Out, 1),
                          port("open", "Alice", kOne, Direction::In, 2),
                          port("b_out", "Bob", kBit, Direction::Out, 2)});
}

LinearBehavior relabel(const LinearBehavior& b,
                       const std::vector<std::pair<std::string, std::string>>& renames) {
  auto ports = b.signature.ports();
  for (const auto& [from, to] : renames) ports[*b.signature.find(from)].id = to;
  return LinearBehavior{
      Signature::make(b.signature.parties(), b.signature.rounds(), std::move(ports)),
      b.table};
}

std::vector<std::string> two_parties(const Signature& sig) {
  if (sig.parties().size() != 2)
    fail(ErrorCode::ShapeMismatch, "split needs a two-party resource");
  return sig.parties();
}

struct SplitParts {
  Behavior copy1, copy2;
  std::vector<Wire> wires1, wires2;
  std::vector<std::pair<std::string, std::string>> back;  // result ids -> r ids
};

SplitParts split_parts(const Resource& r) {
  const auto parties = two_parties(r.signature());
  SplitParts sp{prefix_ports(r.behavior, "1."), prefix_ports(r.behavior, "2."), {}, {}, {}};
  for (const auto& p : r.signature().ports()) {
    if (p.party == parties[1]) {
      sp.wires1.push_back({"1." + p.id, "1." + p.id});
      sp.back.emplace_back("2." + p.id, p.id);
    } else {
      sp.wires2.push_back({"2." + p.id, "2." + p.id});
      sp.back.emplace_back("1." + p.id, p.id);
    }
  }
  return sp;
}

NogoVerdict infeasible(const lp::LpOutcome& outcome, const lp::LinearProgram& prog) {
  NogoVerdict v;
  v.cert = std::get<lp::Infeasible>(outcome).cert;
  v.certificate_verified = lp::verify(*v.cert, prog);
  v.lp_vars = prog.num_vars;
  v.lp_rows = prog.num_rows();
  return v;
}

}  // namespace

Resource commitment_resource() {
  auto sig = commitment_signature(kOne);
  return deterministic_resource(sig.parties(), 2, sig.ports(),
                                [](const auto& x) { return std::vector<std::size_t>{0, x[0]}; });
}

Resource commitment_mixture(const Scalar& lambda) {
  auto sig = commitment_signature(kBit);
  auto hiding = function_table(sig, [](const auto& x) {
    return std::vector<std::size_t>{0, x[0]};
  });
  auto open = function_table(sig, [](const auto& x) {
    return std::vector<std::size_t>{x[0], x[0]};
  });
  std::vector<Scalar> mix(hiding.size());
  for (std::size_t i = 0; i < mix.size(); ++i)
    mix[i] = lambda * hiding[i] + (Scalar(1) - lambda) * open[i];
  return resource(sig.parties(), 2, sig.ports(), std::move(mix));
}

Resource ot_resource() {
  return deterministic_resource(
      {"Alice", "Bob"}, 1,
      {port("m0", "Alice", kBit, Direction::In), port("m1", "Alice", kBit, Direction::In),
       port("choice", "Bob", kBit, Direction::In), port("m_c", "Bob", kBit, Direction::Out)},
      [](const auto& x) { return std::vector<std::size_t>{x[2] == 0 ? x[0] : x[1]}; });
}

Resource identity_channel_resource(std::size_t size) {
  const Alphabet a{"msg" + std::to_string(size), size, {}};
  return deterministic_resource(
      {"Alice", "Bob"}, 1,
      {port("x", "Alice", a, Direction::In), port("y", "Bob", a, Direction::Out)},
      [](const auto& x) { return x; });
}

Resource shared_bit_resource() {
  auto sig = Signature::make({"Alice", "Bob"}, 1,
                             {port("a", "Alice", kBit, Direction::Out),
                              port("b", "Bob", kBit, Direction::Out)});
  return resource(sig.parties(), 1, sig.ports(),
                  compose(copy(kBit), uniform({kBit})).data());
}

Resource broadcast_resource() {
  return deterministic_resource(
      {"Alice", "Bob", "Charlie"}, 1,
      {port("b", "Bob", kBit, Direction::In), port("a", "Alice", kBit, Direction::Out),
       port("c", "Charlie", kBit, Direction::Out)},
      [](const auto& x) { return std::vector<std::size_t>{x[0], x[0]}; });
}

Resource constant_resource() {
  return deterministic_resource(
      {"Alice", "Bob", "Charlie"}, 1,
      {port("b", "Bob", kBit, Direction::In), port("a", "Alice", kBit, Direction::Out),
       port("c", "Charlie", kBit, Direction::Out)},
      [](const auto&) { return std::vector<std::size_t>{0, 0}; });
}

Resource product_uniform_resource() {
  auto sig = Signature::make({"Alice", "Bob", "Charlie"}, 1,
                             {port("b", "Bob", kBit, Direction::In),
                              port("a", "Alice", kBit, Direction::Out),
                              port("c", "Charlie", kBit, Direction::Out)});
  return resource(sig.parties(), 1, sig.ports(),
                  compose(uniform({kBit, kBit}), deletion({kBit})).data());
}

// ------------------------------------------------------------- bipartite

Signature mediator_signature(const Signature& r) {
  const auto parties = two_parties(r);
  const std::size_t k = r.rounds();
  std::vector<PortSpec> ports;
  auto add = [&](const std::string& party, Direction dir, std::size_t src_round,
                 const std::string& prefix, Direction as, std::size_t round) {
    for (const auto& p : r.ports()) {
      if (p.party != party || p.direction != dir || p.round != src_round) continue;
      ports.push_back(port(prefix + p.id, "g", p.alphabet, as, round));
    }
  };
  for (std::size_t j = 1; j <= k; ++j) {
    add(parties[0], Direction::Out, j - 1, "2.", Direction::In, 2 * j - 1);
    add(parties[1], Direction::In, j, "1.", Direction::Out, 2 * j - 1);
    add(parties[1], Direction::Out, j, "1.", Direction::In, 2 * j);
    add(parties[0], Direction::In, j, "2.", Direction::Out, 2 * j);
  }
  add(parties[0], Direction::Out, k, "2.", Direction::In, 2 * k + 1);
  return Signature::make({"g"}, 2 * k + 1, std::move(ports));
}

Behavior split(const Resource& r, const Behavior& g) {
  const auto sig = mediator_signature(r.signature());
  if (!same_ports(g.signature(), sig))
    fail(ErrorCode::InterfaceMismatch, "mediator does not fit the split pattern");
  auto sp = split_parts(r);
  Behavior step = link(sp.copy1, g, sp.wires1);
  Behavior joint = link(step, sp.copy2, sp.wires2);
  return conform(rename_ports(joint, sp.back), r.signature());
}

namespace {

struct SplitLp {
  LpBuilder builder;
  LinearBehavior g;
  LinearBehavior joint;
};

SplitLp split_lp(const Resource& r) {
  SplitLp s;
  const auto sig = mediator_signature(r.signature());
  s.g = s.builder.add_behavior(sig);
  auto sp = split_parts(r);
  auto step = link(sp.copy1, s.g, sp.wires1,
                   infer_schedule(sp.copy1.signature(), sig, sp.wires1));
  auto joint = link(step, sp.copy2, sp.wires2,
                    infer_schedule(step.signature, sp.copy2.signature(), sp.wires2));
  s.joint = relabel(joint, sp.back);
  return s;
}

}  // namespace

NogoVerdict split_check(const Resource& r, const lp::SolverOptions& opts) {
  auto s = split_lp(r);
  s.builder.add_equal(s.joint, r.behavior);
  const auto& prog = s.builder.program();
  auto outcome = lp::solve_feasible(prog, opts);
  if (lp::is_infeasible(outcome)) return infeasible(outcome, prog);
  NogoVerdict v;
  v.feasible = true;
  v.lp_vars = prog.num_vars;
  v.lp_rows = prog.num_rows();
  Behavior g = read_behavior(s.g, std::get<lp::Feasible>(outcome).point);
  const Scalar tol = g.table().is_exact() ? Scalar(0) : Scalar::from_double(kTolEq);
  v.certificate_verified = behavior_equal(split(r, g), r.behavior, tol);
  v.witness.push_back(std::move(g));
  return v;
}

NogoVerdict min_split_advantage(const Resource& r, const lp::SolverOptions& opts) {
  auto s = split_lp(r);
  const std::size_t t = s.builder.add_distance(s.joint, r.behavior);
  s.builder.program().set_objective({{t, Scalar::ratio(1, 2)}});
  const auto& prog = s.builder.program();
  auto outcome = lp::minimize(prog, opts);
  const auto* opt = std::get_if<lp::Optimal>(&outcome);
  if (!opt) fail(ErrorCode::CompositeVerificationFailed, "advantage LP has no optimum");
  NogoVerdict v;
  v.lp_vars = prog.num_vars;
  v.lp_rows = prog.num_rows();
  v.min_advantage = opt->value;
  v.feasible = opt->value.is_zero();
  Behavior g = read_behavior(s.g, opt->point);
  const Scalar measured = behavior_distance(r.behavior, split(r, g));
  const Scalar tol = measured.is_exact() && opt->value.is_exact()
                         ? Scalar(0)
                         : Scalar::from_double(1e3 * kTolEq);
  v.certificate_verified = abs(measured - opt->value) <= tol && lp::verify(outcome, prog);
  v.witness.push_back(std::move(g));
  return v;
}

// ------------------------------------------------------------ tripartite

namespace {

void check_tripartite(const Signature& r) {
  for (const char* p : {"Alice", "Bob", "Charlie"})
    if (std::find(r.parties().begin(), r.parties().end(), p) == r.parties().end())
      fail(ErrorCode::ShapeMismatch, std::string("tripartite resource lacks ") + p);
  if (r.parties().size() != 3)
    fail(ErrorCode::ShapeMismatch, "tripartite resource needs exactly three parties");
  if (r.rounds() != 1) fail(ErrorCode::ShapeMismatch, "tripartite resource must be one round");
  for (const auto& p : r.ports())
    if (p.party == "Bob" && p.direction != Direction::In)
      fail(ErrorCode::ShapeMismatch, "Bob may only have inputs");
}

std::vector<std::pair<std::string, std::string>> bob_renames(const Signature& r,
                                                             const std::string& prefix) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& p : r.ports())
    if (p.party == "Bob") out.emplace_back(p.id, prefix + p.id);
  return out;
}

// Simulator for the party that also plays the Bob copy on side `side`.
Signature side_simulator_signature(const Signature& r, const std::string& party,
                                   const std::string& side) {
  std::vector<PortSpec> ports;
  for (const auto& p : r.ports())
    if (p.party == "Bob") ports.push_back(port(side + p.id, "Bob", p.alphabet, Direction::In, 1));
  for (const auto& p : r.ports()) {
    if (p.party != party) continue;
    if (p.direction == Direction::In) {
      ports.push_back(port(p.id, party, p.alphabet, Direction::In, 1));
      ports.push_back(port(kIdealPrefix + p.id, party, p.alphabet, Direction::Out, 1));
    } else {
      ports.push_back(port(kIdealPrefix + p.id, party, p.alphabet, Direction::In, 2));
      ports.push_back(port(p.id, party, p.alphabet, Direction::Out, 2));
    }
  }
  return Signature::make({party}, 2, std::move(ports));
}

Signature bob_simulator_signature(const Signature& r) {
  std::vector<PortSpec> ports;
  for (const char* side : {"L.", "R."})
    for (const auto& p : r.ports())
      if (p.party == "Bob") ports.push_back(port(side + p.id, "Bob", p.alphabet, Direction::In));
  for (const auto& p : r.ports())
    if (p.party == "Bob") ports.push_back(port(kIdealPrefix + p.id, "Bob", p.alphabet, Direction::Out));
  return Signature::make({"Bob"}, 1, std::move(ports));
}

std::vector<Wire> party_wires(const Signature& r, const std::string& party,
                              const std::string& ideal_side_prefix = "") {
  std::vector<Wire> w;
  for (const auto& p : r.ports())
    if (p.party == party) w.push_back({kIdealPrefix + p.id, ideal_side_prefix + p.id});
  return w;
}

}  // namespace

Signature doubled_middle_signature(const Signature& r) {
  check_tripartite(r);
  std::vector<PortSpec> ports;
  for (const char* party : {"Alice", "Charlie"})
    for (const auto& p : r.ports())
      if (p.party == party) ports.push_back(port(p.id, party, p.alphabet, p.direction));
  for (const char* side : {"L.", "R."})
    for (const auto& p : r.ports())
      if (p.party == "Bob") ports.push_back(port(side + p.id, "Bob", p.alphabet, Direction::In));
  return Signature::make({"Alice", "Charlie", "Bob"}, 1, std::move(ports));
}

NogoVerdict tripartite_split_check(const Resource& r, const std::optional<Behavior>& fixed_d,
                                   const lp::SolverOptions& opts) {
  const auto& rs = r.signature();
  const auto dsig = doubled_middle_signature(rs);
  LpBuilder b;
  std::optional<LinearBehavior> d;
  if (!fixed_d) d = b.add_behavior(dsig);
  else if (!same_ports(fixed_d->signature(), dsig))
    fail(ErrorCode::InterfaceMismatch, "D does not have the doubled-middle ports");

  // eq_A: Alice runs her part and the left Bob; the right Bob is honest.
  const Behavior r_right = rename_ports(r.behavior, bob_renames(rs, "R."));
  const Behavior r_left = rename_ports(r.behavior, bob_renames(rs, "L."));
  const auto sa_sig = side_simulator_signature(rs, "Alice", "L.");
  const auto sc_sig = side_simulator_signature(rs, "Charlie", "R.");
  const auto sb_sig = bob_simulator_signature(rs);
  auto sa = b.add_behavior(sa_sig);
  auto sb = b.add_behavior(sb_sig);
  auto sc = b.add_behavior(sc_sig);

  const auto wa = party_wires(rs, "Alice");
  const auto wc = party_wires(rs, "Charlie");
  const auto wb = party_wires(rs, "Bob");
  std::vector<LinearBehavior> sides{
      link(sa, r_right, wa, infer_schedule(sa_sig, r_right.signature(), wa)),
      link(sb, r.behavior, wb, infer_schedule(sb_sig, rs, wb)),
      link(sc, r_left, wc, infer_schedule(sc_sig, r_left.signature(), wc))};
  for (const auto& side : sides) {
    if (d) b.add_equal(side, *d);
    else b.add_equal(side, *fixed_d);
  }

  const auto& prog = b.program();
  auto outcome = lp::solve_feasible(prog, opts);
  if (lp::is_infeasible(outcome)) return infeasible(outcome, prog);
  const auto& point = std::get<lp::Feasible>(outcome).point;
  NogoVerdict v;
  v.feasible = true;
  v.lp_vars = prog.num_vars;
  v.lp_rows = prog.num_rows();
  Behavior dv = d ? read_behavior(*d, point) : *fixed_d;
  Behavior bsa = read_behavior(sa, point), bsb = read_behavior(sb, point),
           bsc = read_behavior(sc, point);
  const Scalar tol = dv.table().is_exact() && bsa.table().is_exact()
                         ? Scalar(0)
                         : Scalar::from_double(kTolEq);
  v.certificate_verified = behavior_equal(link(bsa, r_right, wa), dv, tol) &&
                           behavior_equal(link(bsb, r.behavior, wb), dv, tol) &&
                           behavior_equal(link(bsc, r_left, wc), dv, tol);
  v.witness = {dv, bsa, bsb, bsc};
  return v;
}

ContradictionReport broadcast_contradiction_oracle(const Resource& r) {
  const auto& sig = r.signature();
  check_tripartite(sig);
  for (const auto& p : sig.ports())
    if ((p.party == "Alice" || p.party == "Charlie") && p.direction != Direction::Out)
      fail(ErrorCode::ShapeMismatch, "Alice and Charlie may only have outputs");

  const Ports dom = sig.in_alphabets(), cod = sig.out_alphabets();
  std::vector<std::size_t> alice_q, charlie_q;
  for (std::size_t q = 0; q < sig.out_ports().size(); ++q)
    (sig.ports()[sig.out_ports()[q]].party == "Alice" ? alice_q : charlie_q).push_back(q);
  Ports alice_alpha, charlie_alpha;
  for (auto q : alice_q) alice_alpha.push_back(cod[q]);
  for (auto q : charlie_q) charlie_alpha.push_back(cod[q]);
  const std::size_t na = port_product(alice_alpha), nc = port_product(charlie_alpha);

  // support[col][a * nc + c]
  const Kernel& t = r.behavior.table();
  std::vector<std::vector<bool>> support(t.cols(), std::vector<bool>(na * nc, false));
  std::vector<bool> any(na * nc, false);
  for (std::size_t row = 0; row < t.rows(); ++row) {
    auto digits = decode_tuple(row, cod);
    std::vector<std::size_t> da, dc;
    for (auto q : alice_q) da.push_back(digits[q]);
    for (auto q : charlie_q) dc.push_back(digits[q]);
    const std::size_t cell = encode_tuple(da, alice_alpha) * nc + encode_tuple(dc, charlie_alpha);
    for (std::size_t col = 0; col < t.cols(); ++col)
      if (!t.at(row, col).is_zero()) support[col][cell] = any[cell] = true;
  }
  bool diagonal = na == nc;
  for (std::size_t cell = 0; cell < na * nc; ++cell)
    if (any[cell] && cell / nc != cell % nc) diagonal = false;

  ContradictionReport rep;
  rep.outputs_equal = diagonal;
  for (std::size_t left = 0; left < t.cols(); ++left)
    for (std::size_t right = 0; right < t.cols(); ++right) {
      if (left == right) continue;
      std::set<std::size_t> alice, charlie;
      for (std::size_t cell = 0; cell < na * nc; ++cell) {
        if (support[right][cell]) charlie.insert(cell % nc);
        if (support[left][cell]) alice.insert(cell / nc);
      }
      bool possible = false;
      for (auto a : alice)
        for (auto c : charlie)
          if (any[a * nc + c]) possible = true;
      if (possible) continue;
      rep.contradiction = true;
      rep.left = decode_tuple(left, dom);
      rep.right = decode_tuple(right, dom);
      rep.alice_forced.assign(alice.begin(), alice.end());
      rep.charlie_forced.assign(charlie.begin(), charlie.end());
      auto show = [](const std::vector<std::size_t>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "|" : "") + std::to_string(v[i]);
        return s;
      };
      rep.message = "Charlie=" + show(rep.charlie_forced) + ", Alice=" +
                    show(rep.alice_forced) +
                    (diagonal ? ", Alice=Charlie" : ", joint outside the support of r");
      return rep;
    }
  rep.message = "no contradiction";
  return rep;
}

Behavior doubled_middle_from_protocol(const Resource& r, const Kernel& cup,
                                      const Kernel& f_a, const Kernel& f_b,
                                      const Kernel& f_c) {
  const auto dsig = doubled_middle_signature(r.signature());
  if (!cup.dom().empty() || cup.cod().size() != 2 || !(cup.cod()[0] == cup.cod()[1]))
    fail(ErrorCode::InterfaceMismatch, "cup must be a state on X x X");
  const Alphabet x = cup.cod()[0];
  const std::size_t n = x.size;
  Ports bob_alpha;
  for (const auto& p : r.signature().ports())
    if (p.party == "Bob") bob_alpha.push_back(p.alphabet);
  const std::size_t nb = port_product(bob_alpha);
  if (f_b.cols() != nb * n * n || f_b.rows() != 1)
    fail(ErrorCode::InterfaceMismatch, "f_b must map Bob inputs and two shares to I");
  if (f_a.cols() != n * n || f_c.cols() != n * n)
    fail(ErrorCode::InterfaceMismatch, "f_a and f_c take two shares");

  // Ring edges: (A.ab, BL.ab) (BL.bc, BR.ab) (BR.bc, C.bc) (C.ac, A.ac).
  const std::size_t ra = f_a.rows(), rc = f_c.rows();
  std::vector<Scalar> joint(ra * rc * nb * nb);
  for (std::size_t bl = 0; bl < nb; ++bl)
    for (std::size_t br = 0; br < nb; ++br)
      for (std::size_t e = 0; e < n * n * n * n * n * n * n * n; ++e) {
        std::size_t u[8], rest = e;
        for (int i = 7; i >= 0; --i) {
          u[i] = rest % n;
          rest /= n;
        }
        Scalar w = cup.at(u[0] * n + u[1], 0) * cup.at(u[2] * n + u[3], 0) *
                   cup.at(u[4] * n + u[5], 0) * cup.at(u[6] * n + u[7], 0);
        if (w.is_zero()) continue;
        w *= f_b.at(0, (bl * n + u[1]) * n + u[2]) * f_b.at(0, (br * n + u[3]) * n + u[4]);
        if (w.is_zero()) continue;
        for (std::size_t ya = 0; ya < ra; ++ya)
          for (std::size_t yc = 0; yc < rc; ++yc) {
            const Scalar p = f_a.at(ya, u[0] * n + u[7]) * f_c.at(yc, u[5] * n + u[6]);
            if (!p.is_zero()) joint[((ya * rc + yc) * nb + bl) * nb + br] += w * p;
          }
      }
  // joint's ports: Alice outs, Charlie outs, L.*, R.* in D order when
  // Alice and Charlie only output.
  return Behavior::make(dsig, Kernel::make(dsig.in_alphabets(), dsig.out_alphabets(),
                                           std::move(joint)));
}

}  // namespace catcrypt
