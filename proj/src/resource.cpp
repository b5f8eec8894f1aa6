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

#include "catcrypt/resource.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "catcrypt/error.hpp"

namespace catcrypt {

Resource Resource::make(Behavior b) {
  for (const auto& p : b.signature().ports())
    if (p.party.empty())
      fail(ErrorCode::InvalidArgument, "port '" + p.id + "' has no party");
  auto report = check_causal(b);
  if (!report.causal) fail(ErrorCode::NotCausal, report.message);
  return Resource{std::move(b)};
}

Converter Converter::make(std::string party, Behavior comb,
                          std::vector<Wire> wiring) {
  std::set<std::string> seen;
  for (const auto& w : wiring) {
    if (!comb.signature().find(w.a_port))
      fail(ErrorCode::WiringMismatch,
           "converter for " + party + " has no port '" + w.a_port + "'");
    if (!seen.insert(w.a_port).second)
      fail(ErrorCode::WiringMismatch, "port '" + w.a_port + "' wired twice");
  }
  auto report = check_causal(comb);
  if (!report.causal) fail(ErrorCode::NotCausal, report.message);
  // Outer ports belong to the converter's party.
  std::vector<std::string> parties = comb.signature().parties();
  for (const auto& p : parties)
    if (p != party) comb = reassign_party(comb, p, party);
  return Converter{std::move(party), std::move(comb), std::move(wiring)};
}

std::vector<std::string> Converter::outer_ports() const {
  std::set<std::string> inner;
  for (const auto& w : wiring) inner.insert(w.a_port);
  std::vector<std::string> out;
  for (const auto& p : comb.signature().ports())
    if (!inner.count(p.id)) out.push_back(p.id);
  return out;
}

Protocol Protocol::make(Signature source, Signature target,
                        std::vector<Converter> converters) {
  std::set<std::string> parties, wired;
  std::vector<PortSpec> result;
  for (const auto& c : converters) {
    if (!parties.insert(c.party).second)
      fail(ErrorCode::WiringMismatch, "two converters for party " + c.party);
    for (const auto& w : c.wiring) {
      auto i = source.find(w.b_port);
      if (!i)
        fail(ErrorCode::WiringMismatch,
             "source has no port '" + w.b_port + "'");
      const auto& rp = source.ports()[*i];
      const auto& cp = c.comb.signature().port(w.a_port);
      if (rp.party != c.party)
        fail(ErrorCode::WiringMismatch, "port '" + w.b_port + "' belongs to " +
                                            rp.party + ", not " + c.party);
      if (rp.direction == cp.direction || !(rp.alphabet == cp.alphabet))
        fail(ErrorCode::WiringMismatch,
             "port '" + w.a_port + "' cannot plug into '" + w.b_port + "'");
      if (!wired.insert(w.b_port).second)
        fail(ErrorCode::WiringMismatch, "port '" + w.b_port + "' wired twice");
    }
    for (const auto& id : c.outer_ports()) result.push_back(c.comb.signature().port(id));
  }
  for (const auto& p : source.ports())
    if (!wired.count(p.id)) result.push_back(p);
  std::set<std::string> ids;
  for (const auto& p : result)
    if (!ids.insert(p.id).second)
      fail(ErrorCode::WiringMismatch, "port id '" + p.id + "' produced twice");
  auto produced = Signature::make({}, 1, [&] {
    auto ports = result;
    for (auto& p : ports) p.round = 1;
    return ports;
  }());
  if (!same_ports(produced, target))
    fail(ErrorCode::WiringMismatch,
         "converters do not produce the declared target interface");
  return Protocol{std::move(source), std::move(target), std::move(converters), false};
}

const Converter* Protocol::converter_for(const std::string& party) const {
  for (const auto& c : converters)
    if (c.party == party) return &c;
  return nullptr;
}

Protocol identity_protocol(const Signature& sig) {
  return Protocol{sig, sig, {}, false};
}

Behavior run_converters(const Protocol& p, const Behavior& r,
                        const std::vector<std::string>& parties) {
  if (!same_ports(p.source, r.signature()))
    fail(ErrorCode::WiringMismatch,
         "resource does not match the protocol's source interface");
  Behavior current = r;
  for (const auto& c : p.converters) {
    if (std::find(parties.begin(), parties.end(), c.party) == parties.end())
      continue;
    current = link(c.comb, current, c.wiring);
  }
  return current;
}

Resource apply_protocol(const Protocol& p, const Resource& r) {
  std::vector<std::string> all;
  for (const auto& c : p.converters) all.push_back(c.party);
  Behavior out = run_converters(p, r.behavior, all);
  try {
    return Resource{conform(out, p.target)};
  } catch (const Error& e) {
    fail(ErrorCode::WiringMismatch,
         std::string("result does not fit the target: ") + e.what());
  }
}

namespace {

Behavior rename_inner(const Converter& c, const std::string& tag) {
  std::vector<std::pair<std::string, std::string>> r;
  for (const auto& w : c.wiring) r.emplace_back(w.a_port, tag + w.b_port);
  return rename_ports(c.comb, r);
}

}  // namespace

Protocol seq_compose(const Protocol& q, const Protocol& p) {
  if (!same_ports(p.target, q.source))
    fail(ErrorCode::InterfaceMismatch,
         "first protocol's target is not the second's source");
  std::vector<std::string> parties;
  for (const auto* proto : {&p, &q})
    for (const auto& c : proto->converters)
      if (std::find(parties.begin(), parties.end(), c.party) == parties.end())
        parties.push_back(c.party);

  std::vector<Converter> out;
  for (const auto& party : parties) {
    const Converter* cp = p.converter_for(party);
    const Converter* cq = q.converter_for(party);
    if (!cq) {
      out.push_back(*cp);
      continue;
    }
    if (!cp) {
      out.push_back(*cq);
      continue;
    }
    // Inner ports get canonical names so the two combs cannot clash.
    Behavior a = rename_inner(*cp, "in:");
    std::vector<Wire> outer_wiring;
    for (const auto& w : cp->wiring) outer_wiring.push_back({"in:" + w.b_port, w.b_port});
    std::set<std::string> p_outer;
    for (const auto& id : cp->outer_ports()) p_outer.insert(id);
    std::vector<Wire> internal;
    std::vector<std::pair<std::string, std::string>> q_renames;
    for (const auto& w : cq->wiring) {
      if (p_outer.count(w.b_port)) {
        q_renames.emplace_back(w.a_port, "mid:" + w.b_port);
        internal.push_back({w.b_port, "mid:" + w.b_port});
      } else {
        q_renames.emplace_back(w.a_port, "in:" + w.b_port);
        outer_wiring.push_back({"in:" + w.b_port, w.b_port});
      }
    }
    Behavior b = rename_ports(cq->comb, q_renames);
    Behavior joint = link(a, b, internal);
    out.push_back(Converter::make(party, std::move(joint), std::move(outer_wiring)));
  }
  return Protocol::make(p.source, q.target, std::move(out));
}

Protocol par_compose(const Protocol& p, const Protocol& q) {
  std::vector<std::string> parties;
  for (const auto* proto : {&p, &q})
    for (const auto& c : proto->converters)
      if (std::find(parties.begin(), parties.end(), c.party) == parties.end())
        parties.push_back(c.party);
  std::vector<Converter> out;
  for (const auto& party : parties) {
    const Converter* cp = p.converter_for(party);
    const Converter* cq = q.converter_for(party);
    if (!cp || !cq) {
      out.push_back(cp ? *cp : *cq);
      continue;
    }
    Behavior a = rename_inner(*cp, "in:");
    Behavior b = rename_inner(*cq, "in:");
    std::vector<Wire> wiring;
    for (const auto* c : {cp, cq})
      for (const auto& w : c->wiring) wiring.push_back({"in:" + w.b_port, w.b_port});
    out.push_back(Converter::make(party, tensor_behavior(a, b), std::move(wiring)));
  }
  return Protocol::make(tensor_signature(p.source, q.source),
                        tensor_signature(p.target, q.target), std::move(out));
}

Protocol lift_deterministic(const Protocol& p) {
  for (const auto& c : p.converters)
    if (!c.comb.table().is_deterministic())
      fail(ErrorCode::NotDeterministic,
           "converter for " + c.party + " is not a function");
  Protocol lifted = p;
  lifted.lifted = true;
  return lifted;
}

Behavior to_float(const Behavior& b) {
  return Behavior::trusted(b.signature(), b.table().to_float());
}

Resource to_float(const Resource& r) { return Resource{to_float(r.behavior)}; }

Protocol to_float(const Protocol& p) {
  Protocol out = p;
  for (auto& c : out.converters) c.comb = to_float(c.comb);
  return out;
}

Resource tensor_resource(const Resource& a, const Resource& b) {
  return Resource{tensor_behavior(a.behavior, b.behavior)};
}

Signature prefix_signature(const Signature& sig, const std::string& prefix) {
  auto ports = sig.ports();
  for (auto& p : ports) p.id = prefix + p.id;
  return Signature::make(sig.parties(), sig.rounds(), std::move(ports));
}

Resource prefix_resource(const Resource& r, const std::string& prefix) {
  return Resource{prefix_ports(r.behavior, prefix)};
}

Protocol prefix_protocol(const Protocol& p, const std::string& prefix) {
  Protocol out{prefix_signature(p.source, prefix),
               prefix_signature(p.target, prefix), {}, p.lifted};
  for (const auto& c : p.converters) {
    Converter d{c.party, prefix_ports(c.comb, prefix), {}};
    for (const auto& w : c.wiring) d.wiring.push_back({prefix + w.a_port, prefix + w.b_port});
    out.converters.push_back(std::move(d));
  }
  return out;
}

Behavior forwarding_behavior(
    const Signature& sig,
    const std::vector<std::pair<std::string, std::string>>& in_to_out) {
  std::map<std::string, std::string> source;
  for (const auto& [in, out] : in_to_out) {
    const auto& pi = sig.port(in);
    const auto& po = sig.port(out);
    if (pi.direction != Direction::In || po.direction != Direction::Out)
      fail(ErrorCode::DirectionMismatch, "forward '" + in + "' -> '" + out + "'");
    if (!(pi.alphabet == po.alphabet))
      fail(ErrorCode::AlphabetMismatch, "forward '" + in + "' -> '" + out + "'");
    source[out] = in;
  }
  const Ports dom = sig.in_alphabets(), cod = sig.out_alphabets();
  std::vector<std::size_t> src_q;
  for (auto o : sig.out_ports()) {
    auto it = source.find(sig.ports()[o].id);
    if (it == source.end())
      fail(ErrorCode::InvalidArgument,
           "out-port '" + sig.ports()[o].id + "' has no source");
    const auto in_idx = *sig.find(it->second);
    src_q.push_back(static_cast<std::size_t>(
        std::find(sig.in_ports().begin(), sig.in_ports().end(), in_idx) -
        sig.in_ports().begin()));
  }
  const std::size_t cols = port_product(dom);
  std::vector<std::size_t> image(cols);
  std::vector<std::size_t> y(src_q.size());
  for (std::size_t c = 0; c < cols; ++c) {
    auto x = decode_tuple(c, dom);
    for (std::size_t i = 0; i < src_q.size(); ++i) y[i] = x[src_q[i]];
    image[c] = encode_tuple(y, cod);
  }
  return Behavior::make(sig, deterministic(dom, cod, image));
}

}  // namespace catcrypt
