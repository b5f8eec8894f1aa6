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

#include "catcrypt/attack.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "catcrypt/error.hpp"
#include "catcrypt/symbolic.hpp"

namespace catcrypt {

std::vector<std::string> dishonest_parties(const AttackModelSpec& spec,
                                           const std::vector<std::string>& parties) {
  struct Visitor {
    const std::vector<std::string>& parties;
    std::vector<std::string> operator()(const MinimalModel&) const { return {}; }
    std::vector<std::string> operator()(const MaximalModel&) const { return parties; }
    std::vector<std::string> operator()(const PerPartyModel& m) const {
      if (m.maximal.size() != parties.size())
        fail(ErrorCode::InvalidArgument, "per-party model needs one flag per party");
      std::vector<std::string> J;
      for (std::size_t i = 0; i < parties.size(); ++i)
        if (m.maximal[i]) J.push_back(parties[i]);
      return J;
    }
    std::vector<std::string> operator()(const ColludingModel& m) const {
      if (m.J.empty() || m.J.size() >= parties.size())
        fail(ErrorCode::InvalidArgument, "colluding set must be nonempty and proper");
      for (const auto& j : m.J)
        if (std::find(parties.begin(), parties.end(), j) == parties.end())
          fail(ErrorCode::InvalidArgument, "unknown party " + j);
      return m.J;
    }
  };
  return std::visit(Visitor{parties}, spec);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Secure: return "secure";
    case Verdict::Insecure: return "insecure";
    case Verdict::EpsSecure: return "eps-secure";
  }
  return "?";
}

namespace {

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

void check_parties(const Signature& sig, const std::vector<std::string>& J) {
  for (const auto& j : J)
    if (!contains(sig.parties(), j))
      fail(ErrorCode::WiringMismatch, "no party " + j + " in the resource");
}

std::vector<Wire> ideal_wiring(const Signature& ideal,
                               const std::vector<std::string>& J) {
  std::vector<Wire> w;
  for (const auto& p : ideal.ports())
    if (contains(J, p.party)) w.push_back({kIdealPrefix + p.id, p.id});
  return w;
}

Scalar tolerance(bool exact) { return exact ? Scalar(0) : Scalar::from_double(kTolEq); }

Scalar max_gap(const Behavior& a, const Behavior& b) {
  const auto& da = a.table().data();
  const auto aligned = conform(b, a.signature());
  const auto& db = aligned.table().data();
  Scalar m = 0;
  for (std::size_t i = 0; i < da.size(); ++i) m = max(m, abs(da[i] - db[i]));
  return m;
}

}  // namespace

Behavior dummy_attack(const Protocol& p, const Resource& r,
                      const std::vector<std::string>& J) {
  check_parties(r.signature(), J);
  std::vector<std::string> honest;
  for (const auto& party : r.signature().parties())
    if (!contains(J, party)) honest.push_back(party);
  return run_converters(p, r.behavior, honest);
}

Behavior apply_attack(const Protocol& p, const Resource& r, const Attack& a) {
  Behavior view = dummy_attack(p, r, a.J);
  for (const auto& w : a.wiring) {
    const auto& vp = view.signature().port(w.b_port);
    if (!contains(a.J, vp.party))
      fail(ErrorCode::InterfaceMismatch,
           "attack touches honest port '" + w.b_port + "'");
  }
  return link(a.comb, view, a.wiring);
}

Behavior simulated_view(const Resource& s, const std::vector<std::string>& J,
                        const Behavior& sigma) {
  return link(sigma, s.behavior, ideal_wiring(s.signature(), J));
}

SecurityReport check_secure_with(const Protocol& p, const Resource& r,
                                 const Resource& s,
                                 const std::vector<std::string>& J,
                                 const Behavior& sigma) {
  Behavior real = dummy_attack(p, r, J);
  Behavior ideal = simulated_view(s, J, sigma);
  if (!same_ports(real.signature(), ideal.signature()))
    fail(ErrorCode::InterfaceMismatch,
         "simulated view does not expose the real view's ports");
  SecurityReport report;
  const bool exact = real.table().is_exact() && ideal.table().is_exact();
  report.epsilon = behavior_distance(real, ideal);
  const Scalar gap = max_gap(real, ideal);
  const bool equal = gap <= tolerance(exact);
  report.verdict = equal ? Verdict::Secure : Verdict::Insecure;
  report.simulator = SimulatorCert{J, sigma, gap};
  report.certificate_verified = equal;
  report.message = equal ? "equation holds" : "tables differ by " + gap.str();
  return report;
}

Signature simulator_signature(const Signature& real, const Signature& ideal,
                              const std::vector<std::string>& J) {
  const std::size_t k = std::max(real.rounds(), ideal.rounds());
  std::vector<PortSpec> ports;
  std::vector<std::string> parties;
  for (std::size_t j = 1; j <= k; ++j) {
    auto add = [&](const Signature& sig, Direction dir, Direction as,
                   const std::string& prefix, std::size_t round) {
      for (const auto& p : sig.ports()) {
        if (!contains(J, p.party) || p.direction != dir || p.round != j) continue;
        PortSpec q = p;
        q.id = prefix + p.id;
        q.direction = as;
        q.round = round;
        ports.push_back(std::move(q));
      }
    };
    add(real, Direction::In, Direction::In, "", 2 * j - 1);
    add(ideal, Direction::In, Direction::Out, kIdealPrefix, 2 * j - 1);
    add(ideal, Direction::Out, Direction::In, kIdealPrefix, 2 * j);
    add(real, Direction::Out, Direction::Out, "", 2 * j);
  }
  for (const auto& j : J) parties.push_back(j);
  return Signature::make(parties, 2 * k, std::move(ports));
}

namespace {

struct SimulatorLp {
  Behavior real;
  LpBuilder builder;
  LinearBehavior sigma;
  LinearBehavior view;
};

SimulatorLp build_simulator_lp(const Protocol& p, const Resource& r,
                               const Resource& s,
                               const std::vector<std::string>& J) {
  check_parties(s.signature(), J);
  SimulatorLp out;
  out.real = dummy_attack(p, r, J);
  const auto sig = simulator_signature(out.real.signature(), s.signature(), J);
  out.sigma = out.builder.add_behavior(sig);
  const auto wiring = ideal_wiring(s.signature(), J);
  const auto schedule = infer_schedule(sig, s.signature(), wiring);
  out.view = link(out.sigma, s.behavior, wiring, schedule);
  if (!same_ports(out.view.signature, out.real.signature()))
    fail(ErrorCode::InterfaceMismatch,
         "ideal resource's honest ports differ from the real view's");
  return out;
}

}  // namespace

SecurityReport search_simulator(const Protocol& p, const Resource& r,
                                const Resource& s,
                                const std::vector<std::string>& J,
                                const SecurityOptions& opts) {
  auto prob = build_simulator_lp(p, r, s, J);
  prob.builder.add_equal(prob.view, prob.real);
  const auto& program = prob.builder.program();
  auto outcome = lp::solve_feasible(program, opts.lp);
  SecurityReport report;
  report.lp_vars = program.num_vars;
  report.lp_rows = program.num_rows();
  if (auto* inf = std::get_if<lp::Infeasible>(&outcome)) {
    report.verdict = Verdict::Insecure;
    report.farkas = inf->cert;
    report.certificate_verified = lp::verify(inf->cert, program);
    report.epsilon = 0;
    report.message = "no simulator exists";
    return report;
  }
  const auto& point = std::get<lp::Feasible>(outcome).point;
  Behavior sigma = read_behavior(prob.sigma, point);
  auto check = check_secure_with(p, r, s, J, sigma);
  if (check.verdict != Verdict::Secure)
    fail(ErrorCode::CompositeVerificationFailed,
         "LP simulator fails re-verification: " + check.message);
  check.lp_vars = report.lp_vars;
  check.lp_rows = report.lp_rows;
  check.message = "simulator found";
  return check;
}

SecurityReport min_epsilon(const Protocol& p, const Resource& r,
                           const Resource& s, const std::vector<std::string>& J,
                           const SecurityOptions& opts) {
  auto prob = build_simulator_lp(p, r, s, J);
  const std::size_t v = prob.builder.add_distance(prob.view, prob.real);
  prob.builder.program().set_objective({{v, Scalar::ratio(1, 2)}});
  const auto& program = prob.builder.program();
  auto outcome = lp::minimize(program, opts.lp);
  SecurityReport report;
  report.lp_vars = program.num_vars;
  report.lp_rows = program.num_rows();
  const auto* opt = std::get_if<lp::Optimal>(&outcome);
  if (!opt)
    fail(ErrorCode::CompositeVerificationFailed,
         "distance LP must have an optimum");
  Behavior sigma = read_behavior(prob.sigma, opt->point);
  auto check = check_secure_with(p, r, s, J, sigma);
  const Scalar tol = tolerance(opt->value.is_exact() && check.epsilon.is_exact());
  if (abs(check.epsilon - opt->value) > tol * Scalar(1000))
    fail(ErrorCode::CompositeVerificationFailed,
         "LP optimum " + opt->value.str() + " disagrees with measured distance " +
             check.epsilon.str());
  check.epsilon = opt->value;
  check.verdict = opt->value.is_zero() ? Verdict::Secure : Verdict::EpsSecure;
  check.lp_vars = report.lp_vars;
  check.lp_rows = report.lp_rows;
  check.certificate_verified = lp::verify(outcome, program);
  check.message = "minimum distance over simulators";
  return check;
}

Attack semi_honest_attack(const Protocol& p, const std::vector<std::string>& J) {
  Attack attack;
  attack.J = J;
  std::vector<Behavior> combs;
  for (const auto& party : J) {
    const Converter* c = p.converter_for(party);
    if (!c) continue;
    std::vector<std::pair<std::string, std::string>> renames;
    for (const auto& w : c->wiring) renames.emplace_back(w.a_port, "cv:" + w.a_port);
    Behavior comb = rename_ports(c->comb, renames);
    for (const auto& w : c->wiring) {
      const auto& cp = c->comb.signature().port(w.a_port);
      PortSpec res{w.b_port, party, cp.alphabet, Direction::In, 1};
      PortSpec cv{"cv:" + w.a_port, party, cp.alphabet, Direction::Out, 1};
      PortSpec leak{"leak:" + w.b_port, party, cp.alphabet, Direction::Out, 1};
      std::vector<std::pair<std::string, std::string>> fwd;
      if (cp.direction == Direction::In) {
        fwd = {{res.id, cv.id}, {res.id, leak.id}};
      } else {
        res.direction = Direction::Out;
        cv.direction = Direction::In;
        fwd = {{cv.id, res.id}, {cv.id, leak.id}};
      }
      auto tap_sig = Signature::make({party}, 1, {res, cv, leak});
      Behavior tap = forwarding_behavior(tap_sig, fwd);
      comb = link(comb, tap, {{cv.id, cv.id}});
      attack.wiring.push_back({w.b_port, w.b_port});
    }
    combs.push_back(std::move(comb));
  }
  Behavior joint = trivial_behavior();
  for (const auto& c : combs) joint = tensor_behavior(joint, c);
  attack.comb = std::move(joint);
  return attack;
}

SecurityClaim prefix_claim(const SecurityClaim& c, const std::string& prefix) {
  const std::string ideal = kIdealPrefix;
  std::vector<std::pair<std::string, std::string>> renames;
  for (const auto& port : c.cert.sigma.signature().ports()) {
    const bool faces_ideal = port.id.rfind(ideal, 0) == 0;
    renames.emplace_back(port.id, faces_ideal
                                      ? ideal + prefix + port.id.substr(ideal.size())
                                      : prefix + port.id);
  }
  return SecurityClaim{prefix_protocol(c.protocol, prefix), prefix_resource(c.real, prefix),
                       prefix_resource(c.ideal, prefix),
                       SimulatorCert{c.cert.J, rename_ports(c.cert.sigma, renames),
                                     c.cert.residual}};
}

Attack random_attack(const Behavior& view, const std::vector<std::string>& J,
                     std::mt19937& rng) {
  const auto& vs = view.signature();
  std::vector<PortSpec> ports;
  std::vector<Wire> wiring;
  for (const auto& p : vs.ports()) {
    if (!contains(J, p.party)) continue;
    PortSpec q = p;
    q.direction = p.direction == Direction::In ? Direction::Out : Direction::In;
    q.round = p.direction == Direction::In ? 2 * p.round - 1 : 2 * p.round;
    ports.push_back(q);
    wiring.push_back({p.id, p.id});
  }
  const std::string party = J.empty() ? std::string("adv") : J.front();
  ports.push_back(PortSpec{"adv_out", party, Alphabet{"bit", 2, {}}, Direction::Out,
                           2 * vs.rounds() + 1});
  auto sig = Signature::make(J, 2 * vs.rounds() + 1, std::move(ports));
  return Attack{J, random_causal_behavior(sig, rng), std::move(wiring)};
}

Scalar claim_epsilon(const SecurityClaim& c) {
  return check_secure_with(c.protocol, c.real, c.ideal, c.cert.J, c.cert.sigma)
      .epsilon;
}

ComposedCert compose_certs(const SecurityClaim& first, const SecurityClaim& second,
                           CompositionMode mode) {
  auto J = first.cert.J;
  auto J2 = second.cert.J;
  std::sort(J.begin(), J.end());
  std::sort(J2.begin(), J2.end());
  if (J != J2)
    fail(ErrorCode::InterfaceMismatch, "certificates are for different parties");

  SecurityClaim composite{identity_protocol(first.real.signature()), first.real,
                          first.ideal, SimulatorCert{first.cert.J, {}, 0}};
  if (mode == CompositionMode::Sequential) {
    if (!same_ports(first.ideal.signature(), second.real.signature()))
      fail(ErrorCode::InterfaceMismatch,
           "first target is not the second source");
    composite.protocol = seq_compose(second.protocol, first.protocol);
    composite.ideal = second.ideal;
    std::vector<Wire> wires;
    for (const auto& port : first.ideal.signature().ports())
      if (contains(J, port.party)) wires.push_back({kIdealPrefix + port.id, port.id});
    composite.cert.sigma = link(first.cert.sigma, second.cert.sigma, wires);
  } else {
    composite.protocol = par_compose(first.protocol, second.protocol);
    composite.real = tensor_resource(first.real, second.real);
    composite.ideal = tensor_resource(first.ideal, second.ideal);
    composite.cert.sigma = tensor_behavior(first.cert.sigma, second.cert.sigma);
  }
  auto report = check_secure_with(composite.protocol, composite.real,
                                   composite.ideal, first.cert.J,
                                   composite.cert.sigma);
  composite.cert.residual = report.simulator->residual;
  ComposedCert out{composite, report.epsilon,
                   claim_epsilon(first) + claim_epsilon(second)};
  const bool exact = out.epsilon.is_exact() && out.epsilon_bound.is_exact();
  if (out.epsilon > out.epsilon_bound + tolerance(exact))
    fail(ErrorCode::CompositeVerificationFailed,
         "composite distance " + out.epsilon.str() + " exceeds " +
             out.epsilon_bound.str());
  if (out.epsilon_bound.is_zero() && report.verdict != Verdict::Secure)
    fail(ErrorCode::CompositeVerificationFailed,
         "composite of exact certificates is not exact");
  return out;
}

// ------------------------------------------------------------ axiom suite

std::optional<PartyMorphism> compose_parts(const PartyMorphism& g,
                                           const PartyMorphism& f) {
  if (g.parties != f.parties) return std::nullopt;
  PartyMorphism out{f.parties, {}};
  for (std::size_t i = 0; i < f.parts.size(); ++i) {
    const auto& fs = f.parts[i].signature();
    const auto& gs = g.parts[i].signature();
    std::set<std::string> f_out, g_in;
    for (auto q : fs.out_ports()) f_out.insert(fs.ports()[q].id);
    for (auto q : gs.in_ports()) g_in.insert(gs.ports()[q].id);
    if (f_out != g_in) return std::nullopt;
    std::vector<Wire> wires;
    for (const auto& id : f_out) {
      if (!(fs.port(id).alphabet == gs.port(id).alphabet)) return std::nullopt;
      wires.push_back({id, id});
    }
    try {
      out.parts.push_back(link(f.parts[i], g.parts[i], wires));
    } catch (const Error&) {
      return std::nullopt;
    }
  }
  return out;
}

PartyMorphism tensor_parts(const PartyMorphism& f, const PartyMorphism& g) {
  if (f.parties != g.parties)
    fail(ErrorCode::InterfaceMismatch, "tensor of morphisms over different parties");
  PartyMorphism out{f.parties, {}};
  for (std::size_t i = 0; i < f.parts.size(); ++i)
    out.parts.push_back(tensor_behavior(f.parts[i], g.parts[i]));
  return out;
}

bool AxiomReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const AxiomCheck& c) { return c.passed; });
}

namespace {

Kernel random_kernel(const Ports& dom, const Ports& cod, std::mt19937& rng) {
  const std::size_t rows = port_product(cod), cols = port_product(dom);
  std::vector<Scalar> data(rows * cols);
  std::uniform_int_distribution<int> w(0, 3);
  for (std::size_t c = 0; c < cols; ++c) {
    std::vector<long> weights(rows);
    long total = 0;
    for (auto& x : weights) total += (x = w(rng));
    if (total == 0) {
      weights[rng() % rows] = 1;
      total = 1;
    }
    for (std::size_t r = 0; r < rows; ++r)
      data[r * cols + c] = Scalar::ratio(weights[r], total);
  }
  return Kernel::make(dom, cod, std::move(data));
}

}  // namespace

Behavior random_causal_behavior(const Signature& sig, std::mt19937& rng) {
  std::vector<Alphabet> memory{Alphabet::trivial()};
  for (std::size_t i = 1; i < sig.rounds(); ++i) memory.push_back(Alphabet{"mem", 2, {}});
  memory.push_back(Alphabet::trivial());
  std::vector<Kernel> rounds;
  for (std::size_t i = 1; i <= sig.rounds(); ++i) {
    Ports dom{memory[i - 1]}, cod;
    for (const auto& p : sig.ports()) {
      if (p.round != i) continue;
      (p.direction == Direction::In ? dom : cod).push_back(p.alphabet);
    }
    cod.push_back(memory[i]);
    rounds.push_back(random_kernel(dom, cod, rng));
  }
  return flatten(CombKernels::make(sig, std::move(memory), std::move(rounds)));
}

namespace {

PartyMorphism deviate(const PartyMorphism& f, const std::vector<std::string>& J,
                      std::mt19937& rng) {
  PartyMorphism g = f;
  for (std::size_t i = 0; i < f.parties.size(); ++i)
    if (contains(J, f.parties[i])) g.parts[i] = random_causal_behavior(f.parts[i].signature(), rng);
  return g;
}

bool member(const PartyMorphism& f, const PartyMorphism& fp,
            const std::vector<std::string>& J) {
  if (f.parties != fp.parties) return false;
  for (std::size_t i = 0; i < f.parts.size(); ++i) {
    if (!same_ports(f.parts[i].signature(), fp.parts[i].signature())) return false;
    if (contains(J, f.parties[i])) {
      if (!check_causal(fp.parts[i].signature(), fp.parts[i].table()).causal)
        return false;
    } else if (!behavior_equal(f.parts[i], fp.parts[i])) {
      return false;
    }
  }
  return true;
}

// The dishonest party's dummy: forwards each port to the adversary and back,
// two sub-rounds per round.
Behavior dummy_part(const Signature& sig) {
  std::vector<PortSpec> ports;
  std::vector<std::pair<std::string, std::string>> fwd;
  for (const auto& p : sig.ports()) {
    PortSpec outer = p, adv = p;
    adv.id = "adv." + p.id;
    if (p.direction == Direction::In) {
      outer.round = adv.round = 2 * p.round - 1;
      adv.direction = Direction::Out;
      fwd.emplace_back(outer.id, adv.id);
    } else {
      outer.round = adv.round = 2 * p.round;
      adv.direction = Direction::In;
      fwd.emplace_back(adv.id, outer.id);
    }
    ports.push_back(outer);
    ports.push_back(adv);
  }
  return forwarding_behavior(Signature::make(sig.parties(), 2 * sig.rounds(), ports),
                             fwd);
}

}  // namespace

AxiomReport attack_model_axiom_suite(const AttackModelSpec& spec,
                                     const std::vector<PartyMorphism>& samples,
                                     std::uint64_t seed) {
  AxiomReport report;
  if (samples.empty()) return report;
  const auto J = dishonest_parties(spec, samples.front().parties);
  std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));

  AxiomCheck incl{"honest inclusion", true, ""};
  for (const auto& f : samples)
    if (!member(f, f, J)) incl.passed = false;
  report.checks.push_back(incl);

  AxiomCheck comp{"composition closure", true, ""};
  std::size_t pairs = 0;
  for (const auto& f : samples)
    for (const auto& g : samples) {
      auto gf = compose_parts(g, f);
      if (!gf) continue;
      ++pairs;
      auto gpfp = compose_parts(deviate(g, J, rng), deviate(f, J, rng));
      if (!gpfp || !member(*gf, *gpfp, J)) comp.passed = false;
    }
  comp.detail = std::to_string(pairs) + " composable pairs";
  report.checks.push_back(comp);

  AxiomCheck tens{"tensor closure", true, ""};
  for (const auto& f : samples)
    for (const auto& g0 : samples) {
      PartyMorphism g = g0;
      for (auto& part : g.parts) part = prefix_ports(part, "2.");
      auto fg = tensor_parts(f, g);
      auto fgp = tensor_parts(deviate(f, J, rng), deviate(g, J, rng));
      if (!member(fg, fgp, J)) tens.passed = false;
    }
  report.checks.push_back(tens);

  AxiomCheck fact{"dummy factorization", true, ""};
  for (const auto& f : samples) {
    auto fp = deviate(f, J, rng);
    for (std::size_t i = 0; i < f.parties.size(); ++i) {
      if (!contains(J, f.parties[i])) continue;
      const auto& sig = f.parts[i].signature();
      std::vector<std::pair<std::string, std::string>> renames;
      std::vector<Wire> wires;
      for (const auto& p : sig.ports()) {
        renames.emplace_back(p.id, "adv." + p.id);
        wires.push_back({"adv." + p.id, "adv." + p.id});
      }
      Behavior a = rename_ports(fp.parts[i], renames);
      Behavior rebuilt = conform(link(dummy_part(sig), a, wires), sig);
      if (!behavior_equal(rebuilt, fp.parts[i])) fact.passed = false;
    }
  }
  report.checks.push_back(fact);
  return report;
}

}  // namespace catcrypt
