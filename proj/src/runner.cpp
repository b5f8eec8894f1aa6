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


#include "catcrypt/runner.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <thread>

#include "catcrypt/hopf.hpp"
#include "catcrypt/nogo.hpp"

namespace catcrypt::runner {
namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::size_t natural(const std::string& s) { return std::stoul(s); }

// Declarations that failed to build keep their exception; checks that touch
// them rethrow it.
template <class T>
class Table {
 public:
  void put(const std::string& name, T value) {
    items_[name] = std::make_shared<T>(std::move(value));
  }
  void put_error(const std::string& name, std::exception_ptr e) { errors_[name] = e; }
  const T& get(const std::string& name) const {
    if (auto it = items_.find(name); it != items_.end()) return *it->second;
    if (auto it = errors_.find(name); it != errors_.end()) std::rethrow_exception(it->second);
    fail(ErrorCode::UnresolvedName, "'" + name + "'");
  }

 private:
  std::map<std::string, std::shared_ptr<T>> items_;
  std::map<std::string, std::exception_ptr> errors_;
};

struct GroupEntry {
  std::vector<std::vector<std::size_t>> table;
  std::optional<FiniteGroup> group;  // set when the table is a group
  std::exception_ptr error;
  bool declared_loop = false;
};

struct Env {
  Table<Alphabet> alphabets;
  Table<GroupEntry> groups;
  Table<Kernel> kernels;
  Table<Resource> resources;
  Table<Converter> converters;
  Table<Protocol> protocols;
  Table<SecurityClaim> claims;

  const FiniteGroup& group(const std::string& name) const {
    const GroupEntry& e = groups.get(name);
    if (!e.group) std::rethrow_exception(e.error);
    return *e.group;
  }

  Alphabet alphabet(const std::string& name) const {
    try {
      return alphabets.get(name);
    } catch (const Error&) {
    }
    const GroupEntry& e = groups.get(name);
    return Alphabet{name, e.table.size(), {}};
  }

  Ports ports(const std::vector<std::string>& names) const {
    Ports out;
    for (const auto& n : names) out.push_back(alphabet(n));
    return out;
  }
};

std::vector<std::vector<std::size_t>> parse_rows(const std::vector<std::string>& values) {
  std::vector<std::vector<std::size_t>> rows(1);
  for (const auto& v : values) {
    if (v == "/") {
      rows.emplace_back();
      continue;
    }
    rows.back().push_back(natural(v));
  }
  return rows;
}

std::vector<std::vector<Scalar>> parse_scalar_rows(const std::vector<std::string>& values) {
  std::vector<std::vector<Scalar>> rows(1);
  for (const auto& v : values) {
    if (v == "/") {
      rows.emplace_back();
      continue;
    }
    rows.back().push_back(Scalar::parse(v));
  }
  return rows;
}

FiniteGroup renamed(FiniteGroup g, const std::string& name) {
  g.name = name;
  return g;
}

void build_group(Env& env, const spec::Decl& d) {
  const std::string name = d.name();
  GroupEntry e;
  if (const auto* c = d.clause("cyclic")) {
    e.group = renamed(cyclic_group(natural(c->values[0])), name);
  } else if (d.clause("symmetric3")) {
    e.group = renamed(symmetric3(), name);
  } else {
    const auto* c = d.clause("table") ? d.clause("table") : d.clause("loop");
    e.declared_loop = d.clause("loop") != nullptr;
    e.table = parse_rows(c->values);
    try {
      e.group = group_from_table(name, e.table);
    } catch (const Error&) {
      e.error = std::current_exception();
    }
  }
  if (e.group) e.table = e.group->cayley;
  env.groups.put(name, std::move(e));
}

Kernel build_generator(const Env& env, const std::vector<std::string>& v) {
  const std::string& gen = v[0];
  std::vector<std::string> args(v.begin() + 1, v.end());
  if (gen == "mult") return group_kernels(env.group(args[0])).mult;
  if (gen == "inv") return group_kernels(env.group(args[0])).inv;
  if (gen == "unit") return group_kernels(env.group(args[0])).unit;
  if (gen == "counit") return group_kernels(env.group(args[0])).del;
  if (gen == "identity") return identity(env.ports(args));
  if (gen == "uniform") return uniform(env.ports(args));
  if (gen == "delete") return deletion(env.ports(args));
  if (gen == "swap") return swap(env.alphabet(args[0]), env.alphabet(args[1]));
  if (gen == "copy")
    return copy(env.alphabet(args[0]), args.size() > 1 ? natural(args[1]) : 2);
  if (gen == "point") return point(env.alphabet(args[0]), natural(args[1]));
  fail(ErrorCode::InvalidArgument, "unknown generator '" + gen + "'");
}

Kernel build_kernel(const Env& env, const spec::Decl& d) {
  if (const auto* rows = d.clause("rows"))
    return Kernel::make(env.ports(d.clause("dom")->values),
                        env.ports(d.clause("cod")->values),
                        parse_scalar_rows(rows->values));
  if (const auto* g = d.clause("generator")) return build_generator(env, g->values);
  if (const auto* c = d.clause("compose")) {
    Kernel k = env.kernels.get(c->values.back());
    for (std::size_t i = c->values.size() - 1; i-- > 0;)
      k = compose(env.kernels.get(c->values[i]), k);
    return k;
  }
  const auto* t = d.clause("tensor");
  Kernel k = env.kernels.get(t->values[0]);
  for (std::size_t i = 1; i < t->values.size(); ++i) k = tensor(k, env.kernels.get(t->values[i]));
  return k;
}

Signature build_signature(const Env& env, const std::vector<std::string>& words,
                          const std::string* party, std::size_t rounds) {
  std::vector<std::string> parties;
  if (party) parties.push_back(*party);
  std::vector<PortSpec> ports;
  std::size_t max_round = 1;
  for (const auto& w : words) {
    auto p = spec::parse_port(w, party == nullptr);
    PortSpec s{p.id, party ? *party : p.party, env.alphabet(p.alphabet),
               p.in ? Direction::In : Direction::Out, p.round};
    if (std::find(parties.begin(), parties.end(), s.party) == parties.end())
      parties.push_back(s.party);
    max_round = std::max(max_round, p.round);
    ports.push_back(std::move(s));
  }
  return Signature::make(std::move(parties), rounds ? rounds : max_round, std::move(ports));
}

Resource build_builtin(const std::vector<std::string>& v) {
  const std::string& n = v[0];
  if (n == "commitment") return commitment_resource();
  if (n == "ot") return ot_resource();
  if (n == "identity_channel") return identity_channel_resource();
  if (n == "shared_bit") return shared_bit_resource();
  if (n == "mixture") return commitment_mixture(Scalar::parse(v[1]));
  if (n == "broadcast") return broadcast_resource();
  if (n == "constant") return constant_resource();
  if (n == "product") return product_uniform_resource();
  fail(ErrorCode::InvalidArgument, "unknown builtin '" + n + "'");
}

Resource build_resource(const Env& env, const spec::Decl& d) {
  if (const auto* b = d.clause("builtin")) return build_builtin(b->values);
  if (const auto* t = d.clause("tensor"))
    return tensor_resource(env.resources.get(t->values[0]), env.resources.get(t->values[1]));
  auto sig = build_signature(env, d.clause("ports")->values, nullptr,
                             natural(d.clause("rounds")->values[0]));
  return Resource::make(Behavior::make(std::move(sig),
                                       env.kernels.get(d.clause("kernel")->values[0])));
}

Converter build_converter(const Env& env, const spec::Decl& d) {
  const std::string& party = d.head[0];
  auto sig = build_signature(env, d.clause("ports")->values, &party, 0);
  std::vector<Wire> wiring;
  if (const auto* w = d.clause("wire"))
    for (const auto& v : w->values) {
      auto eq = v.find('=');
      wiring.push_back({v.substr(0, eq), v.substr(eq + 1)});
    }
  return Converter::make(party,
                         Behavior::make(std::move(sig),
                                        env.kernels.get(d.clause("kernel")->values[0])),
                         std::move(wiring));
}

Protocol build_protocol(const Env& env, const spec::Decl& d) {
  std::vector<Converter> cs;
  for (const auto& c : d.clause("use")->values) cs.push_back(env.converters.get(c));
  return Protocol::make(env.resources.get(d.clause("from")->values[0]).signature(),
                        env.resources.get(d.clause("to")->values[0]).signature(),
                        std::move(cs));
}

void build_instance(Env& env, const spec::Decl& d) {
  const std::string n = d.name();
  try {
    std::optional<std::vector<Scalar>> key;
    if (const auto* k = d.clause("key")) {
      key.emplace();
      for (const auto& v : k->values) key->push_back(Scalar::parse(v));
    }
    OtpInstance inst = build_otp(env.group(d.clause("otp")->values[0]), key);
    env.resources.put(n + ".key", inst.key);
    env.resources.put(n + ".channel", inst.channel);
    env.resources.put(n + ".real", inst.real);
    env.resources.put(n + ".target", inst.target);
    env.resources.put(n + ".sigma", Resource{inst.sigma});
    env.protocols.put(n + ".protocol", inst.protocol);
  } catch (...) {
    auto e = std::current_exception();
    for (const char* part : {".key", ".channel", ".real", ".target", ".sigma"})
      env.resources.put_error(n + part, e);
    env.protocols.put_error(n + ".protocol", e);
  }
}

std::vector<std::string> values_of(const spec::Decl& d, const char* key) {
  const auto* c = d.clause(key);
  return c ? c->values : std::vector<std::string>{};
}

std::string first_of(const spec::Decl& d, const char* key) {
  const auto* c = d.clause(key);
  return c && !c->values.empty() ? c->values[0] : std::string{};
}

SecurityClaim build_claim(const Env& env, const spec::Decl& d) {
  return SecurityClaim{env.protocols.get(d.head[1]),
                       env.resources.get(first_of(d, "from")),
                       env.resources.get(first_of(d, "to")),
                       SimulatorCert{values_of(d, "dishonest"),
                                     env.resources.get(first_of(d, "sigma")).behavior, 0}};
}

template <class T, class F>
void guarded(Table<T>& table, const std::string& name, F&& build) {
  try {
    table.put(name, build());
  } catch (...) {
    table.put_error(name, std::current_exception());
  }
}

Env build_env(const spec::SpecFileAst& ast) {
  Env env;
  for (const auto& d : ast.decls) {
    const std::string n = d.name();
    const std::string& k = d.keyword;
    if (k == "alphabet") {
      guarded(env.alphabets, n, [&] {
        std::size_t size = natural(d.clause("size")->values[0]);
        return Alphabet::make(n, size, values_of(d, "labels"));
      });
    } else if (k == "group") {
      build_group(env, d);
    } else if (k == "kernel") {
      guarded(env.kernels, n, [&] { return build_kernel(env, d); });
    } else if (k == "resource") {
      guarded(env.resources, n, [&] { return build_resource(env, d); });
    } else if (k == "converter") {
      guarded(env.converters, n, [&] { return build_converter(env, d); });
    } else if (k == "protocol") {
      guarded(env.protocols, n, [&] { return build_protocol(env, d); });
    } else if (k == "instance") {
      build_instance(env, d);
    } else if (k == "claim") {
      guarded(env.claims, n, [&] { return build_claim(env, d); });
    }
  }
  return env;
}

// ---- certificates --------------------------------------------------------

std::string table_digest(const Behavior& b) {
  std::vector<std::string> parts;
  for (const auto& s : b.table().data()) parts.push_back(s.str());
  return digest(parts);
}

json farkas_json(const std::optional<lp::FarkasCert>& cert, bool verified) {
  json j;
  j["kind"] = "farkas";
  std::vector<std::string> parts;
  if (cert)
    for (const auto& y : cert->y) parts.push_back(y.str());
  j["size"] = parts.size();
  j["digest"] = digest(parts);
  j["verified"] = verified;
  return j;
}

json simulator_json(const SimulatorCert& c, bool verified) {
  json j;
  j["kind"] = "simulator";
  j["entries"] = c.sigma.table().data().size();
  j["digest"] = table_digest(c.sigma);
  j["residual"] = c.residual.str();
  j["verified"] = verified;
  return j;
}

json report_json(const SecurityReport& r) {
  json j;
  j["verdict"] = to_string(r.verdict);
  j["epsilon"] = r.epsilon.str();
  j["lp"] = {{"vars", r.lp_vars}, {"rows", r.lp_rows}};
  if (r.simulator)
    j["certificate"] = simulator_json(*r.simulator, r.certificate_verified);
  else if (r.farkas)
    j["certificate"] = farkas_json(r.farkas, r.certificate_verified);
  return j;
}

json nogo_json(const NogoVerdict& v) {
  json j;
  j["verdict"] = v.feasible ? "feasible" : "infeasible";
  j["lp"] = {{"vars", v.lp_vars}, {"rows", v.lp_rows}};
  if (v.feasible) {
    std::vector<std::string> parts;
    for (const auto& w : v.witness) parts.push_back(table_digest(w));
    j["certificate"] = {{"kind", "witness"}, {"parts", v.witness.size()},
                        {"digest", digest(parts)}};
  } else {
    j["certificate"] = farkas_json(v.cert, v.certificate_verified);
  }
  return j;
}

// ---- checks ---------------------------------------------------------------

struct Ctx {
  const Env& env;
  const RunOptions& opts;

  SecurityOptions security() const {
    SecurityOptions s;
    s.lp.float_mode = opts.float_mode;
    return s;
  }
  lp::SolverOptions lp() const { return security().lp; }

  bool same(const Scalar& a, const Scalar& b) const {
    if (a.is_exact() && b.is_exact()) return a == b;
    return std::abs(a.to_double() - b.to_double()) <= opts.tol;
  }
  bool at_least(const Scalar& a, const Scalar& b) const {
    if (a.is_exact() && b.is_exact()) return a >= b;
    return a.to_double() >= b.to_double() - opts.tol;
  }
  Scalar tol() const { return opts.float_mode ? Scalar::from_double(opts.tol) : Scalar(0); }
};

struct Setting {
  Protocol p;
  Resource r, s;
  std::vector<std::string> J;
};

Setting setting(const Ctx& c, const spec::Decl& d) {
  Setting st{c.env.protocols.get(d.head[1]), c.env.resources.get(first_of(d, "from")),
             c.env.resources.get(first_of(d, "to")), values_of(d, "dishonest")};
  return st;
}

void check_axioms(const Ctx& c, const spec::Decl& d, CheckResult& out) {
  const GroupEntry& e = c.env.groups.get(d.head[1]);
  std::optional<FiniteGroup> g = e.group;
  if (!g) {
    // Not a group: run the suite on the loop when that much holds, so the
    // report says which axiom breaks.
    try {
      g = loop_from_table(d.head[1], e.table);
    } catch (const Error&) {
      std::rethrow_exception(e.error);
    }
    try {
      std::rethrow_exception(e.error);
    } catch (const Error& err) {
      out.detail = err.what();
    }
  }
  json list = json::array();
  bool all = true;
  std::string failed;
  for (const auto& a : hopf_axiom_suite(*g)) {
    list.push_back({{"id", a.id}, {"name", a.name}, {"passed", a.passed}});
    all = all && a.passed;
    if (!a.passed) failed += (failed.empty() ? "" : " ") + a.id;
  }
  out.data["order"] = g->order;
  out.data["axioms"] = list;
  out.verdict = all ? "pass" : "fail";
  out.expected = d.clause("expect") ? first_of(d, "expect") : "pass";
  out.passed = out.verdict == out.expected;
  if (!failed.empty())
    out.detail = "failing: " + failed + (out.detail.empty() ? "" : "; " + out.detail);
}

void check_correct(const Ctx& c, const spec::Decl& d, CheckResult& out) {
  Protocol p = c.env.protocols.get(d.head[1]);
  const Resource& r = c.env.resources.get(first_of(d, "from"));
  const Resource& s = c.env.resources.get(first_of(d, "to"));
  Resource got = apply_protocol(p, r);
  const Scalar gap = behavior_distance(got.behavior, s.behavior);
  out.data["distance"] = gap.str();
  out.verdict = behavior_equal(got.behavior, s.behavior, c.tol()) ? "pass" : "fail";
  out.expected = d.clause("expect") ? first_of(d, "expect") : "pass";
  out.passed = out.verdict == out.expected;
}

void check_secure(const Ctx& c, const spec::Decl& d, CheckResult& out) {
  Setting st = setting(c, d);
  SecurityReport rep;
  if (d.clause("sigma")) {
    Behavior sigma = c.env.resources.get(first_of(d, "sigma")).behavior;
    if (c.opts.float_mode)
      rep = check_secure_with(to_float(st.p), to_float(st.r), to_float(st.s), st.J,
                              to_float(sigma));
    else
      rep = check_secure_with(st.p, st.r, st.s, st.J, sigma);
    out.data["method"] = "given simulator";
  } else {
    rep = search_simulator(st.p, st.r, st.s, st.J, c.security());
    out.data["method"] = "simulator search";
  }
  out.data.update(report_json(rep));
  out.verdict = rep.verdict == Verdict::Secure ? "secure" : "insecure";
  out.expected = d.clause("expect") ? first_of(d, "expect") : "secure";
  // A searched verdict only counts with its certificate.
  const bool cert_ok = d.clause("sigma") || rep.certificate_verified;
  out.passed = out.verdict == out.expected && cert_ok;
  if (!cert_ok) out.detail = "certificate did not verify";
  if (!rep.message.empty()) out.detail += (out.detail.empty() ? "" : "; ") + rep.message;
}

void check_epsilon(const Ctx& c, const spec::Decl& d, CheckResult& out) {
  Setting st = setting(c, d);
  SecurityReport rep = min_epsilon(st.p, st.r, st.s, st.J, c.security());
  out.data.update(report_json(rep));
  out.verdict = rep.epsilon.str();
  out.passed = true;
  if (d.clause("expect")) {
    out.expected = first_of(d, "expect");
    out.passed = c.same(rep.epsilon, Scalar::parse(out.expected));
  }
}

void check_compose(const Ctx& c, const spec::Decl& d, CheckResult& out) {
  const auto mode = d.head[1] == "sequential" ? CompositionMode::Sequential
                                               : CompositionMode::Parallel;
  SecurityClaim a = c.env.claims.get(d.head[2]);
  SecurityClaim b = c.env.claims.get(d.head[3]);
  out.data["mode"] = d.head[1];
  if (mode == CompositionMode::Parallel) {
    // Side by side: keep the two copies' ports apart.
    a = prefix_claim(a, "l.");
    b = prefix_claim(b, "r.");
  }
  try {
    ComposedCert cc = compose_certs(a, b, mode);
    out.data["epsilon"] = cc.epsilon.str();
    out.data["bound"] = cc.epsilon_bound.str();
    out.data["certificate"] = simulator_json(cc.claim.cert, true);
    out.verdict = cc.epsilon.str();
    out.passed = c.at_least(cc.epsilon_bound, cc.epsilon);
    if (!out.passed) out.detail = "composite epsilon exceeds the sum of the parts";
    if (d.clause("expect")) {
      out.expected = first_of(d, "expect");
      out.passed = out.passed && c.same(cc.epsilon, Scalar::parse(out.expected));
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::CompositeVerificationFailed) throw;
    out.verdict = "composite-verification-failed";
    out.detail = e.what();
    out.passed = false;
  }
}

void check_stream(const Ctx& c, const spec::Decl& d, CheckResult& out) {
  StreamCipherReport rep = stream_cipher_demo(c.env.group(d.head[1]),
                                              c.env.kernels.get(first_of(d, "expander")));
  out.data["epsilon_expander"] = rep.eps_expander.str();
  out.data["epsilon"] = rep.composed.epsilon.str();
  out.data["bound"] = rep.composed.epsilon_bound.str();
  out.data["certificate"] = simulator_json(rep.composed.claim.cert, true);
  out.verdict = rep.composed.epsilon.str();
  out.passed = c.at_least(rep.composed.epsilon_bound, rep.composed.epsilon);
  if (d.clause("expect")) {
    out.expected = first_of(d, "expect");
    out.passed = out.passed && c.same(rep.composed.epsilon, Scalar::parse(out.expected));
  }
}

void check_dummy(const Ctx& c, const spec::Decl& d, CheckResult& out) {
  Setting st = setting(c, d);
  const std::size_t samples = d.clause("samples") ? natural(first_of(d, "samples")) : 50;
  const std::size_t seed = d.clause("seed") ? natural(first_of(d, "seed")) : 1;
  SecurityReport rep = search_simulator(st.p, st.r, st.s, st.J, c.security());
  out.data["simulator"] = report_json(rep);
  out.expected = "all attacks transfer";
  if (rep.verdict != Verdict::Secure || !rep.simulator) {
    out.verdict = "no simulator";
    out.passed = false;
    return;
  }
  const Behavior view = dummy_attack(st.p, st.r, st.J);
  const Behavior ideal =
      conform(simulated_view(st.s, st.J, rep.simulator->sigma), view.signature());
  std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
  std::size_t ok = 0;
  std::vector<std::string> digests;
  for (std::size_t i = 0; i < samples; ++i) {
    Attack a = random_attack(view, st.J, rng);
    Behavior lhs = link(a.comb, view, a.wiring);
    Behavior rhs = link(a.comb, ideal, a.wiring);
    digests.push_back(table_digest(lhs));
    ok += behavior_equal(lhs, conform(rhs, lhs.signature()), c.tol());
  }
  out.data["samples"] = samples;
  out.data["seed"] = seed;
  out.data["transferred"] = ok;
  out.data["views_digest"] = digest(digests);
  out.verdict = std::to_string(ok) + "/" + std::to_string(samples) + " transfer";
  out.passed = ok == samples;
}

void check_lift(const Ctx& c, const spec::Decl& d, CheckResult& out) {
  Setting st = setting(c, d);
  out.expected = "simulator verifies in both worlds";
  Protocol lifted;
  try {
    lifted = lift_deterministic(st.p);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotDeterministic) throw;
    out.verdict = "not deterministic";
    out.detail = e.what();
    return;
  }
  SecurityOptions exact;  // the deterministic world is exact
  SecurityReport det = search_simulator(lifted, st.r, st.s, st.J, exact);
  out.data["deterministic"] = report_json(det);
  if (det.verdict != Verdict::Secure || !det.simulator) {
    out.verdict = "no deterministic simulator";
    return;
  }
  const Behavior& sigma = det.simulator->sigma;
  SecurityReport exact_rep = check_secure_with(st.p, st.r, st.s, st.J, sigma);
  SecurityReport float_rep = check_secure_with(to_float(st.p), to_float(st.r),
                                               to_float(st.s), st.J, to_float(sigma));
  out.data["stochastic_exact"] = to_string(exact_rep.verdict);
  out.data["stochastic_float"] = to_string(float_rep.verdict);
  const bool ok = exact_rep.verdict == Verdict::Secure && float_rep.verdict == Verdict::Secure;
  out.verdict = ok ? "verifies" : "does not verify";
  out.passed = ok;
}

void check_split(const Ctx& c, const spec::Decl& d, CheckResult& out) {
  const Resource& r = c.env.resources.get(d.head[1]);
  NogoVerdict v = split_check(r, c.lp());
  out.data.update(nogo_json(v));
  out.verdict = v.feasible ? "feasible" : "infeasible";
  // Without an expectation the check only vouches for its certificate.
  out.expected = first_of(d, "expect");
  out.passed = (out.expected.empty() || out.verdict == out.expected) &&
               (v.feasible || v.certificate_verified);
  if (!v.feasible && !v.certificate_verified) out.detail = "certificate did not verify";
  if (const auto* a = d.clause("advantage")) {
    NogoVerdict m = min_split_advantage(r, c.lp());
    const Scalar want = Scalar::parse(a->values.back());
    const Scalar got = m.min_advantage.value_or(Scalar(0));
    const bool bound = a->values.size() == 2;
    out.data["advantage"] = got.str();
    out.data["advantage_expected"] = (bound ? ">= " : "") + want.str();
    const bool ok = bound ? c.at_least(got, want) : c.same(got, want);
    out.detail += (out.detail.empty() ? "" : "; ") + std::string("advantage ") + got.str();
    if (!ok) out.detail += " (mismatch)";
    out.passed = out.passed && ok;
  }
}

void check_broadcast(const Ctx& c, const spec::Decl& d, CheckResult& out) {
  const Resource& r = c.env.resources.get(d.head[1]);
  NogoVerdict v = tripartite_split_check(r, std::nullopt, c.lp());
  ContradictionReport o = broadcast_contradiction_oracle(r);
  out.data.update(nogo_json(v));
  out.data["oracle"] = {{"contradiction", o.contradiction}, {"message", o.message}};
  out.verdict = v.feasible ? "feasible" : "infeasible";
  out.expected = first_of(d, "expect");
  const bool agree = o.contradiction == !v.feasible;
  out.data["methods_agree"] = agree;
  out.passed = (out.expected.empty() || out.verdict == out.expected) && agree &&
               (v.feasible || v.certificate_verified);
  if (!agree) out.detail = "LP and contradiction oracle disagree";
  else if (o.contradiction) out.detail = o.message;
}

CheckResult run_check(const Ctx& c, const spec::Decl& d) {
  CheckResult out;
  out.line = d.line;
  out.kind = d.head[0];
  for (std::size_t i = 1; i < d.head.size(); ++i)
    out.subject += (i > 1 ? " " : "") + d.head[i];
  const auto t0 = Clock::now();
  try {
    const std::string& k = out.kind;
    if (k == "axioms") check_axioms(c, d, out);
    else if (k == "correct") check_correct(c, d, out);
    else if (k == "secure") check_secure(c, d, out);
    else if (k == "epsilon") check_epsilon(c, d, out);
    else if (k == "compose") check_compose(c, d, out);
    else if (k == "stream") check_stream(c, d, out);
    else if (k == "dummy") check_dummy(c, d, out);
    else if (k == "lift") check_lift(c, d, out);
    else if (k == "split") check_split(c, d, out);
    else check_broadcast(c, d, out);
  } catch (const Error& e) {
    out.passed = false;
    out.error = true;
    out.resource_limit =
        e.code() == ErrorCode::SizeLimit || e.code() == ErrorCode::ProblemTooLarge;
    out.verdict = "error";
    out.detail = "line " + std::to_string(d.line) + ": " + e.what();
  } catch (const std::exception& e) {
    out.passed = false;
    out.error = true;
    out.verdict = "error";
    out.detail = "line " + std::to_string(d.line) + ": " + e.what();
  }
  out.wall_ms = ms_since(t0);
  return out;
}

}  // namespace

std::string digest(const std::vector<std::string>& parts) {
  std::uint64_t h = 14695981039346656037ull;  // 0xcbf29ce484222325
  auto eat = [&](unsigned char ch) {
    h ^= ch;
    h *= 1099511628211ull;
  };
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) eat(',');
    for (unsigned char ch : parts[i]) eat(ch);
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::size_t Report::passed() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.passed;
  return n;
}

int Report::exit_code() const {
  for (const auto& c : checks)
    if (c.resource_limit) return 3;
  return passed() == checks.size() ? 0 : 1;
}

Report run(const spec::SpecFileAst& ast, const RunOptions& opts) {
  const auto t0 = Clock::now();
  Report rep;
  rep.options = opts;
  const Env env = build_env(ast);
  std::vector<const spec::Decl*> checks;
  for (const auto& d : ast.decls)
    if (d.keyword == "check") checks.push_back(&d);
  rep.checks.resize(checks.size());
  const Ctx ctx{env, opts};
  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, checks.size()));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < checks.size(); ++i) rep.checks[i] = run_check(ctx, *checks[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < checks.size();)
          rep.checks[i] = run_check(ctx, *checks[i]);
      });
    for (auto& t : pool) t.join();
  }
  rep.wall_ms = ms_since(t0);
  return rep;
}

std::string to_json(const Report& r, bool meta) {
  json j;
  j["schema"] = kSchema;
  j["file"] = r.file;
  j["mode"] = r.options.float_mode ? "float" : "rational";
  if (r.options.float_mode) j["tolerance"] = r.options.tol;
  json checks = json::array();
  for (std::size_t i = 0; i < r.checks.size(); ++i) {
    const auto& c = r.checks[i];
    json e;
    e["index"] = i;
    e["line"] = c.line;
    e["kind"] = c.kind;
    e["subject"] = c.subject;
    e["verdict"] = c.verdict;
    if (!c.expected.empty()) e["expected"] = c.expected;
    e["passed"] = c.passed;
    if (c.error) e["error"] = true;
    if (c.resource_limit) e["resource_limit"] = true;
    if (!c.detail.empty()) e["detail"] = c.detail;
    if (!c.data.empty()) e["data"] = c.data;
    if (meta) e["wall_ms"] = c.wall_ms;
    checks.push_back(std::move(e));
  }
  j["checks"] = checks;
  j["summary"] = {{"total", r.checks.size()},
                  {"passed", r.passed()},
                  {"failed", r.checks.size() - r.passed()},
                  {"exit_code", r.exit_code()}};
  if (meta) {
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    j["meta"] = {{"wall_ms", r.wall_ms},
                 {"jobs", r.options.jobs},
                 {"unix_time", std::chrono::duration_cast<std::chrono::seconds>(now).count()}};
  }
  return j.dump(2) + "\n";
}

std::string render_text(const Report& r) {
  std::ostringstream os;
  for (const auto& c : r.checks) {
    os << (c.passed ? "PASS" : "FAIL") << "  line " << c.line << "  " << c.kind << " "
       << c.subject << ": " << c.verdict;
    if (!c.expected.empty()) os << " (expected " << c.expected << ")";
    if (!c.detail.empty()) os << "  [" << c.detail << "]";
    os << "\n";
  }
  os << r.passed() << "/" << r.checks.size() << " checks passed\n";
  return os.str();
}

}  // namespace catcrypt::runner
