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

#include "catcrypt/comb.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "catcrypt/error.hpp"

namespace catcrypt {

// ---------------------------------------------------------------- Signature

Signature Signature::make(std::vector<std::string> parties, std::size_t rounds,
                          std::vector<PortSpec> ports) {
  if (rounds < 1) fail(ErrorCode::InvalidArgument, "signature needs >= 1 round");
  Signature s;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < ports.size(); ++i) {
    const auto& p = ports[i];
    if (p.id.empty()) fail(ErrorCode::InvalidArgument, "empty port id");
    if (!ids.insert(p.id).second)
      fail(ErrorCode::InvalidArgument, "duplicate port id '" + p.id + "'");
    if (p.round < 1 || p.round > rounds)
      fail(ErrorCode::InvalidArgument,
           "port '" + p.id + "' round " + std::to_string(p.round) +
               " outside 1.." + std::to_string(rounds));
    if (p.alphabet.size < 1)
      fail(ErrorCode::InvalidArgument, "port '" + p.id + "' has empty alphabet");
    if (std::find(parties.begin(), parties.end(), p.party) == parties.end())
      parties.push_back(p.party);
    (p.direction == Direction::In ? s.in_ : s.out_).push_back(i);
  }
  s.parties_ = std::move(parties);
  s.rounds_ = rounds;
  s.ports_ = std::move(ports);
  return s;
}

Ports Signature::in_alphabets() const {
  Ports out;
  for (auto i : in_) out.push_back(ports_[i].alphabet);
  return out;
}

Ports Signature::out_alphabets() const {
  Ports out;
  for (auto i : out_) out.push_back(ports_[i].alphabet);
  return out;
}

std::optional<std::size_t> Signature::find(const std::string& id) const {
  for (std::size_t i = 0; i < ports_.size(); ++i)
    if (ports_[i].id == id) return i;
  return std::nullopt;
}

const PortSpec& Signature::port(const std::string& id) const {
  auto i = find(id);
  if (!i) fail(ErrorCode::InterfaceMismatch, "no port '" + id + "'");
  return ports_[*i];
}

std::vector<std::string> Signature::ports_of(const std::string& party) const {
  std::vector<std::string> ids;
  for (const auto& p : ports_)
    if (p.party == party) ids.push_back(p.id);
  return ids;
}

bool same_ports(const Signature& a, const Signature& b) {
  if (a.ports().size() != b.ports().size()) return false;
  for (const auto& p : b.ports()) {
    auto i = a.find(p.id);
    if (!i) return false;
    const auto& q = a.ports()[*i];
    if (q.party != p.party || !(q.alphabet == p.alphabet) ||
        q.direction != p.direction)
      return false;
  }
  return true;
}

namespace {

std::string show_digits(const std::vector<std::size_t>& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(d[i]);
  }
  return s + ")";
}

// Flat-table stride of every port (outs major, then ins), indexed like
// Signature::ports().
struct TableStrides {
  std::vector<std::size_t> port_stride;
  std::size_t rows = 1, cols = 1;
};

TableStrides table_strides(const Signature& sig) {
  TableStrides t;
  t.port_stride.assign(sig.ports().size(), 0);
  for (auto it = sig.in_ports().rbegin(); it != sig.in_ports().rend(); ++it) {
    t.port_stride[*it] = t.cols;
    t.cols *= sig.ports()[*it].alphabet.size;
  }
  std::size_t r = 1;
  for (auto it = sig.out_ports().rbegin(); it != sig.out_ports().rend(); ++it) {
    t.port_stride[*it] = r * t.cols;
    r *= sig.ports()[*it].alphabet.size;
  }
  t.rows = r;
  return t;
}

// Index map sending each flat entry of `to` to the flat entry of `from`
// holding the same port values. Ports are matched by id.
std::vector<std::size_t> entry_map(const Signature& from, const Signature& to) {
  if (!same_ports(from, to))
    fail(ErrorCode::SignatureMismatch, "port sets differ");
  const auto sf = table_strides(from);
  std::vector<std::size_t> sizes, src_stride;
  // Enumerate `to` entries in its own flat order: outs then ins.
  std::vector<std::size_t> order(to.out_ports());
  order.insert(order.end(), to.in_ports().begin(), to.in_ports().end());
  for (auto p : order) {
    sizes.push_back(to.ports()[p].alphabet.size);
    src_stride.push_back(sf.port_stride[*from.find(to.ports()[p].id)]);
  }
  std::size_t total = 1;
  for (auto s : sizes) total *= s;
  std::vector<std::size_t> map(total);
  std::vector<std::size_t> digits(sizes.size(), 0);
  std::size_t src = 0;
  for (std::size_t e = 0; e < total; ++e) {
    map[e] = src;
    for (std::size_t d = sizes.size(); d-- > 0;) {
      if (++digits[d] < sizes[d]) {
        src += src_stride[d];
        break;
      }
      src -= src_stride[d] * (sizes[d] - 1);
      digits[d] = 0;
    }
  }
  return map;
}

template <class T>
std::vector<T> permute_entries(const std::vector<T>& data, const Signature& from,
                               const Signature& to) {
  auto map = entry_map(from, to);
  std::vector<T> out;
  out.reserve(map.size());
  for (auto src : map) out.push_back(data[src]);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- Behavior

Behavior Behavior::make(Signature sig, Kernel table) {
  if (table.dom() != sig.in_alphabets() || table.cod() != sig.out_alphabets())
    fail(ErrorCode::InterfaceMismatch,
         "table interface does not match the signature's ports");
  table.validate();
  auto report = check_causal(sig, table);
  if (!report.causal) fail(ErrorCode::NotCausal, report.message);
  return Behavior(std::move(sig), std::move(table));
}

Behavior Behavior::trusted(Signature sig, Kernel table) {
  if (table.dom() != sig.in_alphabets() || table.cod() != sig.out_alphabets())
    fail(ErrorCode::InterfaceMismatch,
         "table interface does not match the signature's ports");
  return Behavior(std::move(sig), std::move(table));
}

CausalityReport check_causal(const Signature& sig, const Kernel& table) {
  CausalityReport report;
  const auto& ports = sig.ports();
  const Ports dom = sig.in_alphabets();
  const Ports cod = sig.out_alphabets();
  const Scalar tol =
      table.is_exact() ? Scalar(0) : Scalar::from_double(kTolEq);
  for (std::size_t round = 1; round < sig.rounds(); ++round) {
    std::vector<std::size_t> early_out, late_in;
    for (std::size_t q = 0; q < sig.out_ports().size(); ++q)
      if (ports[sig.out_ports()[q]].round <= round) early_out.push_back(q);
    for (std::size_t q = 0; q < sig.in_ports().size(); ++q)
      if (ports[sig.in_ports()[q]].round > round) late_in.push_back(q);
    if (early_out.empty() || late_in.empty()) continue;

    Ports early_alpha;
    for (auto q : early_out) early_alpha.push_back(cod[q]);
    const std::size_t nmarg = port_product(early_alpha);
    std::vector<std::size_t> row_to_marg(table.rows());
    std::vector<std::size_t> sub(early_out.size());
    for (std::size_t r = 0; r < table.rows(); ++r) {
      auto digits = decode_tuple(r, cod);
      for (std::size_t i = 0; i < early_out.size(); ++i)
        sub[i] = digits[early_out[i]];
      row_to_marg[r] = encode_tuple(sub, early_alpha);
    }
    std::vector<std::vector<Scalar>> marg(table.cols(),
                                          std::vector<Scalar>(nmarg));
    for (std::size_t r = 0; r < table.rows(); ++r)
      for (std::size_t c = 0; c < table.cols(); ++c)
        if (!table.at(r, c).is_zero()) marg[c][row_to_marg[r]] += table.at(r, c);

    for (std::size_t c = 0; c < table.cols(); ++c) {
      auto digits = decode_tuple(c, dom);
      auto ref_digits = digits;
      for (auto q : late_in) ref_digits[q] = 0;
      const std::size_t ref = encode_tuple(ref_digits, dom);
      if (ref == c) continue;
      for (std::size_t o = 0; o < nmarg; ++o) {
        if (abs(marg[c][o] - marg[ref][o]) > tol) {
          report.causal = false;
          report.round = round;
          report.column_a = ref_digits;
          report.column_b = digits;
          report.message = "outputs up to round " + std::to_string(round) +
                           " depend on later inputs: columns " +
                           show_digits(ref_digits) + " and " +
                           show_digits(digits) + " differ";
          return report;
        }
      }
    }
  }
  return report;
}

std::vector<RoundLayout> round_layout(const Signature& sig) {
  const auto strides = table_strides(sig);
  std::vector<RoundLayout> layout(sig.rounds());
  for (std::size_t round = 1; round <= sig.rounds(); ++round) {
    auto offsets = [&](const std::vector<std::size_t>& group, bool is_out) {
      std::vector<std::size_t> off{0};
      for (auto p : group) {
        if (sig.ports()[p].round != round) continue;
        const std::size_t stride = is_out
                                       ? strides.port_stride[p] / strides.cols
                                       : strides.port_stride[p];
        std::vector<std::size_t> next;
        for (auto base : off)
          for (std::size_t v = 0; v < sig.ports()[p].alphabet.size; ++v)
            next.push_back(base + v * stride);
        off = std::move(next);
      }
      return off;
    };
    layout[round - 1].x_off = offsets(sig.in_ports(), false);
    layout[round - 1].y_off = offsets(sig.out_ports(), true);
  }
  return layout;
}

// -------------------------------------------------------------- CombKernels

namespace {

Ports round_alphabets(const Signature& sig, std::size_t round, Direction dir) {
  Ports out;
  const auto& group = dir == Direction::In ? sig.in_ports() : sig.out_ports();
  for (auto p : group)
    if (sig.ports()[p].round == round) out.push_back(sig.ports()[p].alphabet);
  return out;
}

// Round-local input index of every full input column.
std::vector<std::vector<std::size_t>> local_inputs(const Signature& sig) {
  const auto layout = round_layout(sig);
  const std::size_t cols = port_product(sig.in_alphabets());
  std::vector<std::vector<std::size_t>> local(sig.rounds(),
                                              std::vector<std::size_t>(cols));
  // Walk every combination of per-round local indices; their offsets sum to
  // the column.
  std::vector<std::size_t> idx(sig.rounds(), 0);
  for (;;) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < sig.rounds(); ++i) c += layout[i].x_off[idx[i]];
    for (std::size_t i = 0; i < sig.rounds(); ++i) local[i][c] = idx[i];
    std::size_t d = sig.rounds();
    while (d-- > 0) {
      if (++idx[d] < layout[d].x_off.size()) break;
      idx[d] = 0;
    }
    if (d == SIZE_MAX) break;
  }
  return local;
}

}  // namespace

CombKernels CombKernels::make(Signature sig, std::vector<Alphabet> memory,
                              std::vector<Kernel> rounds) {
  const std::size_t k = sig.rounds();
  if (rounds.size() != k || memory.size() != k + 1)
    fail(ErrorCode::ChainMismatch, "need k kernels and k+1 memory alphabets");
  if (memory.front().size != 1 || memory.back().size != 1)
    fail(ErrorCode::ChainMismatch, "first and last memory must be trivial");
  for (std::size_t i = 1; i <= k; ++i) {
    Ports dom{memory[i - 1]};
    for (auto& a : round_alphabets(sig, i, Direction::In)) dom.push_back(a);
    Ports cod = round_alphabets(sig, i, Direction::Out);
    cod.push_back(memory[i]);
    if (rounds[i - 1].dom() != dom || rounds[i - 1].cod() != cod)
      fail(ErrorCode::ChainMismatch,
           "round " + std::to_string(i) + " kernel interface mismatch");
    rounds[i - 1].validate();
  }
  return CombKernels{std::move(sig), std::move(memory), std::move(rounds)};
}

Behavior flatten(const CombKernels& comb) {
  const auto& sig = comb.signature;
  const auto layout = round_layout(sig);
  const auto local = local_inputs(sig);
  const std::size_t rows = port_product(sig.out_alphabets());
  const std::size_t cols = port_product(sig.in_alphabets());
  std::vector<Scalar> out(rows * cols);
  for (std::size_t c = 0; c < cols; ++c) {
    // (row offset so far, memory value) -> probability
    std::map<std::pair<std::size_t, std::size_t>, Scalar> state{{{0, 0}, 1}};
    for (std::size_t i = 0; i < sig.rounds(); ++i) {
      const Kernel& f = comb.rounds[i];
      const std::size_t nx = layout[i].x_off.size();
      const std::size_t nm = comb.memory[i + 1].size;
      const std::size_t xl = local[i][c];
      std::map<std::pair<std::size_t, std::size_t>, Scalar> next;
      for (const auto& [key, p] : state) {
        const std::size_t col = key.second * nx + xl;
        for (std::size_t y = 0; y < layout[i].y_off.size(); ++y)
          for (std::size_t m = 0; m < nm; ++m) {
            const Scalar& v = f.at(y * nm + m, col);
            if (v.is_zero()) continue;
            next[{key.first + layout[i].y_off[y], m}] += p * v;
          }
      }
      state = std::move(next);
    }
    for (const auto& [key, p] : state) out[key.first * cols + c] += p;
  }
  return Behavior::trusted(
      sig, Kernel::trusted(sig.in_alphabets(), sig.out_alphabets(), std::move(out)));
}

CombKernels realize(const Behavior& b) {
  const auto& sig = b.signature();
  auto report = check_causal(b);
  if (!report.causal) fail(ErrorCode::NotCausal, report.message);
  const auto layout = round_layout(sig);
  const Kernel& table = b.table();
  const std::size_t k = sig.rounds();

  // prob[i][(x_<=i, y_<=i) transcript index] = P(y_<=i | x_<=i); transcript
  // index is mixed radix over rounds, each round contributing (x_i, y_i).
  std::vector<std::vector<Scalar>> prob(k + 1);
  prob[0] = {Scalar(1)};
  std::vector<std::size_t> tsize(k + 1, 1);
  for (std::size_t i = 0; i < k; ++i)
    tsize[i + 1] = tsize[i] * layout[i].x_off.size() * layout[i].y_off.size();
  // Enumerate full transcripts once and accumulate every prefix marginal at
  // the column whose later inputs are zero.
  for (std::size_t i = 1; i <= k; ++i) prob[i].assign(tsize[i], Scalar(0));
  {
    std::vector<std::size_t> xi(k, 0), yi(k, 0);
    for (;;) {
      std::size_t col = 0, row = 0;
      for (std::size_t r = 0; r < k; ++r) {
        col += layout[r].x_off[xi[r]];
        row += layout[r].y_off[yi[r]];
      }
      const Scalar& p = table.at(row, col);
      if (!p.is_zero()) {
        // Contribute to prefix i only when the inputs after i are zero.
        std::size_t t = 0;
        for (std::size_t i = 1; i <= k; ++i) {
          const std::size_t ny = layout[i - 1].y_off.size();
          t = (t * layout[i - 1].x_off.size() + xi[i - 1]) * ny + yi[i - 1];
          bool tail_zero = true;
          for (std::size_t r = i; r < k; ++r)
            if (xi[r] != 0) tail_zero = false;
          if (tail_zero) prob[i][t] += p;
        }
      }
      std::size_t d = 2 * k;
      bool done = true;
      while (d-- > 0) {
        auto& digit = d % 2 == 0 ? xi[d / 2] : yi[d / 2];
        const std::size_t lim = d % 2 == 0 ? layout[d / 2].x_off.size()
                                           : layout[d / 2].y_off.size();
        if (++digit < lim) {
          done = false;
          break;
        }
        digit = 0;
      }
      if (done) break;
    }
  }

  std::vector<Alphabet> memory{Alphabet::trivial()};
  for (std::size_t i = 1; i < k; ++i)
    memory.push_back(Alphabet{"M" + std::to_string(i), tsize[i], {}});
  memory.push_back(Alphabet::trivial());
  port_product(memory);

  std::vector<Kernel> kernels;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::size_t nx = layout[i - 1].x_off.size();
    const std::size_t ny = layout[i - 1].y_off.size();
    const std::size_t nm_in = memory[i - 1].size, nm_out = memory[i].size;
    const std::size_t rows = ny * nm_out, cols = nm_in * nx;
    std::vector<Scalar> data(rows * cols);
    for (std::size_t m = 0; m < nm_in; ++m)
      for (std::size_t x = 0; x < nx; ++x) {
        const std::size_t col = m * nx + x;
        const Scalar& denom = prob[i - 1][m];
        for (std::size_t y = 0; y < ny; ++y) {
          const std::size_t t = (m * nx + x) * ny + y;
          Scalar v = denom.is_zero()
                         ? Scalar::ratio(1, static_cast<long>(ny))
                         : prob[i][t] / denom;
          const std::size_t m_next = i < k ? t : 0;
          data[(y * nm_out + m_next) * cols + col] = std::move(v);
        }
      }
    Ports dom{memory[i - 1]};
    for (auto& a : round_alphabets(sig, i, Direction::In)) dom.push_back(a);
    Ports cod = round_alphabets(sig, i, Direction::Out);
    cod.push_back(memory[i]);
    kernels.push_back(Kernel::trusted(std::move(dom), std::move(cod), std::move(data)));
  }
  return CombKernels{sig, std::move(memory), std::move(kernels)};
}

// --------------------------------------------------------------------- link

namespace {

struct LinkPlan {
  Signature result;
  // Loop variables: result ports (flat order) then wires.
  std::vector<std::size_t> sizes, sa, sb, sr;
  std::size_t result_size = 1;
};

LinkPlan plan_link(const Signature& a, const Signature& b,
                   const std::vector<Wire>& wiring, const Schedule& schedule) {
  const Signature* sigs[2] = {&a, &b};
  std::vector<int> wired_a(a.ports().size(), -1), wired_b(b.ports().size(), -1);
  for (std::size_t w = 0; w < wiring.size(); ++w) {
    auto ia = a.find(wiring[w].a_port);
    auto ib = b.find(wiring[w].b_port);
    if (!ia || !ib)
      fail(ErrorCode::InterfaceMismatch,
           "unknown wired port '" + (!ia ? wiring[w].a_port : wiring[w].b_port) +
               "'");
    if (wired_a[*ia] >= 0 || wired_b[*ib] >= 0)
      fail(ErrorCode::InterfaceMismatch, "port wired twice");
    const auto& pa = a.ports()[*ia];
    const auto& pb = b.ports()[*ib];
    if (!(pa.alphabet == pb.alphabet))
      fail(ErrorCode::AlphabetMismatch,
           "'" + pa.id + "' (" + pa.alphabet.name + ") vs '" + pb.id + "' (" +
               pb.alphabet.name + ")");
    if (pa.direction == pb.direction)
      fail(ErrorCode::DirectionMismatch,
           "'" + pa.id + "' and '" + pb.id + "' have the same direction");
    wired_a[*ia] = static_cast<int>(w);
    wired_b[*ib] = static_cast<int>(w);
  }

  // Schedule validity.
  std::vector<std::size_t> pos_a(a.rounds() + 1, SIZE_MAX),
      pos_b(b.rounds() + 1, SIZE_MAX);
  if (schedule.size() != a.rounds() + b.rounds())
    fail(ErrorCode::AcausalSchedule, "schedule must list every round once");
  std::size_t last[2] = {0, 0};
  for (std::size_t t = 0; t < schedule.size(); ++t) {
    const auto& st = schedule[t];
    if (st.comb != 0 && st.comb != 1)
      fail(ErrorCode::AcausalSchedule, "bad comb index in schedule");
    auto& pos = st.comb == 0 ? pos_a : pos_b;
    if (st.round < 1 || st.round >= pos.size() || pos[st.round] != SIZE_MAX)
      fail(ErrorCode::AcausalSchedule, "schedule must list every round once");
    if (st.round <= last[st.comb])
      fail(ErrorCode::AcausalSchedule, "schedule reorders a comb's rounds");
    last[st.comb] = st.round;
    pos[st.round] = t;
  }
  for (const auto& w : wiring) {
    const auto& pa = a.port(w.a_port);
    const auto& pb = b.port(w.b_port);
    const std::size_t ta = pos_a[pa.round], tb = pos_b[pb.round];
    const bool ok = pa.direction == Direction::Out ? ta < tb : tb < ta;
    if (!ok)
      fail(ErrorCode::AcausalSchedule,
           "wire '" + w.a_port + "'-'" + w.b_port +
               "' is consumed before it is produced");
  }

  // Remaining ports in step order, inputs before outputs within a step, with
  // the coarsest round assignment that preserves the step order.
  struct Origin {
    int comb;
    std::size_t index;
  };
  std::vector<PortSpec> ports;
  std::vector<Origin> origin;
  std::size_t round = 1;
  bool has_out = false;
  std::set<std::string> ids;
  for (const auto& st : schedule) {
    const Signature& s = *sigs[st.comb];
    const auto& wired = st.comb == 0 ? wired_a : wired_b;
    for (Direction dir : {Direction::In, Direction::Out}) {
      for (std::size_t i = 0; i < s.ports().size(); ++i) {
        const auto& p = s.ports()[i];
        if (p.round != st.round || p.direction != dir || wired[i] >= 0) continue;
        if (dir == Direction::In && has_out) {
          ++round;
          has_out = false;
        }
        if (dir == Direction::Out) has_out = true;
        if (!ids.insert(p.id).second)
          fail(ErrorCode::InterfaceMismatch,
               "port id '" + p.id + "' occurs on both sides of a link");
        PortSpec q = p;
        q.round = round;
        ports.push_back(std::move(q));
        origin.push_back({st.comb, i});
      }
    }
  }
  std::vector<std::string> parties = a.parties();
  for (const auto& p : b.parties())
    if (std::find(parties.begin(), parties.end(), p) == parties.end())
      parties.push_back(p);

  LinkPlan plan;
  plan.result = Signature::make(std::move(parties), round, ports);
  const auto st_a = table_strides(a), st_b = table_strides(b),
             st_r = table_strides(plan.result);
  std::vector<std::size_t> order(plan.result.out_ports());
  order.insert(order.end(), plan.result.in_ports().begin(),
               plan.result.in_ports().end());
  for (auto p : order) {
    const auto& o = origin[p];
    plan.sizes.push_back(plan.result.ports()[p].alphabet.size);
    plan.sr.push_back(st_r.port_stride[p]);
    plan.sa.push_back(o.comb == 0 ? st_a.port_stride[o.index] : 0);
    plan.sb.push_back(o.comb == 1 ? st_b.port_stride[o.index] : 0);
  }
  plan.result_size = st_r.rows * st_r.cols;
  for (const auto& w : wiring) {
    const auto ia = *a.find(w.a_port), ib = *b.find(w.b_port);
    plan.sizes.push_back(a.ports()[ia].alphabet.size);
    plan.sr.push_back(0);
    plan.sa.push_back(st_a.port_stride[ia]);
    plan.sb.push_back(st_b.port_stride[ib]);
  }
  std::size_t work = 1;
  for (auto s : plan.sizes) {
    if (work > max_port_product() * 16 / s)
      fail(ErrorCode::SizeLimit, "link enumeration too large");
    work *= s;
  }
  return plan;
}

template <class Fn>
void for_each_assignment(const LinkPlan& plan, Fn&& fn) {
  const std::size_t n = plan.sizes.size();
  std::vector<std::size_t> digits(n, 0);
  std::size_t ia = 0, ib = 0, ir = 0;
  for (;;) {
    fn(ir, ia, ib);
    std::size_t d = n;
    for (;;) {
      if (d == 0) return;
      --d;
      if (++digits[d] < plan.sizes[d]) {
        ia += plan.sa[d];
        ib += plan.sb[d];
        ir += plan.sr[d];
        break;
      }
      const std::size_t back = plan.sizes[d] - 1;
      ia -= plan.sa[d] * back;
      ib -= plan.sb[d] * back;
      ir -= plan.sr[d] * back;
      digits[d] = 0;
    }
  }
}

void normalize(LinearForm& f) {
  std::sort(f.begin(), f.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  LinearForm out;
  for (auto& [v, c] : f) {
    if (!out.empty() && out.back().first == v)
      out.back().second += c;
    else
      out.emplace_back(v, std::move(c));
  }
  std::erase_if(out, [](const auto& t) { return t.second.is_zero(); });
  f = std::move(out);
}

}  // namespace

Behavior link(const Behavior& a, const Behavior& b,
              const std::vector<Wire>& wiring, const Schedule& schedule) {
  LinkPlan plan = plan_link(a.signature(), b.signature(), wiring, schedule);
  std::vector<Scalar> out(plan.result_size);
  const auto& da = a.table().data();
  const auto& db = b.table().data();
  for_each_assignment(plan, [&](std::size_t ir, std::size_t ia, std::size_t ib) {
    const Scalar& x = da[ia];
    if (x.is_zero()) return;
    const Scalar& y = db[ib];
    if (y.is_zero()) return;
    out[ir] += x * y;
  });
  const auto& sig = plan.result;
  return Behavior::trusted(
      sig, Kernel::trusted(sig.in_alphabets(), sig.out_alphabets(), std::move(out)));
}

Schedule infer_schedule(const Signature& a, const Signature& b,
                        const std::vector<Wire>& wiring) {
  // Nodes: a's rounds then b's rounds.
  const std::size_t na = a.rounds(), n = na + b.rounds();
  auto node = [&](int comb, std::size_t round) {
    return comb == 0 ? round - 1 : na + round - 1;
  };
  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<std::size_t> indeg(n, 0);
  auto edge = [&](std::size_t u, std::size_t v) {
    succ[u].push_back(v);
    ++indeg[v];
  };
  for (std::size_t r = 1; r < a.rounds(); ++r) edge(node(0, r), node(0, r + 1));
  for (std::size_t r = 1; r < b.rounds(); ++r) edge(node(1, r), node(1, r + 1));
  for (const auto& w : wiring) {
    auto ia = a.find(w.a_port);
    auto ib = b.find(w.b_port);
    if (!ia || !ib)
      fail(ErrorCode::InterfaceMismatch, "unknown wired port '" +
                                             (!ia ? w.a_port : w.b_port) + "'");
    const auto& pa = a.ports()[*ia];
    const auto& pb = b.ports()[*ib];
    if (pa.direction == pb.direction)
      fail(ErrorCode::DirectionMismatch,
           "'" + pa.id + "' and '" + pb.id + "' have the same direction");
    if (pa.direction == Direction::Out)
      edge(node(0, pa.round), node(1, pb.round));
    else
      edge(node(1, pb.round), node(0, pa.round));
  }
  // Kahn's algorithm; among ready nodes pick the smallest round, then a.
  Schedule schedule;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = SIZE_MAX;
    for (std::size_t v = 0; v < n; ++v) {
      if (done[v] || indeg[v] != 0) continue;
      auto key = [&](std::size_t u) {
        return std::pair{u < na ? u + 1 : u - na + 1, u < na ? 0 : 1};
      };
      if (pick == SIZE_MAX || key(v) < key(pick)) pick = v;
    }
    if (pick == SIZE_MAX)
      fail(ErrorCode::AcausalSchedule, "wiring creates a causal loop");
    done[pick] = true;
    for (auto v : succ[pick]) --indeg[v];
    schedule.push_back(pick < na ? Step{0, pick + 1} : Step{1, pick - na + 1});
  }
  return schedule;
}

Behavior link(const Behavior& a, const Behavior& b,
              const std::vector<Wire>& wiring) {
  return link(a, b, wiring, infer_schedule(a.signature(), b.signature(), wiring));
}

Signature link_signature(const Signature& a, const Signature& b,
                         const std::vector<Wire>& wiring,
                         const Schedule& schedule) {
  return plan_link(a, b, wiring, schedule).result;
}

Signature tensor_signature(const Signature& a, const Signature& b) {
  return link_signature(a, b, {}, sequential_schedule(a, b));
}

Schedule sequential_schedule(const Signature& a, const Signature& b) {
  Schedule s;
  for (std::size_t r = 1; r <= a.rounds(); ++r) s.push_back({0, r});
  for (std::size_t r = 1; r <= b.rounds(); ++r) s.push_back({1, r});
  return s;
}

Behavior tensor_behavior(const Behavior& a, const Behavior& b) {
  return link(a, b, {}, sequential_schedule(a.signature(), b.signature()));
}

Behavior tensor_behavior(const Behavior& a, const Behavior& b,
                         const Schedule& schedule) {
  return link(a, b, {}, schedule);
}

Behavior trivial_behavior() {
  return Behavior::trusted(Signature::make({}, 1, {}), Kernel());
}

Behavior identity_behavior(
    const std::vector<std::pair<PortSpec, PortSpec>>& ports) {
  std::vector<PortSpec> specs;
  Ports alpha;
  for (auto [in, out] : ports) {
    if (!(in.alphabet == out.alphabet))
      fail(ErrorCode::AlphabetMismatch, "identity ports differ in alphabet");
    in.direction = Direction::In;
    in.round = 1;
    specs.push_back(in);
    alpha.push_back(in.alphabet);
  }
  for (auto [in, out] : ports) {
    out.direction = Direction::Out;
    out.round = 1;
    specs.push_back(out);
  }
  auto sig = Signature::make({}, 1, std::move(specs));
  return Behavior::trusted(std::move(sig), identity(alpha));
}

Behavior discard_outputs(const Behavior& b, const std::vector<std::string>& ids) {
  const auto& sig = b.signature();
  std::set<std::string> drop(ids.begin(), ids.end());
  for (const auto& id : ids) {
    auto i = sig.find(id);
    if (!i || sig.ports()[*i].direction != Direction::Out)
      fail(ErrorCode::BadPortSelection, "'" + id + "' is not an output");
  }
  std::vector<std::size_t> keep;
  std::vector<PortSpec> ports;
  for (std::size_t q = 0; q < sig.out_ports().size(); ++q)
    if (!drop.count(sig.ports()[sig.out_ports()[q]].id)) keep.push_back(q);
  for (const auto& p : sig.ports())
    if (!drop.count(p.id)) ports.push_back(p);
  auto nsig = Signature::make(sig.parties(), sig.rounds(), std::move(ports));
  return Behavior::trusted(std::move(nsig), marginalize(b.table(), keep));
}

Behavior keep_outputs(const Behavior& b, const std::vector<std::string>& ids) {
  std::set<std::string> keep(ids.begin(), ids.end());
  std::vector<std::string> drop;
  for (auto q : b.signature().out_ports()) {
    const auto& id = b.signature().ports()[q].id;
    if (!keep.count(id)) drop.push_back(id);
  }
  return discard_outputs(b, drop);
}

Behavior rename_ports(
    const Behavior& b,
    const std::vector<std::pair<std::string, std::string>>& renames) {
  auto ports = b.signature().ports();
  for (const auto& [from, to] : renames) {
    auto i = b.signature().find(from);
    if (!i) fail(ErrorCode::BadPortSelection, "no port '" + from + "'");
    ports[*i].id = to;
  }
  auto sig = Signature::make(b.signature().parties(), b.signature().rounds(),
                             std::move(ports));
  return Behavior::trusted(std::move(sig), b.table());
}

Behavior prefix_ports(const Behavior& b, const std::string& prefix) {
  std::vector<std::pair<std::string, std::string>> r;
  for (const auto& p : b.signature().ports()) r.emplace_back(p.id, prefix + p.id);
  return rename_ports(b, r);
}

Behavior reassign_party(const Behavior& b, const std::string& from,
                        const std::string& to) {
  auto ports = b.signature().ports();
  for (auto& p : ports)
    if (p.party == from) p.party = to;
  auto parties = b.signature().parties();
  for (auto& p : parties)
    if (p == from) p = to;
  parties.erase(std::unique(parties.begin(), parties.end()), parties.end());
  auto sig = Signature::make(std::move(parties), b.signature().rounds(),
                             std::move(ports));
  return Behavior::trusted(std::move(sig), b.table());
}

Behavior conform(const Behavior& b, const Signature& sig) {
  auto data = permute_entries(b.table().data(), b.signature(), sig);
  Kernel table =
      Kernel::trusted(sig.in_alphabets(), sig.out_alphabets(), std::move(data));
  auto report = check_causal(sig, table);
  if (!report.causal) fail(ErrorCode::NotCausal, report.message);
  return Behavior::trusted(sig, std::move(table));
}

bool behavior_equal(const Behavior& a, const Behavior& b, const Scalar& tol) {
  if (!same_ports(a.signature(), b.signature()))
    fail(ErrorCode::SignatureMismatch, "behaviors have different ports");
  auto bd = permute_entries(b.table().data(), b.signature(), a.signature());
  const auto& ad = a.table().data();
  for (std::size_t i = 0; i < ad.size(); ++i)
    if (abs(ad[i] - bd[i]) > tol) return false;
  return true;
}

Scalar behavior_distance(const Behavior& a, const Behavior& b) {
  if (!same_ports(a.signature(), b.signature()))
    fail(ErrorCode::SignatureMismatch, "behaviors have different ports");
  const auto& sig = a.signature();
  const auto bd = permute_entries(b.table().data(), b.signature(), sig);
  {
    Kernel bt = Kernel::trusted(sig.in_alphabets(), sig.out_alphabets(), bd);
    if (!check_causal(sig, bt).causal)
      fail(ErrorCode::SignatureMismatch,
           "second behavior is not causal for the first one's rounds");
  }
  const auto& ad = a.table().data();
  const auto layout = round_layout(sig);
  const std::size_t cols = a.table().cols();
  const std::size_t k = sig.rounds();
  // V(i, prefix) = max over x_i of sum over y_i of V(i+1, extended prefix).
  auto value = [&](auto&& self, std::size_t i, std::size_t col,
                   std::size_t row) -> Scalar {
    if (i == k) return abs(ad[row * cols + col] - bd[row * cols + col]);
    Scalar best = -1;
    for (auto xo : layout[i].x_off) {
      Scalar s = 0;
      for (auto yo : layout[i].y_off) s += self(self, i + 1, col + xo, row + yo);
      best = max(best, s);
    }
    return best;
  };
  return value(value, 0, 0, 0) / Scalar(2);
}

// ------------------------------------------------------------------ linear

LinearBehavior unknown_behavior(const Signature& sig, std::size_t first_var) {
  const std::size_t n =
      port_product(sig.in_alphabets()) * port_product(sig.out_alphabets());
  LinearBehavior lb{sig, std::vector<LinearForm>(n)};
  for (std::size_t i = 0; i < n; ++i) lb.table[i] = {{first_var + i, Scalar(1)}};
  return lb;
}

LinearBehavior link(const LinearBehavior& a, const Behavior& b,
                    const std::vector<Wire>& wiring, const Schedule& schedule) {
  LinkPlan plan = plan_link(a.signature, b.signature(), wiring, schedule);
  std::vector<LinearForm> out(plan.result_size);
  const auto& db = b.table().data();
  for_each_assignment(plan, [&](std::size_t ir, std::size_t ia, std::size_t ib) {
    const Scalar& y = db[ib];
    if (y.is_zero()) return;
    for (const auto& [v, c] : a.table[ia]) out[ir].emplace_back(v, c * y);
  });
  for (auto& f : out) normalize(f);
  return LinearBehavior{plan.result, std::move(out)};
}

LinearBehavior link(const Behavior& a, const LinearBehavior& b,
                    const std::vector<Wire>& wiring, const Schedule& schedule) {
  LinkPlan plan = plan_link(a.signature(), b.signature, wiring, schedule);
  std::vector<LinearForm> out(plan.result_size);
  const auto& da = a.table().data();
  for_each_assignment(plan, [&](std::size_t ir, std::size_t ia, std::size_t ib) {
    const Scalar& x = da[ia];
    if (x.is_zero()) return;
    for (const auto& [v, c] : b.table[ib]) out[ir].emplace_back(v, x * c);
  });
  for (auto& f : out) normalize(f);
  return LinearBehavior{plan.result, std::move(out)};
}

LinearBehavior align(const LinearBehavior& b, const Signature& sig) {
  return LinearBehavior{sig, permute_entries(b.table, b.signature, sig)};
}

Behavior evaluate(const LinearBehavior& b, const std::vector<Scalar>& values) {
  std::vector<Scalar> data;
  data.reserve(b.table.size());
  for (const auto& f : b.table) {
    Scalar s = 0;
    for (const auto& [v, c] : f) s += c * values.at(v);
    data.push_back(std::move(s));
  }
  return Behavior::make(b.signature,
                        Kernel::make(b.signature.in_alphabets(),
                                     b.signature.out_alphabets(), std::move(data)));
}

}  // namespace catcrypt
