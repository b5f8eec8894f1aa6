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


#include "catcrypt/spec_lang.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include "catcrypt/scalar.hpp"

namespace catcrypt::spec {
namespace {

struct Token {
  std::string text;
  int column = 0;
};

enum class Kind { Alphabet, Group, Kernel, Resource, Converter, Protocol, Claim };

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Alphabet: return "alphabet";
    case Kind::Group: return "group";
    case Kind::Kernel: return "kernel";
    case Kind::Resource: return "resource";
    case Kind::Converter: return "converter";
    case Kind::Protocol: return "protocol";
    case Kind::Claim: return "claim";
  }
  return "?";
}

const std::map<std::string, std::set<std::string>>& clause_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"alphabet", {"size", "labels"}},
      {"group", {"cyclic", "symmetric3", "table", "loop"}},
      {"kernel", {"dom", "cod", "rows", "generator", "compose", "tensor"}},
      {"resource", {"rounds", "ports", "kernel", "builtin", "tensor"}},
      {"converter", {"ports", "kernel", "wire"}},
      {"protocol", {"from", "to", "use"}},
      {"instance", {"otp", "key"}},
      {"claim", {"from", "to", "dishonest", "sigma"}},
      {"check", {"from", "to", "dishonest", "sigma", "expect", "advantage",
                 "samples", "seed", "expander"}},
  };
  return keys;
}

[[noreturn]] void parse_error(int line, int col, const std::string& what) {
  throw SpecError(ErrorCode::ParseError, line, col, what);
}

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
           c == '-';
  });
}

bool is_natural(const std::string& s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::size_t to_natural(const std::string& s) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    fail(ErrorCode::InvalidArgument, "bad natural '" + s + "'");
  return v;
}

bool is_number(const std::string& s) {
  try {
    Scalar::parse(s);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) &&
           line[j] != ',' && line[j] != '#')
      ++j;
    out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

// Physical lines joined on trailing backslash; keeps the first line number.
// Columns past the first physical line are approximate.
std::vector<std::pair<int, std::string>> logical_lines(std::string_view text) {
  std::vector<std::pair<int, std::string>> out;
  std::string pending;
  int start = 0;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (pending.empty()) start = line_no;
    auto last = raw.find_last_not_of(" \t");
    if (last != std::string::npos && raw[last] == '\\' &&
        raw.find('#') == std::string::npos) {
      pending += raw.substr(0, last) + " ";
      continue;
    }
    pending += raw;
    out.emplace_back(start, std::move(pending));
    pending.clear();
  }
  if (!pending.empty()) out.emplace_back(start, std::move(pending));
  return out;
}

Decl parse_line(int line, const std::vector<Token>& toks) {
  Decl d;
  d.line = line;
  d.keyword = toks[0].text;
  auto it = clause_keys().find(d.keyword);
  if (it == clause_keys().end())
    parse_error(line, toks[0].column,
                "expected a statement keyword (alphabet, group, kernel, resource, "
                "converter, protocol, instance, claim, check), got '" +
                    toks[0].text + "'");
  const auto& keys = it->second;
  std::size_t i = 1;
  for (; i < toks.size() && !keys.count(toks[i].text); ++i) {
    d.head.push_back(toks[i].text);
    d.head_columns.push_back(toks[i].column);
  }
  while (i < toks.size()) {
    Clause c{toks[i].text, {}, toks[i].column, {}};
    for (++i; i < toks.size() && !keys.count(toks[i].text); ++i) {
      c.values.push_back(toks[i].text);
      c.value_columns.push_back(toks[i].column);
    }
    for (const auto& prev : d.clauses)
      if (prev.key == c.key) parse_error(line, c.column, "clause '" + c.key + "' repeated");
    d.clauses.push_back(std::move(c));
  }
  return d;
}

// Validation and name resolution over the whole file.
class Checker {
 public:
  void run(const std::vector<Decl>& decls) {
    for (const auto& d : decls) statement(d);
  }

 private:
  std::map<std::string, std::pair<Kind, int>> names_;
  const Decl* cur_ = nullptr;

  [[noreturn]] void error(int col, const std::string& what) const {
    parse_error(cur_->line, col, what);
  }
  // Column of the first occurrence of `v` in the clause.
  static int vcol(const Clause& c, const std::string& v) {
    for (std::size_t i = 0; i < c.values.size() && i < c.value_columns.size(); ++i)
      if (c.values[i] == v) return c.value_columns[i];
    return c.column;
  }
  static int vcol(const Clause* c, const std::string& v) { return vcol(*c, v); }
  int hcol(std::size_t i) const {
    return i < cur_->head_columns.size() ? cur_->head_columns[i] : 1;
  }

  void define(const std::string& name, Kind k) {
    if (!is_identifier(name)) error(1, "expected a name, got '" + name + "'");
    if (auto it = names_.find(name); it != names_.end())
      throw SpecError(ErrorCode::DuplicateName, cur_->line, 1,
                      "'" + name + "' already declared on line " +
                          std::to_string(it->second.second));
    names_[name] = {k, cur_->line};
  }

  void use(const std::string& name, std::initializer_list<Kind> kinds, int column) {
    auto it = names_.find(name);
    std::string want;
    for (Kind k : kinds) want += std::string(want.empty() ? "" : " or ") + kind_name(k);
    if (it == names_.end())
      throw SpecError(ErrorCode::UnresolvedName, cur_->line, column,
                      "unknown " + want + " '" + name + "'");
    if (std::find(kinds.begin(), kinds.end(), it->second.first) == kinds.end())
      throw SpecError(ErrorCode::UnresolvedName, cur_->line, column,
                      "'" + name + "' is a " + kind_name(it->second.first) +
                          ", expected " + want);
  }

  void use_alphabet(const std::string& name, int column) {
    use(name, {Kind::Alphabet, Kind::Group}, column);
  }

  const Clause& need(const char* key) const {
    const Clause* c = cur_->clause(key);
    if (!c) error(1, std::string("expected clause '") + key + "'");
    return *c;
  }

  void only(std::initializer_list<const char*> allowed) const {
    for (const auto& c : cur_->clauses)
      if (std::none_of(allowed.begin(), allowed.end(),
                       [&](const char* k) { return c.key == k; }))
        error(c.column, "clause '" + c.key + "' not allowed here");
  }

  void arity(const Clause& c, std::size_t lo, std::size_t hi) const {
    if (c.values.size() < lo || c.values.size() > hi)
      error(c.column, "clause '" + c.key + "' expects " +
                          (lo == hi ? std::to_string(lo)
                                    : std::to_string(lo) + ".." +
                                          (hi == SIZE_MAX ? std::string("n")
                                                          : std::to_string(hi))) +
                          " values");
  }

  void head(std::size_t n) const {
    if (cur_->head.size() != n)
      error(1, cur_->keyword + " expects " + std::to_string(n) + " word(s) before its clauses");
  }

  void natural(const Clause& c, const std::string& v) const {
    if (!is_natural(v)) error(vcol(c, v), "expected a natural number, got '" + v + "'");
  }

  void number(const Clause& c, const std::string& v) const {
    if (!is_number(v)) error(vcol(c, v), "expected a number (p/q or decimal), got '" + v + "'");
  }

  void one_mode(std::initializer_list<const char*> modes) const {
    int found = 0;
    for (const char* m : modes) found += cur_->clause(m) != nullptr;
    if (found != 1) {
      std::string list;
      for (const char* m : modes) list += std::string(list.empty() ? "" : " | ") + m;
      error(1, "expected exactly one of: " + list);
    }
  }

  void statement(const Decl& d) {
    cur_ = &d;
    const std::string& k = d.keyword;
    if (k == "alphabet") return alphabet();
    if (k == "group") return group();
    if (k == "kernel") return kernel();
    if (k == "resource") return resource();
    if (k == "converter") return converter();
    if (k == "protocol") return protocol();
    if (k == "instance") return instance();
    if (k == "claim") return claim();
    return check();
  }

  void alphabet() {
    head(1);
    only({"size", "labels"});
    const Clause& s = need("size");
    arity(s, 1, 1);
    natural(s, s.values[0]);
    if (to_natural(s.values[0]) == 0) error(s.column, "alphabet size must be at least 1");
    if (const Clause* l = cur_->clause("labels"))
      arity(*l, to_natural(s.values[0]), to_natural(s.values[0]));
    define(cur_->head[0], Kind::Alphabet);
  }

  void group() {
    head(1);
    one_mode({"cyclic", "symmetric3", "table", "loop"});
    if (const Clause* c = cur_->clause("cyclic")) {
      arity(*c, 1, 1);
      natural(*c, c->values[0]);
      if (to_natural(c->values[0]) == 0) error(c->column, "cyclic order must be positive");
    }
    if (const Clause* c = cur_->clause("symmetric3")) arity(*c, 0, 0);
    for (const char* key : {"table", "loop"})
      if (const Clause* c = cur_->clause(key)) {
        arity(*c, 1, SIZE_MAX);
        for (const auto& v : c->values)
          if (v != "/") natural(*c, v);
      }
    define(cur_->head[0], Kind::Group);
  }

  void kernel() {
    head(1);
    if (cur_->clause("rows") || cur_->clause("dom") || cur_->clause("cod")) {
      only({"dom", "cod", "rows"});
      const Clause& dom = need("dom");
      const Clause& cod = need("cod");
      const Clause& rows = need("rows");
      for (const auto& v : dom.values) use_alphabet(v, vcol(dom, v));
      for (const auto& v : cod.values) use_alphabet(v, vcol(cod, v));
      arity(rows, 1, SIZE_MAX);
      for (const auto& v : rows.values)
        if (v != "/") number(rows, v);
    } else {
      one_mode({"generator", "compose", "tensor"});
      if (const Clause* g = cur_->clause("generator")) generator(*g);
      for (const char* key : {"compose", "tensor"})
        if (const Clause* c = cur_->clause(key)) {
          arity(*c, 1, SIZE_MAX);
          for (const auto& v : c->values) use(v, {Kind::Kernel}, vcol(*c, v));
        }
    }
    define(cur_->head[0], Kind::Kernel);
  }

  void generator(const Clause& g) {
    arity(g, 1, SIZE_MAX);
    const std::string& gen = g.values[0];
    const std::size_t n = g.values.size() - 1;
    auto args = [&](std::size_t from) {
      for (std::size_t i = from; i < g.values.size(); ++i) use_alphabet(g.values[i], vcol(g, g.values[i]));
    };
    if (gen == "mult" || gen == "inv" || gen == "unit" || gen == "counit") {
      if (n != 1) error(g.column, gen + " takes one group");
      use(g.values[1], {Kind::Group}, vcol(g, g.values[1]));
    } else if (gen == "identity" || gen == "uniform" || gen == "delete") {
      args(1);
    } else if (gen == "swap") {
      if (n != 2) error(g.column, "swap takes two alphabets");
      args(1);
    } else if (gen == "copy") {
      if (n < 1 || n > 2) error(g.column, "copy takes an alphabet and an optional count");
      use_alphabet(g.values[1], vcol(g, g.values[1]));
      if (n == 2) natural(g, g.values[2]);
    } else if (gen == "point") {
      if (n != 2) error(g.column, "point takes an alphabet and an element");
      use_alphabet(g.values[1], vcol(g, g.values[1]));
      natural(g, g.values[2]);
    } else {
      error(g.column, "unknown generator '" + gen +
                          "' (identity swap copy delete uniform point mult inv unit counit)");
    }
  }

  void ports(const Clause& c, bool with_party) {
    arity(c, 1, SIZE_MAX);
    for (const auto& v : c.values) {
      PortText p;
      try {
        p = parse_port(v, with_party);
      } catch (const Error& e) {
        error(vcol(c, v), e.what());
      }
      use_alphabet(p.alphabet, vcol(c, p.alphabet));
    }
  }

  void resource() {
    head(1);
    if (cur_->clause("rounds") || cur_->clause("ports") || cur_->clause("kernel")) {
      only({"rounds", "ports", "kernel"});
      const Clause& r = need("rounds");
      arity(r, 1, 1);
      natural(r, r.values[0]);
      ports(need("ports"), true);
      const Clause& k = need("kernel");
      arity(k, 1, 1);
      use(k.values[0], {Kind::Kernel}, vcol(k, k.values[0]));
    } else {
      one_mode({"builtin", "tensor"});
      if (const Clause* b = cur_->clause("builtin")) {
        arity(*b, 1, 2);
        static const std::set<std::string> known{
            "commitment", "ot", "identity_channel", "shared_bit", "mixture",
            "broadcast", "constant", "product"};
        if (!known.count(b->values[0]))
          error(b->column, "unknown builtin resource '" + b->values[0] + "'");
        if ((b->values[0] == "mixture") != (b->values.size() == 2))
          error(b->column, "only 'mixture' takes a parameter");
        if (b->values.size() == 2) number(*b, b->values[1]);
      }
      if (const Clause* t = cur_->clause("tensor")) {
        arity(*t, 2, 2);
        for (const auto& v : t->values) use(v, {Kind::Resource}, vcol(*t, v));
      }
    }
    define(cur_->head[0], Kind::Resource);
  }

  void converter() {
    head(2);
    only({"ports", "kernel", "wire"});
    ports(need("ports"), false);
    const Clause& k = need("kernel");
    arity(k, 1, 1);
    use(k.values[0], {Kind::Kernel}, vcol(k, k.values[0]));
    if (const Clause* w = cur_->clause("wire"))
      for (const auto& v : w->values) {
        auto eq = v.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == v.size())
          error(w->column, "expected 'port=resource_port', got '" + v + "'");
      }
    define(cur_->head[1], Kind::Converter);
  }

  void from_to(bool required) {
    for (const char* key : {"from", "to"}) {
      const Clause* c = cur_->clause(key);
      if (!c) {
        if (required) need(key);
        continue;
      }
      arity(*c, 1, 1);
      use(c->values[0], {Kind::Resource}, vcol(*c, c->values[0]));
    }
  }

  void dishonest() {
    const Clause& c = need("dishonest");
    arity(c, 1, SIZE_MAX);
  }

  void protocol() {
    head(1);
    only({"from", "to", "use"});
    from_to(true);
    const Clause& u = need("use");
    for (const auto& v : u.values) use(v, {Kind::Converter}, vcol(u, v));
    define(cur_->head[0], Kind::Protocol);
  }

  void instance() {
    head(1);
    only({"otp", "key"});
    const Clause& g = need("otp");
    arity(g, 1, 1);
    use(g.values[0], {Kind::Group}, vcol(g, g.values[0]));
    if (const Clause* k = cur_->clause("key")) {
      arity(*k, 1, SIZE_MAX);
      for (const auto& v : k->values) number(*k, v);
    }
    const std::string& n = cur_->head[0];
    define(n, Kind::Claim);  // reserves the prefix
    names_.erase(n);
    for (const char* part : {".key", ".channel", ".real", ".target", ".sigma"})
      define(n + part, Kind::Resource);
    define(n + ".protocol", Kind::Protocol);
  }

  void claim() {
    head(2);
    only({"from", "to", "dishonest", "sigma"});
    use(cur_->head[1], {Kind::Protocol}, hcol(1));
    from_to(true);
    dishonest();
    const Clause& s = need("sigma");
    arity(s, 1, 1);
    use(s.values[0], {Kind::Resource}, vcol(s, s.values[0]));
    define(cur_->head[0], Kind::Claim);
  }

  void expect_words(std::initializer_list<const char*> words) const {
    const Clause* e = cur_->clause("expect");
    if (!e) return;
    arity(*e, 1, 1);
    if (std::none_of(words.begin(), words.end(),
                     [&](const char* w) { return e->values[0] == w; })) {
      std::string list;
      for (const char* w : words) list += std::string(list.empty() ? "" : " | ") + w;
      error(e->column, "expected " + list + ", got '" + e->values[0] + "'");
    }
  }

  void expect_number() const {
    if (const Clause* e = cur_->clause("expect")) {
      arity(*e, 1, 1);
      number(*e, e->values[0]);
    }
  }

  void check() {
    const auto& h = cur_->head;
    if (h.empty()) error(1, "expected a check kind");
    const std::string& kind = h[0];
    auto subject = [&](Kind k) {
      head(2);
      use(h[1], {k}, hcol(1));
    };
    if (kind == "axioms") {
      subject(Kind::Group);
      only({"expect"});
      expect_words({"pass", "fail"});
    } else if (kind == "correct") {
      subject(Kind::Protocol);
      only({"from", "to", "expect"});
      from_to(true);
      expect_words({"pass", "fail"});
    } else if (kind == "secure") {
      subject(Kind::Protocol);
      only({"from", "to", "dishonest", "sigma", "expect"});
      from_to(true);
      dishonest();
      if (const Clause* s = cur_->clause("sigma")) {
        arity(*s, 1, 1);
        use(s->values[0], {Kind::Resource}, vcol(*s, s->values[0]));
      }
      expect_words({"secure", "insecure"});
    } else if (kind == "epsilon") {
      subject(Kind::Protocol);
      only({"from", "to", "dishonest", "expect"});
      from_to(true);
      dishonest();
      expect_number();
    } else if (kind == "compose") {
      head(4);
      if (h[1] != "sequential" && h[1] != "parallel")
        error(hcol(1), "expected sequential | parallel, got '" + h[1] + "'");
      use(h[2], {Kind::Claim}, hcol(2));
      use(h[3], {Kind::Claim}, hcol(3));
      only({"expect"});
      expect_number();
    } else if (kind == "stream") {
      subject(Kind::Group);
      only({"expander", "expect"});
      const Clause& x = need("expander");
      arity(x, 1, 1);
      use(x.values[0], {Kind::Kernel}, vcol(x, x.values[0]));
      expect_number();
    } else if (kind == "dummy" || kind == "lift") {
      subject(Kind::Protocol);
      if (kind == "dummy")
        only({"from", "to", "dishonest", "samples", "seed"});
      else
        only({"from", "to", "dishonest"});
      from_to(true);
      dishonest();
      for (const char* key : {"samples", "seed"})
        if (const Clause* c = cur_->clause(key)) {
          arity(*c, 1, 1);
          natural(*c, c->values[0]);
        }
    } else if (kind == "split") {
      subject(Kind::Resource);
      only({"expect", "advantage"});
      expect_words({"feasible", "infeasible"});
      if (const Clause* a = cur_->clause("advantage")) {
        arity(*a, 1, 2);
        if (a->values.size() == 2 && a->values[0] != ">=")
          error(a->column, "expected 'advantage VALUE' or 'advantage >= VALUE'");
        number(*a, a->values.back());
      }
    } else if (kind == "broadcast") {
      subject(Kind::Resource);
      only({"expect"});
      expect_words({"feasible", "infeasible"});
    } else {
      error(hcol(0), "unknown check '" + kind +
                   "' (axioms correct secure epsilon compose stream dummy lift split broadcast)");
    }
  }
};

}  // namespace

const Clause* Decl::clause(std::string_view key) const {
  for (const auto& c : clauses)
    if (c.key == key) return &c;
  return nullptr;
}

std::string Decl::name() const {
  if (keyword == "check" || head.empty()) return {};
  return keyword == "converter" && head.size() > 1 ? head[1] : head[0];
}

PortText parse_port(const std::string& word, bool with_party) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= word.size(); ++i)
    if (i == word.size() || word[i] == ':') {
      parts.push_back(word.substr(start, i - start));
      start = i + 1;
    }
  const std::size_t want = with_party ? 5 : 4;
  const char* shape = with_party ? "id:party:alphabet:in|out:round" : "id:alphabet:in|out:round";
  if (parts.size() != want || std::any_of(parts.begin(), parts.end(),
                                          [](const auto& p) { return p.empty(); }))
    fail(ErrorCode::ParseError, "expected port '" + std::string(shape) + "', got '" + word + "'");
  PortText p;
  std::size_t i = 0;
  p.id = parts[i++];
  if (with_party) p.party = parts[i++];
  p.alphabet = parts[i++];
  const std::string& dir = parts[i++];
  if (dir != "in" && dir != "out")
    fail(ErrorCode::ParseError, "port direction must be in or out, got '" + dir + "'");
  p.in = dir == "in";
  if (!is_natural(parts[i]) || to_natural(parts[i]) == 0)
    fail(ErrorCode::ParseError, "port round must be a positive integer, got '" + parts[i] + "'");
  p.round = to_natural(parts[i]);
  return p;
}

SpecFileAst parse_spec(std::string_view text) {
  SpecFileAst ast;
  for (const auto& [line, body] : logical_lines(text)) {
    auto toks = tokenize(body);
    if (toks.empty()) continue;
    ast.decls.push_back(parse_line(line, toks));
  }
  Checker{}.run(ast.decls);
  return ast;
}

std::string print(const SpecFileAst& ast) {
  std::string out;
  for (const auto& d : ast.decls) {
    out += d.keyword;
    for (const auto& h : d.head) out += " " + h;
    for (const auto& c : d.clauses) {
      out += " " + c.key;
      for (const auto& v : c.values) out += " " + v;
    }
    out += "\n";
  }
  return out;
}

}  // namespace catcrypt::spec
