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


#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "catcrypt/spec_lang.hpp"

using namespace catcrypt;
using namespace catcrypt::spec;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SpecError error_of(std::string_view text) {
  try {
    parse_spec(text);
  } catch (const SpecError& e) {
    return e;
  }
  FAIL("no error for: " << text);
  return SpecError(ErrorCode::InvalidArgument, 0, 0, "");
}

bool same_decls(const SpecFileAst& a, const SpecFileAst& b) {
  if (a.decls.size() != b.decls.size()) return false;
  for (std::size_t i = 0; i < a.decls.size(); ++i) {
    const Decl &x = a.decls[i], &y = b.decls[i];
    if (x.keyword != y.keyword || x.head != y.head || x.clauses.size() != y.clauses.size())
      return false;
    for (std::size_t j = 0; j < x.clauses.size(); ++j)
      if (x.clauses[j].key != y.clauses[j].key || x.clauses[j].values != y.clauses[j].values)
        return false;
  }
  return true;
}

}  // namespace

TEST_CASE("two statements, two declarations") {
  auto ast = parse_spec("group z3 cyclic 3\ncheck axioms z3\n");
  REQUIRE(ast.decls.size() == 2);
  CHECK(ast.decls[0].keyword == "group");
  CHECK(ast.decls[0].name() == "z3");
  CHECK(ast.decls[0].head == std::vector<std::string>{"z3"});
  REQUIRE(ast.decls[0].clause("cyclic"));
  CHECK(ast.decls[0].clause("cyclic")->values == std::vector<std::string>{"3"});
  CHECK(ast.decls[1].keyword == "check");
  CHECK(ast.decls[1].name().empty());
  CHECK(ast.decls[1].line == 2);
}

TEST_CASE("comments, continuations and commas") {
  auto ast = parse_spec(
      "# header\n"
      "alphabet bit size 2   # trailing\n"
      "kernel flip dom bit cod bit \\\n"
      "  rows 0 1 / 1 0\n"
      "resource r rounds 1 ports x:A:bit:in:1, y:B:bit:out:1 kernel flip\n");
  REQUIRE(ast.decls.size() == 3);
  const Clause* rows = ast.decls[1].clause("rows");
  REQUIRE(rows);
  CHECK(rows->values == std::vector<std::string>{"0", "1", "/", "1", "0"});
  const Clause* ports = ast.decls[2].clause("ports");
  REQUIRE(ports);
  CHECK(ports->values.size() == 2);
  CHECK(ast.decls[2].line == 5);
}

TEST_CASE("port words") {
  PortText p = parse_port("m:Alice:z3:in:2", true);
  CHECK(p.id == "m");
  CHECK(p.party == "Alice");
  CHECK(p.alphabet == "z3");
  CHECK(p.in);
  CHECK(p.round == 2);
  PortText q = parse_port("c:z3:out:1", false);
  CHECK(q.party.empty());
  CHECK_FALSE(q.in);
  CHECK_THROWS_AS(parse_port("c:z3:sideways:1", false), Error);
  CHECK_THROWS_AS(parse_port("c:z3:out", false), Error);
}

TEST_CASE("unknown names are reported where they are used") {
  SpecError e = error_of("group z3 cyclic 3\n\ncheck axioms z4\n");
  CHECK(e.code() == ErrorCode::UnresolvedName);
  CHECK(e.line() == 3);
  CHECK(e.column() == 14);
}

TEST_CASE("names are declared once") {
  SpecError e = error_of("group g cyclic 3\nalphabet g size 2\n");
  CHECK(e.code() == ErrorCode::DuplicateName);
  CHECK(e.line() == 2);
}

TEST_CASE("syntax errors carry a position") {
  SpecError bad_word = error_of("group z3 cyclic 3\nfrobnicate z3\n");
  CHECK(bad_word.code() == ErrorCode::ParseError);
  CHECK(bad_word.line() == 2);
  CHECK(bad_word.column() == 1);

  SpecError bad_number = error_of("alphabet a size two\n");
  CHECK(bad_number.code() == ErrorCode::ParseError);
  CHECK(bad_number.line() == 1);
  CHECK(bad_number.column() == 17);

  CHECK(error_of("check axioms\n").code() == ErrorCode::ParseError);
}

TEST_CASE("printing round-trips the corpus") {
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(CATCRYPT_SPEC_DIR)) {
    if (entry.path().extension() != ".spec") continue;
    ++files;
    INFO(entry.path().filename().string());
    SpecFileAst ast = parse_spec(slurp(entry.path()));
    const std::string once = print(ast);
    SpecFileAst again = parse_spec(once);
    CHECK(same_decls(ast, again));
    CHECK(print(again) == once);
  }
  CHECK(files >= 6);
}
