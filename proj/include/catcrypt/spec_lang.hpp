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

#include <string>
#include <string_view>
#include <vector>

#include "catcrypt/error.hpp"

namespace catcrypt::spec {

// Line-oriented description language. A statement is a keyword, a few
// positional words, then clauses introduced by reserved words:
//
//   alphabet bit size 2
//   group z3 cyclic 3
//   kernel flip dom bit cod bit rows 0 1 / 1 0
//   resource chan rounds 1 ports x:Alice:bit:in:1, y:Bob:bit:out:1 kernel id
//   check secure otp from real to ideal dishonest Eve expect secure
//
// '#' starts a comment, a trailing '\' continues the line, commas are
// separators.

struct Clause {
  std::string key;
  std::vector<std::string> values;
  int column = 0;
  std::vector<int> value_columns;
};

struct Decl {
  std::string keyword;
  std::vector<std::string> head;  // positional words after the keyword
  std::vector<Clause> clauses;
  int line = 0;
  std::vector<int> head_columns;

  const Clause* clause(std::string_view key) const;
  // Declared name, empty for checks.
  std::string name() const;
};

struct SpecFileAst {
  std::vector<Decl> decls;
};

// Carries the position of the first problem. message() has the
// "line:col: " prefix.
class SpecError : public Error {
 public:
  SpecError(ErrorCode code, int line, int column, const std::string& what)
      : Error(code, std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column),
        detail_(what) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  int line_;
  int column_;
  std::string detail_;
};

// Syntax plus name resolution. Throws SpecError with ParseError,
// UnresolvedName or DuplicateName.
SpecFileAst parse_spec(std::string_view text);

// One statement per line, single spaces, clauses in source order.
std::string print(const SpecFileAst& ast);

// Port text "id:party:alphabet:in|out:round" (resources) or
// "id:alphabet:in|out:round" (converters).
struct PortText {
  std::string id;
  std::string party;
  std::string alphabet;
  bool in = true;
  std::size_t round = 1;
};
PortText parse_port(const std::string& word, bool with_party);

}  // namespace catcrypt::spec
