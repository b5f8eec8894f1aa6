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

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "catcrypt/spec_lang.hpp"

namespace catcrypt::runner {

inline constexpr const char* kSchema = "catcrypt.report/1";

struct RunOptions {
  bool float_mode = false;
  double tol = 1e-9;  // float comparisons only
  unsigned jobs = 1;
};

struct CheckResult {
  int line = 0;
  std::string kind;
  std::string subject;
  std::string verdict;   // what the library said
  std::string expected;
  bool passed = false;
  bool error = false;          // the check threw
  bool resource_limit = false;  // SizeLimit or ProblemTooLarge
  std::string detail;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();
  double wall_ms = 0;
};

struct Report {
  std::string file;
  RunOptions options;
  std::vector<CheckResult> checks;
  double wall_ms = 0;

  std::size_t passed() const;
  // 0 ok, 1 some check failed, 3 some check hit a size limit.
  int exit_code() const;
};

Report run(const spec::SpecFileAst& ast, const RunOptions& opts);

// meta = false drops timings so equal inputs give equal bytes.
std::string to_json(const Report& r, bool meta);
std::string render_text(const Report& r);

// FNV-1a over the given strings, separated by ','.
std::string digest(const std::vector<std::string>& parts);

}  // namespace catcrypt::runner
