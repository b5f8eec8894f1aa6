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
#include <random>
#include <sstream>

#include "catcrypt/hopf.hpp"
#include "catcrypt/runner.hpp"
#include "support/gen.hpp"

using namespace catcrypt;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::filesystem::path> corpus() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(CATCRYPT_SPEC_DIR))
    if (e.path().extension() == ".spec") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

runner::Report run_text(const std::string& text, runner::RunOptions opts = {}) {
  return runner::run(spec::parse_spec(text), opts);
}

struct CapGuard {
  std::size_t saved = max_port_product();
  ~CapGuard() { set_max_port_product(saved); }
};

}  // namespace

TEST_CASE("the corpus verifies") {
  for (const auto& path : corpus()) {
    INFO(path.filename().string());
    const bool broken = path.stem() == "broken_group";
    auto ast = spec::parse_spec(slurp(path));
    runner::Report exact = runner::run(ast, {});
    CHECK(exact.exit_code() == (broken ? 1 : 0));
    CHECK(!exact.checks.empty());
    runner::Report approx = runner::run(ast, {true, 1e-9, 1});
    CHECK(approx.exit_code() == (broken ? 1 : 0));
  }
}

TEST_CASE("runner verdicts equal direct library calls") {
  std::mt19937 rng(12);
  for (int i = 0; i < 8; ++i) {
    const std::size_t n = gen::pick(rng, 2, 3);
    auto w = gen::distribution(rng, n, 3);
    std::string text = "group g cyclic " + std::to_string(n) + "\ninstance x otp g key";
    for (const auto& v : w) text += " " + v.str();
    text += "\ncheck epsilon x.protocol from x.real to x.target dishonest Eve\n";
    text += "check secure x.protocol from x.real to x.target dishonest Eve\n";
    runner::Report rep = run_text(text);
    REQUIRE(rep.checks.size() == 2);

    OtpInstance inst = build_otp(cyclic_group(n), w);
    SecurityReport eps = min_epsilon(inst.protocol, inst.real, inst.target, kEve);
    SecurityReport sec = search_simulator(inst.protocol, inst.real, inst.target, kEve);
    INFO(text);
    CHECK(rep.checks[0].verdict == eps.epsilon.str());
    CHECK(rep.checks[1].verdict == to_string(sec.verdict));
  }
}

TEST_CASE("unexpected verdicts fail the run") {
  auto rep = run_text("group g cyclic 2\ninstance x otp g key 1 0\n"
                      "check secure x.protocol from x.real to x.target dishonest Eve expect secure\n");
  REQUIRE(rep.checks.size() == 1);
  CHECK_FALSE(rep.checks[0].passed);
  CHECK(rep.checks[0].line == 3);
  CHECK(rep.exit_code() == 1);
}

TEST_CASE("reports are deterministic and ordered under parallel jobs") {
  auto ast = spec::parse_spec(slurp(std::filesystem::path(CATCRYPT_SPEC_DIR) / "otp_groups.spec"));
  const std::string one = runner::to_json(runner::run(ast, {}), false);
  CHECK(one == runner::to_json(runner::run(ast, {}), false));
  runner::Report par = runner::run(ast, {false, 1e-9, 4});
  CHECK(runner::to_json(par, false) == one);
  for (std::size_t i = 1; i < par.checks.size(); ++i)
    CHECK(par.checks[i - 1].line <= par.checks[i].line);
  auto j = nlohmann::json::parse(one);
  CHECK(j["schema"] == runner::kSchema);
  CHECK_FALSE(j.contains("meta"));
  CHECK(nlohmann::json::parse(runner::to_json(par, true)).contains("meta"));
}

TEST_CASE("size limits map to exit code 3") {
  CapGuard guard;
  set_max_port_product(64);
  auto rep = run_text(slurp(std::filesystem::path(CATCRYPT_SPEC_DIR) / "otp_groups.spec"));
  CHECK(rep.exit_code() == 3);
  bool any = false;
  for (const auto& c : rep.checks) any = any || c.resource_limit;
  CHECK(any);
}

TEST_CASE("digest is 64-bit FNV-1a") {
  // published test vectors
  CHECK(runner::digest({""}) == "fnv1a64:cbf29ce484222325");
  CHECK(runner::digest({"a"}) == "fnv1a64:af63dc4c8601ec8c");
  CHECK(runner::digest({"a", "b"}) != runner::digest({"ab"}));
}
