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


// catcrypt command line: batch verification of spec files plus a few
// inline checks.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "catcrypt/hopf.hpp"
#include "catcrypt/kernel.hpp"
#include "catcrypt/runner.hpp"
#include "catcrypt/spec_lang.hpp"

namespace {

using namespace catcrypt;

constexpr int kOk = 0;
constexpr int kUsage = 2;

struct Output {
  std::string json_path;
  bool no_meta = false;
  bool quiet = false;
};

int emit(const runner::Report& rep, const Output& out) {
  if (!out.quiet) std::cout << runner::render_text(rep);
  if (!out.json_path.empty()) {
    const std::string text = runner::to_json(rep, !out.no_meta);
    if (out.json_path == "-") {
      std::cout << text;
    } else {
      std::ofstream f(out.json_path, std::ios::binary);
      if (!f) {
        std::cerr << "catcrypt: cannot write " << out.json_path << "\n";
        return kUsage;
      }
      f << text;
    }
  }
  return rep.exit_code();
}

int run_text(const std::string& label, const std::string& text,
             const runner::RunOptions& opts, const Output& out) {
  spec::SpecFileAst ast;
  try {
    ast = spec::parse_spec(text);
  } catch (const spec::SpecError& e) {
    std::cerr << label << ":" << e.line() << ":" << e.column() << ": "
              << to_string(e.code()) << ": " << e.detail() << "\n";
    return kUsage;
  }
  runner::Report rep = runner::run(ast, opts);
  rep.file = label;
  return emit(rep, out);
}

// "cyclic:N" or "symmetric3" as a spec line declaring group g.
std::string group_line(const std::string& source) {
  FiniteGroup g = group_from_name(source);  // validates the source
  if (source.rfind("cyclic:", 0) == 0) return "group g cyclic " + std::to_string(g.order) + "\n";
  return "group g symmetric3\n";
}

void add_output(CLI::App* cmd, Output& out) {
  cmd->add_option("--json", out.json_path, "Write the JSON report here ('-' for stdout)");
  cmd->add_flag("--no-meta", out.no_meta, "Leave timings out of the JSON report");
  cmd->add_flag("-q,--quiet", out.quiet, "No text report");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"catcrypt: finite composable-security checks with exact certificates"};
  app.require_subcommand(1);

  runner::RunOptions opts;
  Output out;
  std::string mode = "rational";
  std::size_t max_entries = 0;

  std::string file;
  auto* verify = app.add_subcommand("verify", "Run every check in a spec file");
  verify->add_option("file", file, "Spec file")->required();
  verify->add_option("--mode", mode, "rational or float")
      ->check(CLI::IsMember({"rational", "float"}));
  verify->add_option("--tol", opts.tol, "Tolerance for float comparisons");
  verify->add_option("--jobs", opts.jobs, "Checks run in parallel")->check(CLI::Range(1u, 256u));
  verify->add_option("--max-entries", max_entries, "Cap on table entries (default 2^20)");
  add_output(verify, out);

  std::string group = "cyclic:2";
  std::string key;
  auto* axioms = app.add_subcommand("axioms", "Hopf axiom suite for a group");
  axioms->add_option("--group", group, "cyclic:N or symmetric3");
  add_output(axioms, out);

  auto* otp = app.add_subcommand("otp", "One-time pad correctness and security");
  otp->add_option("--group", group, "cyclic:N or symmetric3");
  otp->add_option("--key", key, "Key weights, comma separated (default uniform)");
  add_output(otp, out);

  std::string resource;
  std::string expect;
  bool advantage = false;
  auto* split = app.add_subcommand("split", "Two-party splitting test");
  split->add_option("--resource", resource,
                    "commitment, ot, identity_channel, shared_bit or mixture:LAMBDA")
      ->required();
  split->add_option("--expect", expect, "feasible or infeasible")
      ->check(CLI::IsMember({"feasible", "infeasible"}));
  split->add_flag("--advantage", advantage, "Also report the least splitting advantage");
  add_output(split, out);

  auto* broadcast = app.add_subcommand("broadcast", "Three-party splitting test");
  broadcast->add_option("--resource", resource, "broadcast, constant or product")
      ->required()
      ->check(CLI::IsMember({"broadcast", "constant", "product"}));
  broadcast->add_option("--expect", expect, "feasible or infeasible")
      ->check(CLI::IsMember({"feasible", "infeasible"}));
  add_output(broadcast, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  opts.float_mode = mode == "float";
  if (max_entries) set_max_port_product(max_entries);

  try {
    if (*verify) {
      std::ifstream f(file, std::ios::binary);
      if (!f) {
        std::cerr << "catcrypt: cannot read " << file << "\n";
        return kUsage;
      }
      std::stringstream buf;
      buf << f.rdbuf();
      return run_text(file, buf.str(), opts, out);
    }
    std::string text;
    std::string label;
    if (*axioms) {
      text = group_line(group) + "check axioms g\n";
      label = "axioms " + group;
    } else if (*otp) {
      std::string key_clause;
      if (!key.empty()) {
        std::string k = key;
        std::replace(k.begin(), k.end(), ',', ' ');
        key_clause = " key " + k;
      }
      text = group_line(group) + "instance o otp g" + key_clause + "\n" +
             "check correct o.protocol from o.real to o.target\n"
             "check secure o.protocol from o.real to o.target dishonest Eve sigma o.sigma\n"
             "check secure o.protocol from o.real to o.target dishonest Eve\n"
             "check epsilon o.protocol from o.real to o.target dishonest Eve\n";
      label = "otp " + group;
    } else if (*split) {
      std::string builtin = resource;
      if (auto colon = builtin.find(':'); colon != std::string::npos)
        builtin = builtin.substr(0, colon) + " " + builtin.substr(colon + 1);
      text = "resource r builtin " + builtin + "\ncheck split r" +
             (expect.empty() ? "" : " expect " + expect) +
             (advantage ? " advantage >= 0" : "") + "\n";
      label = "split " + resource;
    } else {
      text = "resource r builtin " + resource + "\ncheck broadcast r" +
             (expect.empty() ? "" : " expect " + expect) + "\n";
      label = "broadcast " + resource;
    }
    return run_text(label, text, opts, out);
  } catch (const Error& e) {
    std::cerr << "catcrypt: " << e.what() << "\n";
    return e.code() == ErrorCode::SizeLimit || e.code() == ErrorCode::ProblemTooLarge ? 3
                                                                                        : kUsage;
  }
}
