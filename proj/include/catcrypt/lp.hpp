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

#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "catcrypt/scalar.hpp"

namespace catcrypt::lp {

// Equality-form program: A x = b, x_j >= lower_j (nullopt = free variable),
// with an optional objective to minimize. Inequalities are the caller's job
// (add a slack column).
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<std::vector<Scalar>> A;
  std::vector<Scalar> b;
  std::vector<std::optional<Scalar>> lower;
  std::optional<std::vector<Scalar>> objective;

  explicit LinearProgram(std::size_t n = 0)
      : num_vars(n), lower(n, Scalar(0)) {}

  std::size_t num_rows() const { return A.size(); }
  std::size_t add_var(std::optional<Scalar> lb = Scalar(0));
  void add_row(const std::vector<std::pair<std::size_t, Scalar>>& terms,
               Scalar rhs);
  void set_objective(const std::vector<std::pair<std::size_t, Scalar>>& terms);
  bool is_exact() const;
};

// y^T A <= 0 componentwise (= 0 on free columns) and y^T (b - A l) > 0:
// no x >= l can satisfy A x = b.
struct FarkasCert {
  std::vector<Scalar> y;
};

struct Feasible {
  std::vector<Scalar> point;
};
struct Optimal {
  std::vector<Scalar> point;
  Scalar value;
};
struct Infeasible {
  FarkasCert cert;
};
// A feasible point plus a recession direction along which the objective
// decreases without bound.
struct Unbounded {
  std::vector<Scalar> point;
  std::vector<Scalar> ray;
};

using LpOutcome = std::variant<Feasible, Optimal, Infeasible, Unbounded>;

struct SolverOptions {
  // Solve in binary64 even if the data is exact.
  bool float_mode = false;
  double pivot_tol = 1e-12;
  std::size_t max_tableau_entries = std::size_t{1} << 24;
};

inline constexpr double kTolLp = 1e-8;

LpOutcome solve_feasible(const LinearProgram& lp, const SolverOptions& opts = {});
LpOutcome minimize(const LinearProgram& lp, const SolverOptions& opts = {});

// Re-checks a point, certificate or ray against the raw data. Exact when the
// outcome and program are exact, otherwise within kTolLp.
bool verify(const LpOutcome& outcome, const LinearProgram& lp);
bool verify(const FarkasCert& cert, const LinearProgram& lp);

inline bool is_infeasible(const LpOutcome& o) {
  return std::holds_alternative<Infeasible>(o);
}

}  // namespace catcrypt::lp
