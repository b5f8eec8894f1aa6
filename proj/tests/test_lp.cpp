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

#include <functional>
#include <optional>
#include <random>

#include "catcrypt/error.hpp"
#include "catcrypt/lp.hpp"
#include "support/gen.hpp"

using namespace catcrypt;
using namespace catcrypt::lp;

namespace {

// Solves the square system M z = v by Gauss-Jordan over the rationals.
std::optional<std::vector<Scalar>> solve_square(std::vector<std::vector<Scalar>> M,
                                                std::vector<Scalar> v) {
  const std::size_t n = M.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && M[p][c].is_zero()) ++p;
    if (p == n) return std::nullopt;
    std::swap(M[p], M[c]);
    std::swap(v[p], v[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || M[r][c].is_zero()) continue;
      Scalar f = M[r][c] / M[c][c];
      for (std::size_t k = 0; k < n; ++k) M[r][k] -= f * M[c][k];
      v[r] -= f * v[c];
    }
  }
  std::vector<Scalar> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = v[i] / M[i][i];
  return z;
}

// Minimum of c.x over {A x = b, x >= 0} by enumerating basic solutions.
// Assumes A has full row rank and the program is bounded.
std::optional<Scalar> brute_min(const LinearProgram& lp) {
  const std::size_t m = lp.num_rows(), n = lp.num_vars;
  std::optional<Scalar> best;
  std::vector<std::size_t> pick(m);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t k, std::size_t from) {
    if (k == m) {
      std::vector<std::vector<Scalar>> M(m, std::vector<Scalar>(m));
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t j = 0; j < m; ++j) M[r][j] = lp.A[r][pick[j]];
      auto z = solve_square(M, lp.b);
      if (!z) return;
      Scalar obj = 0;
      for (std::size_t j = 0; j < m; ++j) {
        if ((*z)[j].sign() < 0) return;
        obj += (*lp.objective)[pick[j]] * (*z)[j];
      }
      if (!best || obj < *best) best = obj;
      return;
    }
    for (std::size_t j = from; j < n; ++j) {
      pick[k] = j;
      rec(k + 1, j + 1);
    }
  };
  rec(0, 0);
  return best;
}

LinearProgram random_program(std::mt19937& rng, std::size_t m, std::size_t n, bool feasible) {
  LinearProgram lp(n);
  std::uniform_int_distribution<long> coef(-3, 3), val(0, 3);
  std::vector<Scalar> x0(n);
  for (auto& x : x0) x = Scalar::ratio(val(rng), 1 + static_cast<long>(gen::pick(rng, 0, 2)));
  for (std::size_t r = 0; r < m; ++r) {
    std::vector<std::pair<std::size_t, Scalar>> row;
    Scalar rhs = 0;
    for (std::size_t j = 0; j < n; ++j) {
      Scalar a = Scalar(coef(rng));
      row.emplace_back(j, a);
      rhs += a * x0[j];
    }
    if (!feasible) rhs = Scalar(coef(rng));
    lp.add_row(row, rhs);
  }
  return lp;
}

}  // namespace

TEST_CASE("a two-variable program") {
  // x + y = 1, minimize x - y  ->  x = 0, y = 1, value -1
  LinearProgram lp(2);
  lp.add_row({{0, 1}, {1, 1}}, 1);
  lp.set_objective({{0, 1}, {1, -1}});
  auto out = minimize(lp);
  REQUIRE(std::holds_alternative<Optimal>(out));
  CHECK(std::get<Optimal>(out).value == Scalar(-1));
  CHECK(verify(out, lp));
}

TEST_CASE("infeasible programs come with a verified Farkas certificate") {
  // x + y = 1 and x + y = 2
  LinearProgram lp(2);
  lp.add_row({{0, 1}, {1, 1}}, 1);
  lp.add_row({{0, 1}, {1, 1}}, 2);
  auto out = solve_feasible(lp);
  REQUIRE(is_infeasible(out));
  CHECK(verify(std::get<Infeasible>(out).cert, lp));
  // the certificate is not a free pass for a different program
  LinearProgram ok(2);
  ok.add_row({{0, 1}, {1, 1}}, 1);
  ok.add_row({{0, 1}, {1, 1}}, 1);
  CHECK_FALSE(verify(std::get<Infeasible>(out).cert, ok));
}

TEST_CASE("negative right-hand side with nonnegative variables") {
  LinearProgram lp(1);
  lp.add_row({{0, 1}}, -1);
  auto out = solve_feasible(lp);
  REQUIRE(is_infeasible(out));
  CHECK(verify(out, lp));
}

TEST_CASE("free variables and lower bounds") {
  LinearProgram lp;
  auto x = lp.add_var(std::nullopt);
  auto y = lp.add_var(Scalar(2));
  lp.add_row({{x, 1}, {y, 1}}, 0);  // x = -y <= -2
  lp.set_objective({{y, 1}});
  auto out = minimize(lp);
  REQUIRE(std::holds_alternative<Optimal>(out));
  auto& opt = std::get<Optimal>(out);
  CHECK(opt.value == Scalar(2));
  CHECK(opt.point[x] == Scalar(-2));
}

TEST_CASE("unbounded programs return a ray") {
  LinearProgram lp(2);
  lp.add_row({{0, 1}, {1, -1}}, 0);  // x = y
  lp.set_objective({{0, -1}});
  auto out = minimize(lp);
  REQUIRE(std::holds_alternative<Unbounded>(out));
  CHECK(verify(out, lp));
}

TEST_CASE("randomized: every outcome verifies, optimum matches vertex enumeration") {
  std::mt19937 rng(21);
  int optimal = 0, infeasible = 0;
  for (int i = 0; i < 400; ++i) {
    const std::size_t m = gen::pick(rng, 1, 3), n = gen::pick(rng, m, 5);
    LinearProgram lp = random_program(rng, m, n, gen::coin(rng, 0.7));
    auto feas = solve_feasible(lp);
    CHECK(verify(feas, lp));
    // nonnegative objective keeps it bounded below on x >= 0
    std::vector<std::pair<std::size_t, Scalar>> obj;
    for (std::size_t j = 0; j < n; ++j) obj.emplace_back(j, Scalar(long(gen::pick(rng, 0, 4))));
    lp.set_objective(obj);
    auto out = minimize(lp);
    CHECK(verify(out, lp));
    if (is_infeasible(out)) {
      ++infeasible;
      CHECK(is_infeasible(feas));
      continue;
    }
    REQUIRE(std::holds_alternative<Optimal>(out));
    ++optimal;
    auto brute = brute_min(lp);
    if (brute) CHECK(std::get<Optimal>(out).value == *brute);
  }
  CHECK(optimal > 50);
  CHECK(infeasible > 20);
}

TEST_CASE("float mode agrees with exact mode within tolerance") {
  std::mt19937 rng(22);
  SolverOptions fl;
  fl.float_mode = true;
  for (int i = 0; i < 200; ++i) {
    LinearProgram lp = random_program(rng, 2, 4, gen::coin(rng, 0.7));
    lp.set_objective({{0, 1}, {1, 2}, {2, 1}, {3, 3}});
    auto ex = minimize(lp);
    auto fo = minimize(lp, fl);
    CHECK(ex.index() == fo.index());
    CHECK(verify(fo, lp));
    if (std::holds_alternative<Optimal>(ex) && std::holds_alternative<Optimal>(fo))
      CHECK(std::abs(std::get<Optimal>(ex).value.to_double() -
                     std::get<Optimal>(fo).value.to_double()) < 1e-9);
  }
}

TEST_CASE("tableau limit") {
  LinearProgram lp(50);
  for (int r = 0; r < 50; ++r) lp.add_row({{std::size_t(r), 1}}, 1);
  SolverOptions tiny;
  tiny.max_tableau_entries = 100;
  try {
    solve_feasible(lp, tiny);
    FAIL("expected ProblemTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ProblemTooLarge);
  }
}
