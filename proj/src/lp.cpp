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

#include "catcrypt/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "catcrypt/error.hpp"

namespace catcrypt::lp {

std::size_t LinearProgram::add_var(std::optional<Scalar> lb) {
  lower.push_back(std::move(lb));
  for (auto& row : A) row.emplace_back(0);
  if (objective) objective->emplace_back(0);
  return num_vars++;
}

void LinearProgram::add_row(
    const std::vector<std::pair<std::size_t, Scalar>>& terms, Scalar rhs) {
  std::vector<Scalar> row(num_vars);
  for (const auto& [j, c] : terms) {
    if (j >= num_vars) fail(ErrorCode::DimensionMismatch, "column out of range");
    row[j] += c;
  }
  A.push_back(std::move(row));
  b.push_back(std::move(rhs));
}

void LinearProgram::set_objective(
    const std::vector<std::pair<std::size_t, Scalar>>& terms) {
  std::vector<Scalar> c(num_vars);
  for (const auto& [j, v] : terms) {
    if (j >= num_vars) fail(ErrorCode::DimensionMismatch, "column out of range");
    c[j] += v;
  }
  objective = std::move(c);
}

bool LinearProgram::is_exact() const {
  auto exact = [](const Scalar& s) { return s.is_exact(); };
  for (const auto& row : A)
    if (!std::all_of(row.begin(), row.end(), exact)) return false;
  if (!std::all_of(b.begin(), b.end(), exact)) return false;
  for (const auto& l : lower)
    if (l && !l->is_exact()) return false;
  if (objective && !std::all_of(objective->begin(), objective->end(), exact))
    return false;
  return true;
}

namespace {

void check_dimensions(const LinearProgram& lp) {
  if (lp.b.size() != lp.A.size())
    fail(ErrorCode::DimensionMismatch, "rhs length differs from row count");
  if (lp.lower.size() != lp.num_vars)
    fail(ErrorCode::DimensionMismatch, "bound count differs from num_vars");
  for (const auto& row : lp.A)
    if (row.size() != lp.num_vars)
      fail(ErrorCode::DimensionMismatch, "row length differs from num_vars");
  if (lp.objective && lp.objective->size() != lp.num_vars)
    fail(ErrorCode::DimensionMismatch, "objective length differs");
}

template <class T>
struct Num;

template <>
struct Num<Rational> {
  static Rational from(const Scalar& s) { return s.rational(); }
  static Scalar to(const Rational& v) { return Scalar(v); }
  static int sign(const Rational& v, double) { return sgn(v); }
};

template <>
struct Num<double> {
  static double from(const Scalar& s) { return s.to_double(); }
  static Scalar to(double v) { return Scalar::from_double(v); }
  static int sign(double v, double tol) { return (v > tol) - (v < -tol); }
};

// Dense two-phase tableau simplex with Bland's rule.
template <class T>
class Simplex {
 public:
  Simplex(const LinearProgram& lp, const SolverOptions& opts)
      : lp_(lp), tol_(opts.pivot_tol) {
    m_ = lp.num_rows();
    // Standard columns: shifted bounded vars, then split free vars.
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
      plus_col_.push_back(n_++);
      minus_col_.push_back(lp.lower[j] ? SIZE_MAX : n_++);
    }
    width_ = n_ + m_ + 1;
    if (m_ * width_ > opts.max_tableau_entries)
      fail(ErrorCode::ProblemTooLarge,
           "tableau " + std::to_string(m_) + "x" + std::to_string(width_) +
               " exceeds cap");
    tab_.assign(m_ * width_, T(0));
    sign_.assign(m_, 1);
    for (std::size_t i = 0; i < m_; ++i) {
      T rhs = Num<T>::from(lp.b[i]);
      for (std::size_t j = 0; j < lp.num_vars; ++j) {
        T a = Num<T>::from(lp.A[i][j]);
        if (a == T(0)) continue;
        if (lp.lower[j]) rhs -= a * Num<T>::from(*lp.lower[j]);
        at(i, plus_col_[j]) = a;
        if (minus_col_[j] != SIZE_MAX) at(i, minus_col_[j]) = -a;
      }
      if (Num<T>::sign(rhs, 0) < 0) {
        sign_[i] = -1;
        rhs = -rhs;
        for (std::size_t c = 0; c < n_; ++c) at(i, c) = -at(i, c);
      }
      at(i, n_ + i) = T(1);
      at(i, width_ - 1) = rhs;
    }
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) basis_[i] = n_ + i;
  }

  // Returns true iff feasible.
  bool phase_one() {
    obj_.assign(width_, T(0));
    for (std::size_t i = 0; i < m_; ++i) obj_[n_ + i] = T(1);
    price_out();
    run(width_ - 1);
    if (sign(-obj_[width_ - 1]) > 0) return false;
    drive_out_artificials();
    return true;
  }

  // Returns false when unbounded.
  bool phase_two(const std::vector<Scalar>& cost) {
    obj_.assign(width_, T(0));
    cost_.assign(n_, T(0));
    for (std::size_t j = 0; j < lp_.num_vars; ++j) {
      T c = Num<T>::from(cost[j]);
      cost_[plus_col_[j]] = c;
      if (minus_col_[j] != SIZE_MAX) cost_[minus_col_[j]] = -c;
    }
    for (std::size_t j = 0; j < n_; ++j) obj_[j] = cost_[j];
    price_out();
    return run(n_);
  }

  std::vector<Scalar> point() const {
    std::vector<T> std_x(n_ + m_, T(0));
    for (std::size_t i = 0; i < m_; ++i) std_x[basis_[i]] = at(i, width_ - 1);
    return to_original(std_x, true);
  }

  std::vector<Scalar> ray() const {
    std::vector<T> d(n_ + m_, T(0));
    d[unbounded_col_] = T(1);
    for (std::size_t i = 0; i < m_; ++i)
      d[basis_[i]] -= at(i, unbounded_col_);
    return to_original(d, false);
  }

  Scalar objective_value(const std::vector<Scalar>& cost,
                         const std::vector<Scalar>& x) const {
    Scalar v = 0;
    for (std::size_t j = 0; j < x.size(); ++j) v += cost[j] * x[j];
    return v;
  }

  FarkasCert farkas() const {
    // Phase-one duals: y_i = 1 - reduced cost of artificial i, mapped back
    // through the row sign flips.
    FarkasCert cert;
    for (std::size_t i = 0; i < m_; ++i) {
      T y = T(1) - obj_[n_ + i];
      if (sign_[i] < 0) y = -y;
      cert.y.push_back(Num<T>::to(y));
    }
    return cert;
  }

 private:
  T& at(std::size_t i, std::size_t j) { return tab_[i * width_ + j]; }
  const T& at(std::size_t i, std::size_t j) const { return tab_[i * width_ + j]; }
  int sign(const T& v) const { return Num<T>::sign(v, tol_); }

  void price_out() {
    for (std::size_t i = 0; i < m_; ++i) {
      T cb = obj_[basis_[i]];
      if (cb == T(0)) continue;
      for (std::size_t j = 0; j < width_; ++j)
        if (at(i, j) != T(0)) obj_[j] -= cb * at(i, j);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    T inv = T(1) / at(r, c);
    for (std::size_t j = 0; j < width_; ++j)
      if (at(r, j) != T(0)) at(r, j) *= inv;
    at(r, c) = T(1);
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < width_; ++j)
      if (at(r, j) != T(0)) nz.push_back(j);
    auto eliminate = [&](T* row) {
      T f = row[c];
      if (f == T(0)) return;
      for (std::size_t j : nz) row[j] -= f * at(r, j);
      row[c] = T(0);
    };
    for (std::size_t i = 0; i < m_; ++i)
      if (i != r) eliminate(&tab_[i * width_]);
    eliminate(obj_.data());
    basis_[r] = c;
  }

  // Bland's rule over columns [0, limit). Returns false when unbounded.
  bool run(std::size_t limit) {
    for (;;) {
      std::size_t enter = SIZE_MAX;
      for (std::size_t j = 0; j < limit; ++j)
        if (sign(obj_[j]) < 0) {
          enter = j;
          break;
        }
      if (enter == SIZE_MAX) return true;
      std::size_t leave = SIZE_MAX;
      T best{};
      for (std::size_t i = 0; i < m_; ++i) {
        if (sign(at(i, enter)) <= 0) continue;
        T ratio = at(i, width_ - 1) / at(i, enter);
        if (leave == SIZE_MAX || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == SIZE_MAX) {
        unbounded_col_ = enter;
        return false;
      }
      pivot(leave, enter);
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (std::size_t j = 0; j < n_; ++j)
        if (sign(at(i, j)) != 0) {
          pivot(i, j);
          break;
        }
      // Otherwise the row is redundant; its artificial stays basic at zero.
    }
  }

  std::vector<Scalar> to_original(const std::vector<T>& std_x,
                                  bool shift) const {
    std::vector<Scalar> x;
    for (std::size_t j = 0; j < lp_.num_vars; ++j) {
      T v = std_x[plus_col_[j]];
      if (minus_col_[j] != SIZE_MAX) v -= std_x[minus_col_[j]];
      Scalar s = Num<T>::to(v);
      if (shift && lp_.lower[j]) s += *lp_.lower[j];
      x.push_back(std::move(s));
    }
    return x;
  }

  const LinearProgram& lp_;
  double tol_;
  std::size_t m_ = 0, n_ = 0, width_ = 0;
  std::vector<std::size_t> plus_col_, minus_col_;
  std::vector<T> tab_, obj_, cost_;
  std::vector<int> sign_;
  std::vector<std::size_t> basis_;
  std::size_t unbounded_col_ = 0;
};

template <class T>
LpOutcome solve(const LinearProgram& lp, const SolverOptions& opts,
                bool optimize) {
  Simplex<T> s(lp, opts);
  if (!s.phase_one()) return Infeasible{s.farkas()};
  if (!optimize) return Feasible{s.point()};
  const auto& cost = *lp.objective;
  if (!s.phase_two(cost)) return Unbounded{s.point(), s.ray()};
  auto x = s.point();
  Scalar value = s.objective_value(cost, x);
  return Optimal{std::move(x), std::move(value)};
}

LpOutcome dispatch(const LinearProgram& lp, const SolverOptions& opts,
                   bool optimize) {
  check_dimensions(lp);
  if (optimize && !lp.objective)
    fail(ErrorCode::DimensionMismatch, "minimize needs an objective");
  if (opts.float_mode || !lp.is_exact()) return solve<double>(lp, opts, optimize);
  return solve<Rational>(lp, opts, optimize);
}

struct Checker {
  bool exact;
  bool zero(const Scalar& v) const {
    return exact ? v.is_zero() : std::abs(v.to_double()) <= kTolLp;
  }
  bool nonneg(const Scalar& v) const {
    return exact ? v.sign() >= 0 : v.to_double() >= -kTolLp;
  }
  bool pos(const Scalar& v) const {
    return exact ? v.sign() > 0 : v.to_double() > kTolLp;
  }
};

Checker checker_for(const LinearProgram& lp, const std::vector<Scalar>& v) {
  bool exact = lp.is_exact() && std::all_of(v.begin(), v.end(), [](auto& s) {
                 return s.is_exact();
               });
  return Checker{exact};
}

bool point_feasible(const LinearProgram& lp, const std::vector<Scalar>& x) {
  if (x.size() != lp.num_vars) return false;
  Checker ck = checker_for(lp, x);
  for (std::size_t j = 0; j < lp.num_vars; ++j)
    if (lp.lower[j] && !ck.nonneg(x[j] - *lp.lower[j])) return false;
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    Scalar r = -lp.b[i];
    for (std::size_t j = 0; j < lp.num_vars; ++j)
      if (!lp.A[i][j].is_zero()) r += lp.A[i][j] * x[j];
    if (!ck.zero(r)) return false;
  }
  return true;
}

}  // namespace

LpOutcome solve_feasible(const LinearProgram& lp, const SolverOptions& opts) {
  return dispatch(lp, opts, false);
}

LpOutcome minimize(const LinearProgram& lp, const SolverOptions& opts) {
  return dispatch(lp, opts, true);
}

bool verify(const FarkasCert& cert, const LinearProgram& lp) {
  if (cert.y.size() != lp.num_rows()) return false;
  Checker ck = checker_for(lp, cert.y);
  Scalar rhs = 0;
  for (std::size_t i = 0; i < lp.num_rows(); ++i) rhs += cert.y[i] * lp.b[i];
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    Scalar col = 0;
    for (std::size_t i = 0; i < lp.num_rows(); ++i)
      if (!lp.A[i][j].is_zero()) col += cert.y[i] * lp.A[i][j];
    if (lp.lower[j]) {
      if (!ck.nonneg(-col)) return false;
      rhs -= col * *lp.lower[j];
    } else if (!ck.zero(col)) {
      return false;
    }
  }
  return ck.pos(rhs);
}

bool verify(const LpOutcome& outcome, const LinearProgram& lp) {
  return std::visit(
      [&](const auto& o) -> bool {
        using O = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<O, Infeasible>) {
          return verify(o.cert, lp);
        } else if constexpr (std::is_same_v<O, Feasible>) {
          return point_feasible(lp, o.point);
        } else if constexpr (std::is_same_v<O, Optimal>) {
          if (!lp.objective || !point_feasible(lp, o.point)) return false;
          Scalar v = 0;
          for (std::size_t j = 0; j < lp.num_vars; ++j)
            v += (*lp.objective)[j] * o.point[j];
          return checker_for(lp, o.point).zero(v - o.value);
        } else {
          if (!lp.objective || !point_feasible(lp, o.point) ||
              o.ray.size() != lp.num_vars)
            return false;
          Checker ck = checker_for(lp, o.ray);
          for (std::size_t j = 0; j < lp.num_vars; ++j)
            if (lp.lower[j] && !ck.nonneg(o.ray[j])) return false;
          for (std::size_t i = 0; i < lp.num_rows(); ++i) {
            Scalar r = 0;
            for (std::size_t j = 0; j < lp.num_vars; ++j)
              r += lp.A[i][j] * o.ray[j];
            if (!ck.zero(r)) return false;
          }
          Scalar slope = 0;
          for (std::size_t j = 0; j < lp.num_vars; ++j)
            slope += (*lp.objective)[j] * o.ray[j];
          return ck.pos(-slope);
        }
      },
      outcome);
}

}  // namespace catcrypt::lp
