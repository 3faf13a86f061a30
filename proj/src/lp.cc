// Copyright 2026 The notransfer Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "notransfer/lp.h"

#include <stdexcept>
#include <utility>

namespace notransfer {

LinearProgram::LinearProgram(std::size_t num_vars)
    : objective(num_vars),
      lower(num_vars, Rational(0)),
      upper(num_vars, std::nullopt) {}

void LinearProgram::AddEquality(const Vec& row, const Rational& rhs) {
  if (row.size() != num_vars()) throw std::invalid_argument("AddEquality: width mismatch");
  eq.AppendRow(row);
  eq_rhs.push_back(rhs);
}

void LinearProgram::AddInequality(const Vec& row, const Rational& rhs) {
  if (row.size() != num_vars()) throw std::invalid_argument("AddInequality: width mismatch");
  le.AppendRow(row);
  le_rhs.push_back(rhs);
}

void LinearProgram::Validate() const {
  const std::size_t n = num_vars();
  if (lower.size() != n || upper.size() != n) {
    throw std::invalid_argument("LinearProgram: bound vectors do not match objective");
  }
  if (eq.rows() != eq_rhs.size() || (eq.rows() > 0 && eq.cols() != n)) {
    throw std::invalid_argument("LinearProgram: equality block dimensions");
  }
  if (le.rows() != le_rhs.size() || (le.rows() > 0 && le.cols() != n)) {
    throw std::invalid_argument("LinearProgram: inequality block dimensions");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (lower[j] && upper[j] && *lower[j] > *upper[j]) {
      throw std::invalid_argument("LinearProgram: lower bound exceeds upper bound");
    }
  }
}

std::string ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

// How an original variable lives in the nonnegative internal space.
struct VarMap {
  enum class Kind { kShift, kReflect, kSplit };
  Kind kind = Kind::kShift;
  std::size_t col = 0;
  std::size_t neg_col = 0;  // kSplit only
  Rational offset;          // lower bound (kShift) or upper bound (kReflect)
};

class Tableau {
 public:
  Tableau(std::vector<Vec> rows, Vec rhs, std::vector<std::size_t> basis)
      : a_(std::move(rows)), rhs_(std::move(rhs)), basis_(std::move(basis)) {
    cols_ = a_.empty() ? 0 : a_.front().size();
  }

  void set_cols(std::size_t cols) { cols_ = cols; }
  std::size_t rows() const { return a_.size(); }
  const Vec& reduced() const { return reduced_; }
  const Rational& value() const { return value_; }
  const Vec& rhs() const { return rhs_; }
  const std::vector<std::size_t>& basis() const { return basis_; }
  const Rational& at(std::size_t r, std::size_t c) const { return a_[r][c]; }

  void SetCosts(const Vec& costs) {
    reduced_ = costs;
    value_ = 0;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      const Rational& cb = costs[basis_[i]];
      if (sgn(cb) == 0) continue;
      value_ += cb * rhs_[i];
      for (std::size_t j = 0; j < cols_; ++j) {
        if (sgn(a_[i][j]) != 0) reduced_[j] -= cb * a_[i][j];
      }
    }
  }

  void Pivot(std::size_t r, std::size_t c) {
    std::vector<std::size_t> nz;
    {
      Rational inv = 1 / a_[r][c];
      for (std::size_t j = 0; j < cols_; ++j) {
        if (sgn(a_[r][j]) != 0) {
          a_[r][j] *= inv;
          nz.push_back(j);
        }
      }
      rhs_[r] *= inv;
    }
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (i == r || sgn(a_[i][c]) == 0) continue;
      Rational f = a_[i][c];
      for (std::size_t j : nz) a_[i][j] -= f * a_[r][j];
      rhs_[i] -= f * rhs_[r];
    }
    if (sgn(reduced_[c]) != 0) {
      Rational f = reduced_[c];
      for (std::size_t j : nz) reduced_[j] -= f * a_[r][j];
      value_ += f * rhs_[r];
    }
    basis_[r] = c;
  }

  enum class Outcome { kOptimal, kUnbounded };

  // Maximizes over columns [0, allowed). On kUnbounded, *entering holds the
  // column with no blocking row.
  Outcome Run(std::size_t allowed, std::size_t* entering) {
    for (;;) {
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (sgn(reduced_[j]) > 0) {
          enter = j;
          break;
        }
      }
      if (enter == allowed) return Outcome::kOptimal;
      std::size_t leave = a_.size();
      Rational best;
      for (std::size_t i = 0; i < a_.size(); ++i) {
        if (sgn(a_[i][enter]) <= 0) continue;
        Rational ratio = rhs_[i] / a_[i][enter];
        if (leave == a_.size() || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == a_.size()) {
        *entering = enter;
        return Outcome::kUnbounded;
      }
      Pivot(leave, enter);
    }
  }

 private:
  std::vector<Vec> a_;
  Vec rhs_;
  std::vector<std::size_t> basis_;
  std::size_t cols_ = 0;
  Vec reduced_;
  Rational value_;
};

Rational BoxMinimum(const LinearProgram& lp, const Vec& g, bool* finite) {
  Rational acc = 0;
  *finite = true;
  for (std::size_t j = 0; j < g.size(); ++j) {
    int s = sgn(g[j]);
    if (s > 0) {
      if (!lp.lower[j]) {
        *finite = false;
        return 0;
      }
      acc += g[j] * *lp.lower[j];
    } else if (s < 0) {
      if (!lp.upper[j]) {
        *finite = false;
        return 0;
      }
      acc += g[j] * *lp.upper[j];
    }
  }
  return acc;
}

// g = eq^T y_eq + le^T y_le
Vec Combine(const LinearProgram& lp, const Vec& y_eq, const Vec& y_le) {
  Vec g(lp.num_vars());
  for (std::size_t r = 0; r < lp.eq.rows(); ++r) {
    if (sgn(y_eq[r]) == 0) continue;
    for (std::size_t j = 0; j < g.size(); ++j) g[j] += lp.eq(r, j) * y_eq[r];
  }
  for (std::size_t r = 0; r < lp.le.rows(); ++r) {
    if (sgn(y_le[r]) == 0) continue;
    for (std::size_t j = 0; j < g.size(); ++j) g[j] += lp.le(r, j) * y_le[r];
  }
  return g;
}

}  // namespace

LpSolution SolveLp(const LinearProgram& lp) {
  lp.Validate();
  const std::size_t n = lp.num_vars();

  std::vector<VarMap> vars(n);
  std::size_t num_struct = 0;
  for (std::size_t j = 0; j < n; ++j) {
    VarMap& v = vars[j];
    if (lp.lower[j]) {
      v.kind = VarMap::Kind::kShift;
      v.offset = *lp.lower[j];
      v.col = num_struct++;
    } else if (lp.upper[j]) {
      v.kind = VarMap::Kind::kReflect;
      v.offset = *lp.upper[j];
      v.col = num_struct++;
    } else {
      v.kind = VarMap::Kind::kSplit;
      v.col = num_struct++;
      v.neg_col = num_struct++;
    }
  }
  std::vector<std::size_t> boxed;
  for (std::size_t j = 0; j < n; ++j) {
    if (lp.lower[j] && lp.upper[j]) boxed.push_back(j);
  }
  const std::size_t num_eq = lp.eq.rows();
  const std::size_t num_le = lp.le.rows();
  const std::size_t m = num_eq + num_le + boxed.size();
  const std::size_t num_slack = num_le + boxed.size();
  const std::size_t num_real = num_struct + num_slack;
  const std::size_t width = num_real + m;

  std::vector<Vec> rows(m, Vec(width));
  Vec rhs(m);
  std::vector<int> sign(m, 1);

  auto place = [&](std::size_t r, const Vec& coeffs, const Rational& b) {
    rhs[r] = b;
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& a = coeffs[j];
      if (sgn(a) == 0) continue;
      const VarMap& v = vars[j];
      switch (v.kind) {
        case VarMap::Kind::kShift:
          rows[r][v.col] += a;
          rhs[r] -= a * v.offset;
          break;
        case VarMap::Kind::kReflect:
          rows[r][v.col] -= a;
          rhs[r] -= a * v.offset;
          break;
        case VarMap::Kind::kSplit:
          rows[r][v.col] += a;
          rows[r][v.neg_col] -= a;
          break;
      }
    }
  };
  for (std::size_t r = 0; r < num_eq; ++r) place(r, lp.eq.Row(r), lp.eq_rhs[r]);
  for (std::size_t r = 0; r < num_le; ++r) {
    place(num_eq + r, lp.le.Row(r), lp.le_rhs[r]);
    rows[num_eq + r][num_struct + r] = 1;
  }
  for (std::size_t k = 0; k < boxed.size(); ++k) {
    const std::size_t r = num_eq + num_le + k;
    const std::size_t j = boxed[k];
    rows[r][vars[j].col] = 1;
    rows[r][num_struct + num_le + k] = 1;
    rhs[r] = *lp.upper[j] - *lp.lower[j];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    if (sgn(rhs[r]) < 0) {
      sign[r] = -1;
      for (auto& e : rows[r]) e = -e;
      rhs[r] = -rhs[r];
    }
    rows[r][num_real + r] = 1;
    basis[r] = num_real + r;
  }

  Tableau t(std::move(rows), std::move(rhs), std::move(basis));
  t.set_cols(width);

  LpSolution sol;
  auto map_multipliers = [&](const Vec& y) {
    sol.dual_eq.assign(num_eq, Rational(0));
    sol.dual_le.assign(num_le, Rational(0));
    for (std::size_t r = 0; r < num_eq; ++r) sol.dual_eq[r] = y[r] * sign[r];
    for (std::size_t r = 0; r < num_le; ++r) {
      sol.dual_le[r] = y[num_eq + r] * sign[num_eq + r];
    }
  };

  // Phase 1: maximize -sum(artificials).
  Vec phase1(width);
  for (std::size_t r = 0; r < m; ++r) phase1[num_real + r] = -1;
  t.SetCosts(phase1);
  std::size_t entering = 0;
  if (t.Run(num_real, &entering) != Tableau::Outcome::kOptimal) {
    throw std::logic_error("phase 1 reported unbounded");
  }
  if (sgn(t.value()) < 0) {
    Vec y(m);
    for (std::size_t r = 0; r < m; ++r) y[r] = -1 - t.reduced()[num_real + r];
    sol.status = LpStatus::kInfeasible;
    map_multipliers(y);
    if (!VerifyInfeasibility(lp, sol)) {
      throw std::logic_error("simplex produced an invalid infeasibility certificate");
    }
    return sol;
  }
  // Drive zero-valued artificials out of the basis where possible; rows
  // where that fails are redundant and keep their artificial at zero.
  for (std::size_t r = 0; r < m; ++r) {
    if (t.basis()[r] < num_real) continue;
    for (std::size_t j = 0; j < num_real; ++j) {
      if (sgn(t.at(r, j)) != 0) {
        t.Pivot(r, j);
        break;
      }
    }
  }

  // Phase 2.
  Vec costs(width);
  for (std::size_t j = 0; j < n; ++j) {
    const VarMap& v = vars[j];
    switch (v.kind) {
      case VarMap::Kind::kShift:
        costs[v.col] = lp.objective[j];
        break;
      case VarMap::Kind::kReflect:
        costs[v.col] = -lp.objective[j];
        break;
      case VarMap::Kind::kSplit:
        costs[v.col] = lp.objective[j];
        costs[v.neg_col] = -lp.objective[j];
        break;
    }
  }
  t.SetCosts(costs);
  const auto outcome = t.Run(num_real, &entering);

  Vec z(width);
  for (std::size_t r = 0; r < m; ++r) z[t.basis()[r]] = t.rhs()[r];
  auto to_original = [&](const Vec& internal, bool direction) {
    Vec x(n);
    for (std::size_t j = 0; j < n; ++j) {
      const VarMap& v = vars[j];
      switch (v.kind) {
        case VarMap::Kind::kShift:
          x[j] = internal[v.col] + (direction ? Rational(0) : v.offset);
          break;
        case VarMap::Kind::kReflect:
          x[j] = (direction ? Rational(0) : v.offset) - internal[v.col];
          break;
        case VarMap::Kind::kSplit:
          x[j] = internal[v.col] - internal[v.neg_col];
          break;
      }
    }
    return x;
  };

  if (outcome == Tableau::Outcome::kUnbounded) {
    Vec d(width);
    d[entering] = 1;
    for (std::size_t r = 0; r < m; ++r) d[t.basis()[r]] = -t.at(r, entering);
    sol.status = LpStatus::kUnbounded;
    sol.primal = to_original(z, false);
    sol.ray = to_original(d, true);
    if (!VerifyUnbounded(lp, sol)) {
      throw std::logic_error("simplex produced an invalid unbounded ray");
    }
    return sol;
  }

  sol.status = LpStatus::kOptimal;
  sol.primal = to_original(z, false);
  sol.value = Dot(lp.objective, sol.primal);
  Vec y(m);
  for (std::size_t r = 0; r < m; ++r) y[r] = -t.reduced()[num_real + r];
  map_multipliers(y);
  if (!VerifyOptimality(lp, sol)) {
    throw std::logic_error("simplex produced an unverifiable optimum");
  }
  return sol;
}

bool IsPrimalFeasible(const LinearProgram& lp, const Vec& x) {
  if (x.size() != lp.num_vars()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (lp.lower[j] && x[j] < *lp.lower[j]) return false;
    if (lp.upper[j] && x[j] > *lp.upper[j]) return false;
  }
  for (std::size_t r = 0; r < lp.eq.rows(); ++r) {
    Rational acc = 0;
    for (std::size_t j = 0; j < x.size(); ++j) acc += lp.eq(r, j) * x[j];
    if (acc != lp.eq_rhs[r]) return false;
  }
  for (std::size_t r = 0; r < lp.le.rows(); ++r) {
    Rational acc = 0;
    for (std::size_t j = 0; j < x.size(); ++j) acc += lp.le(r, j) * x[j];
    if (acc > lp.le_rhs[r]) return false;
  }
  return true;
}

bool VerifyOptimality(const LinearProgram& lp, const LpSolution& sol) {
  if (sol.status != LpStatus::kOptimal) return false;
  if (sol.dual_eq.size() != lp.eq.rows() || sol.dual_le.size() != lp.le.rows()) {
    return false;
  }
  if (!IsPrimalFeasible(lp, sol.primal)) return false;
  if (Dot(lp.objective, sol.primal) != sol.value) return false;
  for (const auto& y : sol.dual_le) {
    if (sgn(y) < 0) return false;
  }
  Vec g = Combine(lp, sol.dual_eq, sol.dual_le);
  Rational dual_value = Dot(lp.eq_rhs, sol.dual_eq) + Dot(lp.le_rhs, sol.dual_le);
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    Rational d = lp.objective[j] - g[j];
    int s = sgn(d);
    if (s > 0) {
      if (!lp.upper[j]) return false;
      dual_value += d * *lp.upper[j];
    } else if (s < 0) {
      if (!lp.lower[j]) return false;
      dual_value += d * *lp.lower[j];
    }
  }
  return dual_value == sol.value;
}

bool VerifyInfeasibility(const LinearProgram& lp, const LpSolution& sol) {
  if (sol.dual_eq.size() != lp.eq.rows() || sol.dual_le.size() != lp.le.rows()) {
    return false;
  }
  for (const auto& y : sol.dual_le) {
    if (sgn(y) < 0) return false;
  }
  Vec g = Combine(lp, sol.dual_eq, sol.dual_le);
  bool finite = false;
  Rational lo = BoxMinimum(lp, g, &finite);
  if (!finite) return false;
  return lo > Dot(lp.eq_rhs, sol.dual_eq) + Dot(lp.le_rhs, sol.dual_le);
}

bool VerifyUnbounded(const LinearProgram& lp, const LpSolution& sol) {
  const Vec& d = sol.ray;
  if (d.size() != lp.num_vars() || !IsPrimalFeasible(lp, sol.primal)) return false;
  if (sgn(Dot(lp.objective, d)) <= 0) return false;
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (lp.lower[j] && sgn(d[j]) < 0) return false;
    if (lp.upper[j] && sgn(d[j]) > 0) return false;
  }
  for (std::size_t r = 0; r < lp.eq.rows(); ++r) {
    if (sgn(Dot(lp.eq.Row(r), d)) != 0) return false;
  }
  for (std::size_t r = 0; r < lp.le.rows(); ++r) {
    if (sgn(Dot(lp.le.Row(r), d)) > 0) return false;
  }
  return true;
}

}  // namespace notransfer
