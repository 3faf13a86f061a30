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

#ifndef NOTRANSFER_LP_H_
#define NOTRANSFER_LP_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "notransfer/linalg.h"
#include "notransfer/rational.h"

namespace notransfer {

// maximize objective . x
//   s.t.  eq  x == eq_rhs
//         le  x <= le_rhs
//         lower <= x <= upper   (nullopt = unbounded on that side)
struct LinearProgram {
  LinearProgram() = default;
  // All variables default to x >= 0 with no upper bound.
  explicit LinearProgram(std::size_t num_vars);

  std::size_t num_vars() const { return objective.size(); }
  void AddEquality(const Vec& row, const Rational& rhs);
  void AddInequality(const Vec& row, const Rational& rhs);
  // Throws std::invalid_argument on inconsistent dimensions or lower > upper.
  void Validate() const;

  Vec objective;
  Matrix eq;
  Vec eq_rhs;
  Matrix le;
  Vec le_rhs;
  std::vector<std::optional<Rational>> lower;
  std::vector<std::optional<Rational>> upper;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string ToString(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Rational value;
  Vec primal;
  // kOptimal: optimal dual multipliers (dual_le >= 0).
  // kInfeasible: Farkas multipliers y with y_le >= 0 and
  //   min_{lower <= x <= upper} (A^T y) . x  >  b . y.
  Vec dual_eq;
  Vec dual_le;
  // kUnbounded: improving ray of the feasible region.
  Vec ray;
};

// Two-phase primal simplex over exact rationals with Bland's rule (lowest
// index enters, ties in the ratio test leave by lowest basic index). The
// returned certificate is verified before returning; a failed verification
// throws std::logic_error.
LpSolution SolveLp(const LinearProgram& lp);

bool IsPrimalFeasible(const LinearProgram& lp, const Vec& x);
// Checks that (dual_eq, dual_le) is dual feasible with objective equal to
// the primal value.
bool VerifyOptimality(const LinearProgram& lp, const LpSolution& sol);
bool VerifyInfeasibility(const LinearProgram& lp, const LpSolution& sol);
bool VerifyUnbounded(const LinearProgram& lp, const LpSolution& sol);

}  // namespace notransfer

#endif  // NOTRANSFER_LP_H_
