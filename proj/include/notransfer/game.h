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

#ifndef NOTRANSFER_GAME_H_
#define NOTRANSFER_GAME_H_

#include <cstddef>
#include <vector>

#include "notransfer/core.h"
#include "notransfer/linalg.h"

namespace notransfer {

// The auxiliary zero-sum game of a two-agent mechanism: the maximizer picks
// a row type, the minimizer picks a column type, and the payoff to the
// maximizer is x(row, col).

struct MaximinSolution {
  Rational value;
  Vec row_strategy;  // maximizer, over the first agent's types
  Vec col_strategy;  // minimizer, over the second agent's types
};

// Both strategies come from a single LP solve: the row strategy from the
// primal, the column strategy from the duals of the payoff rows.
MaximinSolution Maximin(const Matrix& payoff);

// min over column strategies of max over rows, solved as its own LP.
Rational MinimaxValue(const Matrix& payoff);

// No pure deviation improves either player against the other's strategy.
bool IsNashEquilibrium(const Matrix& payoff, const MaximinSolution& solution);

struct ObedienceViolation {
  std::size_t agent = 0;        // 0 = maximizer (row), 1 = minimizer (column)
  std::size_t recommended = 0;
  std::size_t deviation = 0;
  // Gain in joint-probability units: sum over the opponent's actions of
  // pi(recommended, .) times the payoff change in the deviator's favor.
  Rational gain;
};

struct ObedienceReport {
  bool obedient = true;
  // Sorted by gain (largest first), then agent, recommended, deviation.
  std::vector<ObedienceViolation> violations;
};

// Is pi a correlated equilibrium of the auxiliary game with payoff x?
ObedienceReport ObedienceCheck(const Matrix& payoff, const JointDist& pi);

}  // namespace notransfer

#endif  // NOTRANSFER_GAME_H_
