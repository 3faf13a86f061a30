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

#include "notransfer/game.h"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "notransfer/lp.h"

namespace notransfer {

MaximinSolution Maximin(const Matrix& payoff) {
  const std::size_t m = payoff.rows();
  const std::size_t n = payoff.cols();
  if (m == 0 || n == 0) throw std::invalid_argument("Maximin: empty payoff");
  LinearProgram lp(m + 1);
  lp.objective[m] = 1;
  lp.lower[m] = std::nullopt;
  for (std::size_t b = 0; b < n; ++b) {
    Vec row(m + 1);
    for (std::size_t a = 0; a < m; ++a) row[a] = -payoff(a, b);
    row[m] = 1;
    lp.AddInequality(row, 0);
  }
  Vec simplex(m + 1, Rational(1));
  simplex[m] = 0;
  lp.AddEquality(simplex, 1);
  LpSolution sol = SolveLp(lp);
  if (sol.status != LpStatus::kOptimal) throw std::logic_error("Maximin LP not optimal");
  MaximinSolution out;
  out.value = sol.value;
  out.row_strategy.assign(sol.primal.begin(), sol.primal.begin() + static_cast<std::ptrdiff_t>(m));
  out.col_strategy = sol.dual_le;
  return out;
}

Rational MinimaxValue(const Matrix& payoff) {
  const std::size_t m = payoff.rows();
  const std::size_t n = payoff.cols();
  if (m == 0 || n == 0) throw std::invalid_argument("MinimaxValue: empty payoff");
  LinearProgram lp(n + 1);
  lp.objective[n] = -1;
  lp.lower[n] = std::nullopt;
  for (std::size_t a = 0; a < m; ++a) {
    Vec row(n + 1);
    for (std::size_t b = 0; b < n; ++b) row[b] = payoff(a, b);
    row[n] = -1;
    lp.AddInequality(row, 0);
  }
  Vec simplex(n + 1, Rational(1));
  simplex[n] = 0;
  lp.AddEquality(simplex, 1);
  LpSolution sol = SolveLp(lp);
  if (sol.status != LpStatus::kOptimal) throw std::logic_error("Minimax LP not optimal");
  return -sol.value;
}

bool IsNashEquilibrium(const Matrix& payoff, const MaximinSolution& s) {
  if (s.row_strategy.size() != payoff.rows() || s.col_strategy.size() != payoff.cols()) {
    return false;
  }
  for (const Vec* strategy : {&s.row_strategy, &s.col_strategy}) {
    for (const auto& p : *strategy) {
      if (sgn(p) < 0) return false;
    }
    if (Sum(*strategy) != 1) return false;
  }
  Vec row_payoffs = payoff.Multiply(s.col_strategy);
  Vec col_payoffs = payoff.Transpose().Multiply(s.row_strategy);
  Rational value = Dot(s.row_strategy, row_payoffs);
  if (value != s.value) return false;
  for (const auto& r : row_payoffs) {
    if (r > value) return false;
  }
  for (const auto& c : col_payoffs) {
    if (c < value) return false;
  }
  return true;
}

ObedienceReport ObedienceCheck(const Matrix& payoff, const JointDist& pi) {
  if (payoff.rows() != pi.rows() || payoff.cols() != pi.cols()) {
    throw std::invalid_argument("ObedienceCheck: dimension mismatch");
  }
  ObedienceReport report;
  for (std::size_t a = 0; a < pi.rows(); ++a) {
    for (std::size_t dev = 0; dev < pi.rows(); ++dev) {
      if (dev == a) continue;
      Rational gain = 0;
      for (std::size_t b = 0; b < pi.cols(); ++b) {
        gain += pi(a, b) * (payoff(dev, b) - payoff(a, b));
      }
      if (sgn(gain) > 0) report.violations.push_back({0, a, dev, gain});
    }
  }
  for (std::size_t b = 0; b < pi.cols(); ++b) {
    for (std::size_t dev = 0; dev < pi.cols(); ++dev) {
      if (dev == b) continue;
      Rational gain = 0;
      for (std::size_t a = 0; a < pi.rows(); ++a) {
        gain += pi(a, b) * (payoff(a, b) - payoff(a, dev));
      }
      if (sgn(gain) > 0) report.violations.push_back({1, b, dev, gain});
    }
  }
  std::sort(report.violations.begin(), report.violations.end(),
            [](const ObedienceViolation& x, const ObedienceViolation& y) {
              if (x.gain != y.gain) return x.gain > y.gain;
              return std::tie(x.agent, x.recommended, x.deviation) <
                     std::tie(y.agent, y.recommended, y.deviation);
            });
  report.obedient = report.violations.empty();
  return report;
}

}  // namespace notransfer
