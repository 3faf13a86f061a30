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

#include <random>
#include <stdexcept>

#include "doctest.h"
#include "notransfer/core.h"
#include "notransfer/ic.h"
#include "notransfer/linalg.h"
#include "notransfer/lp.h"
#include "notransfer/oracle.h"
#include "notransfer/rational.h"
#include "test_util.h"

namespace notransfer {
namespace {

using testing::M;
using testing::Q;
using testing::V;

TEST_CASE("ParseRational reads fractions, integers and decimals exactly") {
  CHECK(Q("3/4") == Rational(3, 4));
  CHECK(Q("-6/8") == Rational(-3, 4));
  CHECK(Q("0.1") == Rational(1, 10));
  CHECK(Q("-2.50") == Rational(-5, 2));
  CHECK(Q("1e-3") == Rational(1, 1000));
  CHECK(Q("2.5E2") == Rational(250));
  CHECK_THROWS_AS(ParseRational(" 7 "), std::invalid_argument);
  CHECK_THROWS_AS(ParseRational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(ParseRational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(ParseRational(""), std::invalid_argument);
  CHECK(ToString(Q("2/4")) == "1/2");
  CHECK(ToString(Q("-3")) == "-3");
}

TEST_CASE("vector helpers") {
  Vec a = V({"1", "2", "3"});
  Vec b = V({"1/2", "0", "-1"});
  CHECK(Dot(a, b) == Q("-5/2"));
  CHECK(Sum(a) == 6);
  CHECK(Min(b) == -1);
  CHECK(Max(b) == Q("1/2"));
  CHECK(Add(a, b) == V({"3/2", "2", "2"}));
  CHECK(Subtract(a, b) == V({"1/2", "2", "4"}));
  CHECK(Scale(a, Q("1/3")) == V({"1/3", "2/3", "1"}));
  CHECK(IsZero(V({"0", "0"})));
  CHECK_FALSE(IsZero(b));
}

TEST_CASE("rank by exact elimination") {
  CHECK(Rank(M({{"1", "2"}, {"2", "4"}})) == 1);
  CHECK(Rank(M({{"1/8", "3/8"}, {"3/8", "1/8"}})) == 2);
  CHECK(Rank(M({{"0", "0"}, {"0", "0"}})) == 0);
  CHECK(Rank(M({{"1", "2", "3"}, {"4", "5", "6"}, {"7", "8", "9"}})) == 2);
}

TEST_CASE("linear systems and spans") {
  auto x = SolveLinearSystem(M({{"2", "1"}, {"1", "3"}}), V({"3", "5"}));
  REQUIRE(x);
  CHECK(*x == V({"4/5", "7/5"}));
  CHECK_FALSE(SolveLinearSystem(M({{"1", "1"}, {"1", "1"}}), V({"1", "2"})));
  CHECK(InSpan(V({"2", "4"}), {V({"1", "2"})}));
  CHECK_FALSE(InSpan(V({"2", "5"}), {V({"1", "2"})}));
  auto alpha = SpanCoefficients(V({"3", "1"}), {V({"1", "0"}), V({"0", "1"})});
  REQUIRE(alpha);
  CHECK(*alpha == V({"3", "1"}));
}

TEST_CASE("orthogonal projection is exact and handles redundant generators") {
  // FX1: w = theta_l theta_r / 4 projected onto additive functions.
  Matrix w = M({{"1/4", "-1/4"}, {"-1/4", "1/4"}});
  std::vector<Vec> gens;
  for (std::size_t a = 0; a < 2; ++a) {
    Matrix row(2, 2), col(2, 2);
    for (std::size_t b = 0; b < 2; ++b) {
      row(a, b) = 1;
      col(b, a) = 1;
    }
    gens.push_back(row.Flat());
    gens.push_back(col.Flat());
    gens.push_back(row.Flat());  // duplicate on purpose
  }
  Projection p = OrthogonalProjection(w.Flat(), gens);
  CHECK(IsZero(p.projection));
  CHECK(p.residual == w.Flat());

  Vec target = V({"1", "2", "3"});
  Projection q = OrthogonalProjection(target, {V({"1", "1", "1"})});
  CHECK(q.projection == V({"2", "2", "2"}));
  CHECK(q.residual == V({"-1", "0", "1"}));
  CHECK(Dot(q.residual, V({"1", "1", "1"})) == 0);
}

// Brute-force LP oracle: enumerate every basis of active constraints among
// the rows and the bounds x >= 0, keep the feasible ones, take the best.
std::optional<Rational> VertexOracle(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  std::vector<Vec> rows;
  std::vector<Rational> rhs;
  for (std::size_t r = 0; r < lp.eq.rows(); ++r) {
    rows.push_back(lp.eq.Row(r));
    rhs.push_back(lp.eq_rhs[r]);
  }
  const std::size_t num_eq = rows.size();
  for (std::size_t r = 0; r < lp.le.rows(); ++r) {
    rows.push_back(lp.le.Row(r));
    rhs.push_back(lp.le_rhs[r]);
  }
  for (std::size_t j = 0; j < n; ++j) {
    Vec e(n);
    e[j] = 1;
    rows.push_back(e);
    rhs.push_back(0);
  }
  const std::size_t total = rows.size();
  std::optional<Rational> best;
  for (std::uint32_t mask = 0; mask < (1u << total); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != n) continue;
    bool has_all_eq = true;
    for (std::size_t r = 0; r < num_eq; ++r) has_all_eq = has_all_eq && ((mask >> r) & 1u);
    if (!has_all_eq) continue;
    Matrix a;
    Vec b;
    for (std::size_t r = 0; r < total; ++r) {
      if ((mask >> r) & 1u) {
        a.AppendRow(rows[r]);
        b.push_back(rhs[r]);
      }
    }
    if (Rank(a) != n) continue;
    auto x = SolveLinearSystem(a, b);
    if (!x || !IsPrimalFeasible(lp, *x)) continue;
    Rational value = Dot(lp.objective, *x);
    if (!best || value > *best) best = value;
  }
  return best;
}

TEST_CASE("simplex agrees with vertex enumeration on random small LPs") {
  std::mt19937_64 gen(2024);
  auto pick = [&](long lo, long hi) { return Rational(testing::Uniform(gen, lo, hi)); };
  int optimal = 0, infeasible = 0, unbounded = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + gen() % 3;
    LinearProgram lp(n);
    for (auto& c : lp.objective) c = pick(-3, 3);
    const std::size_t num_eq = gen() % 2;
    const std::size_t num_le = 1 + gen() % 3;
    for (std::size_t r = 0; r < num_eq; ++r) {
      Vec row(n);
      for (auto& e : row) e = pick(-2, 3);
      lp.AddEquality(row, pick(-1, 4));
    }
    for (std::size_t r = 0; r < num_le; ++r) {
      Vec row(n);
      for (auto& e : row) e = pick(-2, 3);
      lp.AddInequality(row, pick(-2, 5));
    }
    LpSolution sol = SolveLp(lp);
    auto oracle = VertexOracle(lp);
    switch (sol.status) {
      case LpStatus::kOptimal:
        ++optimal;
        REQUIRE(oracle);
        CHECK(sol.value == *oracle);
        CHECK(IsPrimalFeasible(lp, sol.primal));
        CHECK(VerifyOptimality(lp, sol));
        break;
      case LpStatus::kInfeasible:
        ++infeasible;
        CHECK_FALSE(oracle);
        CHECK(VerifyInfeasibility(lp, sol));
        break;
      case LpStatus::kUnbounded:
        ++unbounded;
        CHECK(oracle);
        CHECK(VerifyUnbounded(lp, sol));
        break;
    }
  }
  CHECK(optimal > 50);
  CHECK(infeasible > 5);
  CHECK(unbounded > 5);
}

TEST_CASE("simplex handles free, shifted and boxed variables") {
  // max x + y, x free, -1 <= y <= 2, x + y <= 3, x - y >= -4
  LinearProgram lp(2);
  lp.objective = V({"1", "1"});
  lp.lower = {std::nullopt, Q("-1")};
  lp.upper = {std::nullopt, Q("2")};
  lp.AddInequality(V({"1", "1"}), 3);
  lp.AddInequality(V({"-1", "1"}), 4);
  LpSolution sol = SolveLp(lp);
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.value == 3);
  CHECK(VerifyOptimality(lp, sol));

  // Upper-bounded only: max -x with x <= 5, x >= -inf -> unbounded.
  LinearProgram ray(1);
  ray.objective = V({"-1"});
  ray.lower = {std::nullopt};
  ray.upper = {Q("5")};
  LpSolution r = SolveLp(ray);
  CHECK(r.status == LpStatus::kUnbounded);
  CHECK(VerifyUnbounded(ray, r));

  // Contradictory bounds and rows.
  LinearProgram bad(2);
  bad.objective = V({"1", "0"});
  bad.AddEquality(V({"1", "1"}), 1);
  bad.AddInequality(V({"1", "1"}), Q("1/2"));
  LpSolution b = SolveLp(bad);
  CHECK(b.status == LpStatus::kInfeasible);
  CHECK(VerifyInfeasibility(bad, b));

  LinearProgram inverted(1);
  inverted.lower = {Q("2")};
  inverted.upper = {Q("1")};
  CHECK_THROWS_AS(inverted.Validate(), std::invalid_argument);
}

TEST_CASE("degenerate LP terminates under Bland's rule") {
  // Beale's cycling example (maximization form).
  LinearProgram lp(4);
  lp.objective = V({"3/4", "-150", "1/50", "-6"});
  lp.AddInequality(V({"1/4", "-60", "-1/25", "9"}), 0);
  lp.AddInequality(V({"1/2", "-90", "-1/50", "3"}), 0);
  lp.AddInequality(V({"0", "0", "1", "0"}), 1);
  LpSolution sol = SolveLp(lp);
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.value == Q("1/20"));
}

TEST_CASE("principal LP on FX1 yields 1/2") {
  Instance fx1 = testing::Fixture("fx1");
  LpSolution sol = SolveLp(PrincipalLp(fx1.pi, fx1.v()));
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.value == Q("1/2"));
}

}  // namespace
}  // namespace notransfer
