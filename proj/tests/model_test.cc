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

#include <stdexcept>

#include "doctest.h"
#include "notransfer/core.h"
#include "notransfer/errors.h"
#include "notransfer/game.h"
#include "notransfer/ic.h"
#include "notransfer/oracle.h"
#include "test_util.h"

namespace notransfer {
namespace {

using testing::Fixture;
using testing::M;
using testing::PiEps;
using testing::Q;
using testing::V;

const Mechanism kDiagonal(M({{"1", "0"}, {"0", "1"}}));

TEST_CASE("type space indexing is row-major with the last agent fastest") {
  TypeSpace ts({"a", "b", "c"}, {{"x", "y"}, {"p", "q", "r"}, {"0", "1"}});
  CHECK(ts.num_profiles() == 12);
  CHECK(ts.shape() == std::vector<std::size_t>{2, 3, 2});
  for (std::size_t k = 0; k < ts.num_profiles(); ++k) {
    CHECK(ts.Index(ts.Profile(k)) == k);
  }
  CHECK(ts.Profile(1) == std::vector<std::size_t>{0, 0, 1});
  CHECK(ts.Profile(2) == std::vector<std::size_t>{0, 1, 0});
  CHECK(ts.NumericLabel(2, 1) == Rational(1));
  CHECK_FALSE(ts.NumericLabel(0, 0));
  CHECK_THROWS_AS(TypeSpace({"a", "a"}, {{"x"}, {"y"}}), SchemaError);
  CHECK_THROWS_AS(TypeSpace({"a"}, {{"x", "x"}}), SchemaError);
}

TEST_CASE("joint distributions are validated exactly") {
  CHECK_THROWS_AS(JointDist::Create(M({{"1/2", "1/2"}, {"0", "1/100"}})), SchemaError);
  CHECK_THROWS_AS(JointDist::Create(M({{"1/2", "-1/4"}, {"1/2", "1/4"}})), SchemaError);
  // zero column marginal
  CHECK_THROWS_AS(JointDist::Create(M({{"1/2", "0"}, {"1/2", "0"}})), SchemaError);

  JointDist fx2 = PiEps(Q("1/8"));
  CHECK(fx2.marginal(0) == V({"1/2", "1/2"}));
  CHECK(fx2.Conditional(0, 0) == V({"1/4", "3/4"}));
  CHECK(fx2.Conditional(1, 1) == V({"3/4", "1/4"}));
  CHECK_FALSE(fx2.IsIndependent());
  CHECK(fx2.MatrixRank() == 2);
  CHECK(fx2.IndependentCounterpart().IsIndependent());
  CHECK(PiEps(0).IsIndependent());
}

TEST_CASE("conditionals times marginals reconstruct the joint") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GenerateOptions opts;
    opts.seed = seed;
    opts.kind = GenerateKind::kCorrelated;
    opts.shape = {2 + seed % 3, 2 + (seed / 3) % 3};
    JointDist pi = Generate(opts).pi;
    for (std::size_t agent = 0; agent < 2; ++agent) {
      for (std::size_t t = 0; t < pi.num_types(agent); ++t) {
        Vec c = pi.Conditional(agent, t);
        CHECK(Sum(c) == 1);
        for (std::size_t o = 0; o < c.size(); ++o) {
          const Rational& joint = agent == 0 ? pi(t, o) : pi(o, t);
          CHECK(c[o] * pi.marginal(agent)[t] == joint);
        }
      }
    }
  }
}

TEST_CASE("normalize orients so that E[v] <= 0 and is idempotent") {
  JointDist pi = PiEps(0);
  Objective a = Normalize(M({{"3", "1"}, {"0", "0"}}), Matrix(2, 2), pi);
  CHECK(a.swapped);
  CHECK(pi.Expectation(a.v) == -1);
  Objective again = Normalize(a.v, Matrix(2, 2), pi);
  CHECK_FALSE(again.swapped);
  CHECK(again.v == a.v);

  Objective b = Normalize(M({{"1", "0"}, {"0", "1"}}), M({{"0", "1"}, {"1", "0"}}), pi);
  CHECK_FALSE(b.swapped);  // E = 0 exactly: no flip
  CHECK(b.v == M({{"1", "-1"}, {"-1", "1"}}));
}

TEST_CASE("mechanisms must lie in the unit box") {
  CHECK_THROWS_AS(Mechanism(M({{"3/2", "0"}})), SchemaError);
  CHECK_THROWS_AS(Mechanism(M({{"-1/2", "0"}})), SchemaError);
  CHECK(Mechanism::Constant(2, 3, Q("1/3")).IsConstant());
  CHECK_FALSE(kDiagonal.IsConstant());
}

TEST_CASE("maximin solves the auxiliary game from one LP") {
  MaximinSolution s = Maximin(kDiagonal.matrix());
  CHECK(s.value == Q("1/2"));
  CHECK(s.row_strategy == V({"1/2", "1/2"}));
  CHECK(s.col_strategy == V({"1/2", "1/2"}));
  CHECK(IsNashEquilibrium(kDiagonal.matrix(), s));

  Matrix rps = M({{"1/2", "0", "1"}, {"1", "1/2", "0"}, {"0", "1", "1/2"}});
  CHECK(Maximin(rps).value == Q("1/2"));
  Matrix dominated = M({{"1", "1/4"}, {"1/2", "0"}});
  MaximinSolution d = Maximin(dominated);
  CHECK(d.value == Q("1/4"));
  CHECK(d.row_strategy == V({"1", "0"}));
}

TEST_CASE("minimax equality and Nash strategies on random payoffs") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 60; ++trial) {
    const auto m = static_cast<std::size_t>(testing::Uniform(gen, 1, 4));
    const auto n = static_cast<std::size_t>(testing::Uniform(gen, 1, 4));
    Matrix x(m, n);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < n; ++b) x(a, b) = testing::Frac(testing::Uniform(gen, 0, 8), 8);
    }
    MaximinSolution s = Maximin(x);
    CHECK(s.value == MinimaxValue(x));
    CHECK(Sum(s.row_strategy) == 1);
    CHECK(Sum(s.col_strategy) == 1);
    CHECK(Dot(s.row_strategy, x.Multiply(s.col_strategy)) == s.value);
    CHECK(IsNashEquilibrium(x, s));
  }
}

TEST_CASE("obedience on FX2 reports the x* deviations") {
  ObedienceReport r = ObedienceCheck(kDiagonal.matrix(), PiEps(Q("1/8")));
  CHECK_FALSE(r.obedient);
  REQUIRE(r.violations.size() == 2);
  CHECK(r.violations[0].gain == Q("1/4"));
  CHECK(r.violations[0].agent == 0);
  CHECK(ObedienceCheck(kDiagonal.matrix(), PiEps(0)).obedient);
}

TEST_CASE("check-ic on the diagonal mechanism x*") {
  ICReport indep = CheckIC(kDiagonal, PiEps(0));
  CHECK(indep.verdict);
  CHECK(indep.common_value == Q("1/2"));
  CHECK(indep.ex_ante_indifferent);
  CHECK(indep.uninformative);

  ICReport corr = CheckIC(kDiagonal, PiEps(Q("1/8")));
  CHECK_FALSE(corr.verdict);
  CHECK_FALSE(corr.common_value);
  // Only the left agent gains: the right agent wants x low and truth already
  // minimizes its interim expectation.
  REQUIRE(corr.violations.size() == 2);
  for (const auto& v : corr.violations) {
    CHECK(v.agent == 0);
    CHECK(v.gain == Q("1/2"));
    CHECK(v.report != v.type);
  }
  CHECK(corr.ex_ante_indifferent);
  CHECK_FALSE(corr.uninformative);
}

TEST_CASE("constant mechanisms are IC everywhere") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GenerateOptions opts;
    opts.seed = seed;
    opts.kind = GenerateKind::kCorrelated;
    opts.shape = {3, 2};
    JointDist pi = Generate(opts).pi;
    ICReport r = CheckIC(Mechanism::Constant(3, 2, Q("2/7")), pi);
    CHECK(r.verdict);
    CHECK(r.common_value == Q("2/7"));
  }
}

TEST_CASE("IC verdict, obedience and interim value agree with the maximin value") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    GenerateOptions opts;
    opts.seed = seed;
    opts.kind = seed % 2 ? GenerateKind::kIndependent : GenerateKind::kCorrelated;
    opts.shape = {2 + seed % 2, 2 + (seed / 2) % 2};
    JointDist pi = Generate(opts).pi;
    Mechanism x = SampleICVertex(pi, seed);
    ICReport r = CheckIC(x, pi);
    REQUIRE(r.verdict);
    CHECK(ObedienceCheck(x.matrix(), pi).obedient);
    const Rational value = Maximin(x.matrix()).value;
    for (const auto& e : r.interim) {
      if (e.report == e.type) CHECK(e.value == value);
    }
    // Correlated-equilibrium identity: E_pi[x] = E_{product}[x].
    CHECK(pi.Expectation(x.matrix()) == pi.IndependentCounterpart().Expectation(x.matrix()));
    // IC under any pi implies IC under the product of its marginals.
    CHECK(CheckIC(x, pi.IndependentCounterpart()).verdict);
  }
}

TEST_CASE("non-IC random mechanisms: all three verdict routes agree") {
  std::mt19937_64 gen(11);
  int failures = 0;
  for (int trial = 0; trial < 40; ++trial) {
    GenerateOptions opts;
    opts.seed = static_cast<std::uint64_t>(trial);
    opts.kind = GenerateKind::kCorrelated;
    JointDist pi = Generate(opts).pi;
    Matrix x(2, 2);
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t b = 0; b < 2; ++b) x(a, b) = testing::Frac(testing::Uniform(gen, 0, 4), 4);
    }
    ICReport r = CheckIC(Mechanism(x), pi);
    CHECK(r.verdict == ObedienceCheck(x, pi).obedient);
    CHECK(r.verdict == r.violations.empty());
    if (!r.verdict) ++failures;
  }
  CHECK(failures > 10);
}

TEST_CASE("IC constraint block annihilates exactly the IC mechanisms") {
  JointDist fx2 = PiEps(Q("1/8"));
  Matrix block = ICConstraintBlock(fx2);
  CHECK(IsZero(block.Multiply(Mechanism::Constant(2, 2, Q("1/3")).matrix().Flat())));
  CHECK_FALSE(IsZero(block.Multiply(kDiagonal.matrix().Flat())));
  CHECK(IsZero(ICConstraintBlock(PiEps(0)).Multiply(kDiagonal.matrix().Flat())));
}

TEST_CASE("FX2 spans FX1; preorder extremes") {
  JointDist fx2 = PiEps(Q("1/8"));
  JointDist fx1 = PiEps(0);
  SpanningVerdict s = Spans(fx2, fx1);
  CHECK(s.spans);
  REQUIRE(s.coefficients.size() == 4);
  for (const auto& c : s.coefficients) {
    Matrix cond = fx2.Conditionals(c.agent);
    Vec rebuilt(cond.cols());
    for (std::size_t k = 0; k < c.alpha.size(); ++k) {
      rebuilt = Add(rebuilt, Scale(cond.Row(k), c.alpha[k]));
    }
    CHECK(rebuilt == fx1.Conditional(c.agent, c.type));
  }
  SpanningVerdict back = Spans(fx1, fx2);
  CHECK_FALSE(back.spans);
  CHECK_FALSE(back.failures.empty());

  Extremes e2 = ClassifyExtremes(fx2);
  CHECK(e2.maximal);
  CHECK_FALSE(e2.minimal);
  Extremes e1 = ClassifyExtremes(fx1);
  CHECK(e1.minimal);
  CHECK(e1.rank == 1);
  CHECK(MaxSpread(fx2) == 0);
  CHECK(MaxSpread(fx1) == 1);
}

TEST_CASE("spanning pairs preserve IC on sampled vertices") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GenerateOptions opts;
    opts.seed = seed;
    opts.kind = GenerateKind::kConditionallyIndependent;
    opts.shape = {3, 3};
    opts.mixture_states = 2;
    JointDist pi = Generate(opts).pi;
    JointDist tilde = pi.IndependentCounterpart();
    REQUIRE(Spans(pi, tilde).spans);
    Mechanism x = SampleICVertex(pi, seed + 100);
    CHECK(CheckIC(x, tilde).verdict);
    ++checked;
  }
  CHECK(checked == 20);
}

TEST_CASE("full rank collapses the IC set to constants") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    GenerateOptions opts;
    opts.seed = seed;
    opts.kind = GenerateKind::kFullRank;
    opts.shape = {2 + seed % 2, 2 + seed % 2};
    JointDist pi = Generate(opts).pi;
    CHECK(ClassifyExtremes(pi).maximal);
    CHECK(MaxSpread(pi) == 0);
  }
}

}  // namespace
}  // namespace notransfer
