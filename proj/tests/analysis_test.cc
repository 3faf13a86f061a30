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
#include "notransfer/ic.h"
#include "notransfer/nalloc.h"
#include "notransfer/oracle.h"
#include "notransfer/profit.h"
#include "test_util.h"

namespace notransfer {
namespace {

using testing::AllocationFixture;
using testing::Fixture;
using testing::M;
using testing::PiEps;
using testing::Q;
using testing::V;

Instance RandomInstance(std::uint64_t seed, GenerateKind kind, bool zero_mean,
                        ObjectiveShape objective = ObjectiveShape::kMixed) {
  GenerateOptions opts;
  opts.seed = seed;
  opts.kind = kind;
  opts.shape = {2 + seed % 3, 2 + (seed / 3) % 3};
  opts.zero_mean = zero_mean;
  opts.objective = objective;
  return Generate(opts);
}

Instance WithObjective(const Instance& inst, const Matrix& v) {
  return MakeInstance(inst.types, inst.pi.matrix(), v, Matrix(v.rows(), v.cols()), inst.name);
}

Matrix ScaleMatrix(const Matrix& m, const Rational& s) {
  return Matrix::FromFlat(m.rows(), m.cols(), Scale(m.Flat(), s));
}

TEST_CASE("additivity on FX1 and FX2") {
  AdditivityReport fx1 = AdditivityTest(Fixture("fx1"));
  CHECK_FALSE(fx1.pi_additive);
  CHECK(fx1.residual == M({{"1/4", "-1/4"}, {"-1/4", "1/4"}}));
  CHECK(fx1.independent);
  CHECK_FALSE(fx1.left_part);

  AdditivityReport fx2 = AdditivityTest(Fixture("fx2"));
  CHECK(fx2.pi_additive);
  CHECK(IsZero(fx2.residual.Flat()));

  AdditivityReport fx5 = AdditivityTest(Fixture("fx5"));
  CHECK(fx5.pi_additive);
  REQUIRE(fx5.left_part);
  REQUIRE(fx5.right_part);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      CHECK((*fx5.left_part)[a] + (*fx5.right_part)[b] == Fixture("fx5").v()(a, b));
    }
  }
}

TEST_CASE("projection residual is orthogonal to U and the projection is idempotent") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Instance inst = RandomInstance(seed, GenerateKind::kCorrelated, false);
    AdditivityReport r = AdditivityTest(inst);
    CHECK(Add(r.projection.Flat(), r.residual.Flat()) == r.w.Flat());
    std::vector<Vec> gens;
    for (const auto& g : r.generators) {
      CHECK(Dot(r.residual.Flat(), g.Flat()) == 0);
      gens.push_back(g.Flat());
    }
    Projection again = OrthogonalProjection(r.projection.Flat(), gens);
    CHECK(again.projection == r.projection.Flat());
    CHECK(IsZero(again.residual));
    CHECK(r.pi_additive == IsZero(r.residual.Flat()));
  }
}

TEST_CASE("construction on the fixtures") {
  ConstructionResult fx1 = ConstructProfitable(Fixture("fx1"));
  CHECK(fx1.kind == ConstructionKind::kConstructed);
  CHECK(fx1.step == 2);
  REQUIRE(fx1.mechanism);
  CHECK(fx1.mechanism->matrix() == M({{"1", "0"}, {"0", "1"}}));
  CHECK(fx1.payoff == Q("1/2"));
  CHECK(fx1.claimed_payoff == Q("1/2"));
  CHECK(fx1.profitable);
  REQUIRE(fx1.ic);
  CHECK(fx1.ic->verdict);
  CHECK(fx1.interim_value == Q("1/2"));

  ConstructionResult fx2 = ConstructProfitable(Fixture("fx2"));
  CHECK(fx2.kind == ConstructionKind::kOracleFallback);
  REQUIRE(fx2.oracle);
  CHECK(fx2.oracle->value == 0);
  CHECK_FALSE(fx2.profitable);

  ConstructionResult fx5 = ConstructProfitable(Fixture("fx5"));
  CHECK(fx5.kind == ConstructionKind::kNoneCertificate);
  CHECK_FALSE(fx5.profitable);
  CHECK_FALSE(fx5.mechanism);
}

TEST_CASE("zero-mean sweep: construct, additivity and oracle agree") {
  int constructed = 0, none = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Instance inst = RandomInstance(seed, seed % 3 ? GenerateKind::kIndependent
                                                  : GenerateKind::kCorrelated,
                                   true);
    REQUIRE(inst.ExpectedValue() == 0);
    ConstructionResult c = ConstructProfitable(inst);
    PrincipalSolution o = SolvePrincipal(inst);
    CHECK(c.profitable == !c.additivity.pi_additive);
    CHECK(c.profitable == o.profitable);
    if (c.kind == ConstructionKind::kConstructed) {
      ++constructed;
      Rational sq = 0;
      for (const auto& e : c.additivity.residual.Flat()) sq += e * e;
      CHECK(c.payoff == c.step * sq);
      CHECK(c.payoff <= o.value);
      CHECK(CheckIC(*c.mechanism, inst.pi).verdict);
    } else {
      ++none;
      CHECK(o.value == 0);
    }
  }
  CHECK(constructed > 5);
  CHECK(none > 5);
}

TEST_CASE("transport criterion on the fixtures") {
  TransportResult fx1 = TransportCriterion(Fixture("fx1"));
  CHECK(fx1.value == 1);
  CHECK(fx1.optimizer == M({{"1/2", "0"}, {"0", "1/2"}}));
  CHECK(fx1.profitable);
  CHECK(fx1.orthogonality.rows() == 0);
  CHECK(fx1.implied_payoff == Q("1/2"));
  CHECK(CheckIC(fx1.implied_mechanism, Fixture("fx1").pi).verdict);

  TransportResult fx2 = TransportCriterion(Fixture("fx2"));
  CHECK(fx2.value == Q("-1/2"));
  CHECK_FALSE(fx2.profitable);
  CHECK(fx2.orthogonality.rows() > 0);
  CHECK(IsZero(fx2.orthogonality.Multiply(fx2.optimizer.Flat())));

  CHECK(TransportCriterion(Fixture("fx5")).value == 0);
}

TEST_CASE("transport optimizer has exact marginals; sign matches the oracle") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Instance inst = RandomInstance(seed, seed % 2 ? GenerateKind::kIndependent
                                                  : GenerateKind::kCorrelated,
                                   seed % 4 == 0);
    TransportResult t = TransportCriterion(inst);
    CHECK(t.optimizer.RowSums() == inst.pi.marginal(0));
    CHECK(t.optimizer.ColSums() == inst.pi.marginal(1));
    if (t.orthogonality.rows() > 0) CHECK(IsZero(t.orthogonality.Multiply(t.optimizer.Flat())));
    CHECK(CheckIC(t.implied_mechanism, inst.pi).verdict);
    PrincipalSolution o = SolvePrincipal(inst);
    CHECK(t.profitable == o.profitable);
    if (t.profitable) CHECK(t.implied_payoff <= o.value);
  }
}

TEST_CASE("orthogonality test") {
  CHECK_FALSE(Orthogonal(PiEps(Q("1/8")), PiEps(Q("1/8"))));
  CHECK(Orthogonal(PiEps(Q("1/8")), PiEps(0)));
  JointDist other = JointDist::Create(M({{"1/3", "1/3"}, {"1/6", "1/6"}}));
  CHECK_THROWS_AS(Orthogonal(PiEps(0), other), PreconditionError);
}

TEST_CASE("decomposition of the constant mechanism on FX1") {
  const Vec half = V({"1/2", "1/2"});
  Decomposition d = Decompose(Mechanism::Constant(2, 2, 1), half, half);
  CHECK(d.q == 1);
  REQUIRE(d.extremes.size() == 2);
  CHECK(d.extremes[0] == M({{"0", "1/2"}, {"1/2", "0"}}));
  CHECK(d.extremes[1] == M({{"1/2", "0"}, {"0", "1/2"}}));
  CHECK(d.gamma == V({"1/2", "1/2"}));
  CHECK(Reconstruct(d, half, half) == Matrix::FromFlat(2, 2, V({"1", "1", "1", "1"})));

  Decomposition x = Decompose(Mechanism(M({{"1", "0"}, {"0", "1"}})), half, half);
  CHECK(x.q == Q("1/2"));
  CHECK(x.gamma == V({"1/2"}));

  Decomposition empty = Decompose(Mechanism::Constant(2, 2, 0), half, half);
  CHECK(empty.q == 0);
  CHECK(empty.extremes.empty());

  CHECK_THROWS_AS(Decompose(Mechanism(M({{"1", "0"}, {"0", "0"}})), half, half),
                  PreconditionError);
}

TEST_CASE("decomposition audit on sampled IC vertices") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Instance inst = RandomInstance(seed, GenerateKind::kIndependent, false);
    const Vec& l = inst.pi.marginal(0);
    const Vec& r = inst.pi.marginal(1);
    Mechanism x = SampleICVertex(inst.pi, seed);
    Decomposition d = Decompose(x, l, r);
    CHECK(Reconstruct(d, l, r) == x.matrix());
    CHECK(Sum(d.lambda) == (d.q == 0 ? Rational(0) : Rational(1)));
    for (std::size_t j = 0; j < d.extremes.size(); ++j) {
      CHECK(d.gamma[j] > 0);
      CHECK(IsTransportVertex(d.extremes[j], l, r));
      std::size_t support = 0;
      for (const auto& e : d.extremes[j].Flat()) support += e != 0;
      CHECK(support <= l.size() + r.size() - 1);
    }
  }
}

TEST_CASE("north-west corner vertices and acyclic support") {
  const Vec l = V({"1/2", "1/3", "1/6"});
  const Vec r = V({"1/4", "3/4"});
  Matrix nw = NorthWestCornerVertex(l, r, {0, 1, 2}, {0, 1});
  CHECK(nw == M({{"1/4", "1/4"}, {"0", "1/3"}, {"0", "1/6"}}));
  CHECK(IsTransportVertex(nw, l, r));
  Matrix nw2 = NorthWestCornerVertex(l, r, {2, 0, 1}, {1, 0});
  CHECK(IsTransportVertex(nw2, l, r));
  CHECK_FALSE(HasAcyclicSupport(M({{"1", "1"}, {"1", "1"}})));
  CHECK(HasAcyclicSupport(M({{"1", "1"}, {"0", "1"}})));
}

TEST_CASE("zero-mean additive shift leaves IC payoffs unchanged under independence") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Instance inst = RandomInstance(seed, GenerateKind::kIndependent, false);
    const Vec& l = inst.pi.marginal(0);
    const Vec& r = inst.pi.marginal(1);
    Vec ul(l.size()), ur(r.size());
    for (std::size_t a = 0; a < l.size(); ++a) ul[a] = Rational(static_cast<long>(a * 3 + seed % 5)) - 2;
    for (std::size_t b = 0; b < r.size(); ++b) ur[b] = 1 - Rational(static_cast<long>(b * 2));
    const Rational mean = Dot(l, ul) + Dot(r, ur);
    Matrix shifted = inst.v();
    for (std::size_t a = 0; a < l.size(); ++a) {
      for (std::size_t b = 0; b < r.size(); ++b) shifted(a, b) += ul[a] + ur[b] - mean;
    }
    Mechanism x = SampleICVertex(inst.pi, seed + 7);
    CHECK(inst.pi.Expectation(Hadamard(inst.v(), x.matrix())) ==
          inst.pi.Expectation(Hadamard(shifted, x.matrix())));
  }
}

TEST_CASE("positive scaling scales values and keeps verdicts") {
  const Rational s = Q("7/3");
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    Instance inst = RandomInstance(seed, GenerateKind::kIndependent, true);
    Instance scaled = WithObjective(inst, ScaleMatrix(inst.v(), s));
    PrincipalSolution a = SolvePrincipal(inst);
    PrincipalSolution b = SolvePrincipal(scaled);
    CHECK(b.value == s * a.value);
    CHECK(a.profitable == b.profitable);
    CHECK(TransportCriterion(scaled).value == s * TransportCriterion(inst).value);
    ConstructionResult ca = ConstructProfitable(inst);
    ConstructionResult cb = ConstructProfitable(scaled);
    CHECK(ca.kind == cb.kind);
    CHECK(cb.payoff == s * ca.payoff);
  }
}

TEST_CASE("match-your-opponent on FX3") {
  MatchingReport r = MatchYourOpponent(Fixture("fx3"));
  CHECK(r.best_matching == std::vector<std::size_t>{0, 1, 2});
  CHECK(r.best_value == Q("2/9"));
  CHECK(r.enumerated);
  CHECK(r.uniform);
  CHECK(r.symmetric);
  CHECK(r.supermodular);
  CHECK(r.diagonal_sum == 2);
  CHECK(r.diagonal_criterion == true);
  CHECK(r.profitable);
  CHECK(SolvePrincipal(Fixture("fx3")).profitable);
  CHECK_THROWS_AS(MatchYourOpponent(Fixture("fx2")), PreconditionError);
}

TEST_CASE("supermodularity by 2x2 minors") {
  CHECK(IsSupermodular(M({{"1", "0", "-1"}, {"0", "0", "0"}, {"-1", "0", "1"}})));
  CHECK_FALSE(IsSupermodular(M({{"0", "1"}, {"1", "0"}})));
}

TEST_CASE("conditionally independent instances have rank at most k") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GenerateOptions opts;
    opts.seed = seed;
    opts.kind = GenerateKind::kConditionallyIndependent;
    opts.shape = {4, 4};
    opts.mixture_states = 1 + seed % 3;
    CHECK(Generate(opts).pi.MatrixRank() <= opts.mixture_states);
  }
}

TEST_CASE("oracle optimizers pass the IC check and generators are deterministic") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Instance inst = RandomInstance(seed, GenerateKind::kCorrelated, false);
    PrincipalSolution s = SolvePrincipal(inst);
    CHECK(CheckIC(s.mechanism, inst.pi).verdict);
    CHECK(inst.pi.Expectation(Hadamard(inst.v(), s.mechanism.matrix())) == s.value);
    CHECK(s.value >= s.benchmark);
    Instance again = RandomInstance(seed, GenerateKind::kCorrelated, false);
    CHECK(again.pi == inst.pi);
    CHECK(again.v() == inst.v());
    for (const auto& e : inst.pi.matrix().Flat()) CHECK(e.get_den() <= 64);
  }
  GenerateOptions bad;
  bad.kind = GenerateKind::kCorrelated;
  bad.shape = {1, 3};
  CHECK_THROWS_AS(Generate(bad), std::invalid_argument);
}

// n-agent allocation

AllocationInstance Fx1AsAllocation() {
  TypeSpace ts({"l", "r"}, {{"-1", "1"}, {"-1", "1"}});
  return MakeAllocationInstance(ts, {V({"1/2", "1/2"}), V({"1/2", "1/2"})},
                                {V({"1", "-1", "-1", "1"}), V({"0", "0", "0", "0"})}, false,
                                "fx1-alloc");
}

void CheckFeasible(const AllocationMechanism& x, const AllocationInstance& inst, bool exact) {
  for (std::size_t k = 0; k < inst.num_profiles(); ++k) {
    Rational total = 0;
    for (const auto& xi : x.x) {
      CHECK(xi[k] >= 0);
      total += xi[k];
    }
    if (exact) {
      CHECK(total == 1);
    } else {
      CHECK(total <= 1);
    }
  }
}

Rational Payoff(const AllocationMechanism& x, const AllocationInstance& inst) {
  const Vec p = inst.ProfileProbabilities();
  Rational total = 0;
  for (std::size_t i = 0; i < inst.num_agents(); ++i) {
    for (std::size_t k = 0; k < p.size(); ++k) total += p[k] * inst.values[i][k] * x.x[i][k];
  }
  return total;
}

TEST_CASE("FX4: difference condition fails and the construction is profitable") {
  AllocationInstance fx4 = AllocationFixture("fx4");
  CHECK(fx4.IsUnbiased());
  CHECK(fx4.BestConstantValue() == 0);
  DifferenceAdditivity d = DifferenceAdditive(fx4);
  CHECK_FALSE(d.holds);
  NAllocReport r = ConstructProfitableN(fx4);
  REQUIRE(r.outcome == NAllocOutcome::kConstructed);
  CHECK(r.ic.verdict);
  CHECK(CheckICN(r.mechanism, fx4).verdict);
  CheckFeasible(r.mechanism, fx4, true);
  Rational sq = 0;
  for (const auto& e : d.residual) sq += e * e;
  CHECK(r.claimed_payoff == r.step * sq + r.best_constant);
  CHECK(r.payoff == Payoff(r.mechanism, fx4));
  CHECK(r.payoff == r.claimed_payoff);
  CHECK(r.payoff > 0);
  AllocationSolution o = SolveAllocation(fx4);
  CHECK(o.profitable);
  CHECK(o.value == Q("3/4"));
  CHECK(r.payoff <= o.value);
}

TEST_CASE("two-agent embedding of FX1") {
  AllocationInstance inst = Fx1AsAllocation();
  NAllocReport r = ConstructProfitableN(inst);
  REQUIRE(r.outcome == NAllocOutcome::kConstructed);
  CHECK(r.step == 2);
  CHECK(r.payoff == Q("1/2"));
  CHECK(SolveAllocation(inst).value == Q("1/2"));
}

TEST_CASE("private values yield a none-certificate") {
  AllocationInstance inst = AllocationFixture("private-values");
  DifferenceAdditivity d = DifferenceAdditive(inst);
  CHECK(d.holds);
  NAllocReport r = ConstructProfitableN(inst);
  CHECK(r.outcome == NAllocOutcome::kNoneCertificate);
  CHECK(r.payoff == r.best_constant);
  CHECK_FALSE(SolveAllocation(inst).profitable);
  // u reproduces the pairwise differences against the last agent.
  REQUIRE(d.u.size() == 3);
}

TEST_CASE("biased instances outside the difference regime are refused") {
  AllocationGenerateOptions opts;
  opts.seed = 3;
  opts.unbiased = false;
  AllocationInstance inst = GenerateAllocation(opts);
  REQUIRE_FALSE(inst.IsUnbiased());
  if (!DifferenceAdditive(inst).holds) {
    CHECK_THROWS_AS(ConstructProfitableN(inst), PreconditionError);
  }
  CHECK_THROWS_AS(ConstructProfitableN(AllocationFixture("fx4-disposal")), PreconditionError);
}

TEST_CASE("disposal reduces to the dummy-agent pipeline verbatim") {
  AllocationInstance fx4d = AllocationFixture("fx4-disposal");
  DisposalReport d = WithDisposal(fx4d);
  CHECK(d.iff_regime);
  CHECK(d.interdependent);
  CHECK(d.profitable == true);
  REQUIRE(d.pipeline);
  CHECK(*d.pipeline == ConstructProfitableN(AugmentWithDisposalAgent(fx4d)));
  CHECK(d.augmented.num_agents() == 4);
  AllocationMechanism back = DropDisposalAgent(d.pipeline->mechanism);
  CHECK(back.x.size() == 3);
  CheckFeasible(back, fx4d, false);
  CHECK(CheckICN(back, fx4d).verdict);
  CHECK(SolveAllocation(fx4d).profitable);

  AllocationInstance priv = AllocationFixture("private-values");
  priv.disposal = true;
  DisposalReport p = WithDisposal(priv);
  CHECK_FALSE(p.interdependent);
  CHECK(p.profitable == false);
}

TEST_CASE("random unbiased allocations agree with the oracle") {
  int profitable = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    AllocationGenerateOptions opts;
    opts.seed = seed;
    opts.shape = seed % 2 ? std::vector<std::size_t>{2, 3}
                          : std::vector<std::size_t>{2, 2, 2};
    opts.structure = static_cast<AllocationStructure>(seed % 3);
    opts.disposal = seed % 4 == 1;
    AllocationInstance inst = GenerateAllocation(opts);
    AllocationSolution o = SolveAllocation(inst);
    CHECK(CheckICN(o.mechanism, inst).verdict);
    CheckFeasible(o.mechanism, inst, !inst.disposal);
    if (inst.disposal) {
      DisposalReport d = WithDisposal(inst);
      if (d.profitable) CHECK(*d.profitable == o.profitable);
    } else {
      NAllocReport r = ConstructProfitableN(inst);
      const bool constructed = r.outcome == NAllocOutcome::kConstructed;
      CHECK(constructed == o.profitable);
      if (constructed) {
        CheckFeasible(r.mechanism, inst, true);
        CHECK(r.payoff == Payoff(r.mechanism, inst));
      }
    }
    profitable += o.profitable;
  }
  CHECK(profitable > 5);
}

TEST_CASE("difference-additive biased instances never beat the best constant") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    AllocationGenerateOptions opts;
    opts.seed = seed;
    opts.structure = AllocationStructure::kDifferenceAdditive;
    opts.unbiased = false;
    AllocationInstance inst = GenerateAllocation(opts);
    REQUIRE(DifferenceAdditive(inst).holds);
    AllocationSolution o = SolveAllocation(inst);
    CHECK(o.value == inst.BestConstantValue());
    CHECK(ConstructProfitableN(inst).outcome == NAllocOutcome::kNoneCertificate);
  }
}

TEST_CASE("allocation instances are validated") {
  TypeSpace ts({"a", "b"}, {{"0", "1"}, {"0", "1"}});
  CHECK_THROWS_AS(MakeAllocationInstance(ts, {V({"1/2", "1/2"}), V({"1", "0"})},
                                         {V({"0", "0", "0", "0"}), V({"0", "0", "0", "0"})},
                                         false),
                  SchemaError);
  CHECK_THROWS_AS(MakeAllocationInstance(ts, {V({"1/2", "1/2"}), V({"1/2", "1/2"})},
                                         {V({"0", "0", "0"}), V({"0", "0", "0", "0"})}, false),
                  SchemaError);
  AllocationInstance fx4 = AllocationFixture("fx4");
  AllocationMechanism bad{{V({"1", "0", "0", "0", "0", "0", "0", "0"}),
                           V({"0", "0", "0", "0", "0", "0", "0", "0"}),
                           V({"0", "0", "0", "0", "0", "0", "0", "0"})}};
  CHECK_THROWS_AS(CheckICN(bad, fx4), SchemaError);
}

}  // namespace
}  // namespace notransfer
