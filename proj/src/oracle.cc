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

#include "notransfer/oracle.h"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "notransfer/errors.h"
#include "notransfer/ic.h"

namespace notransfer {

LinearProgram PrincipalLp(const JointDist& pi, const Matrix& v) {
  const std::size_t cells = pi.rows() * pi.cols();
  LinearProgram lp(cells);
  for (std::size_t j = 0; j < cells; ++j) {
    lp.objective[j] = v.Flat()[j] * pi.matrix().Flat()[j];
    lp.upper[j] = Rational(1);
  }
  Matrix block = ICConstraintBlock(pi);
  for (std::size_t r = 0; r < block.rows(); ++r) lp.AddEquality(block.Row(r), 0);
  return lp;
}

PrincipalSolution SolvePrincipal(const Instance& inst) {
  LpSolution sol = SolveLp(PrincipalLp(inst.pi, inst.v()));
  if (sol.status != LpStatus::kOptimal) {
    throw std::logic_error("principal LP is " + ToString(sol.status) +
                           "; x = 0 is always feasible and the region is bounded");
  }
  PrincipalSolution out;
  out.value = sol.value;
  out.mechanism = Mechanism(Matrix::FromFlat(inst.pi.rows(), inst.pi.cols(), sol.primal));
  Rational ex_ante = inst.ExpectedValue();
  out.benchmark = sgn(ex_ante) > 0 ? ex_ante : Rational(0);
  out.profitable = out.value > out.benchmark;
  return out;
}

LinearProgram AllocationLp(const AllocationInstance& inst) {
  const std::size_t n = inst.num_agents();
  const std::size_t num_profiles = inst.num_profiles();
  Vec probs = inst.ProfileProbabilities();
  LinearProgram lp(n * num_profiles);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < num_profiles; ++p) {
      lp.objective[i * num_profiles + p] = probs[p] * inst.values[i][p];
    }
  }
  for (std::size_t p = 0; p < num_profiles; ++p) {
    Vec row(n * num_profiles);
    for (std::size_t i = 0; i < n; ++i) row[i * num_profiles + p] = 1;
    if (inst.disposal) {
      lp.AddInequality(row, 1);
    } else {
      lp.AddEquality(row, 1);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 1; t < inst.types.num_types(i); ++t) {
      Vec row(n * num_profiles);
      for (std::size_t p = 0; p < num_profiles; ++p) {
        const std::size_t ti = inst.types.Profile(p)[i];
        if (ti == t) row[i * num_profiles + p] += probs[p] / inst.marginals[i][t];
        if (ti == 0) row[i * num_profiles + p] -= probs[p] / inst.marginals[i][0];
      }
      lp.AddEquality(row, 0);
    }
  }
  return lp;
}

AllocationSolution SolveAllocation(const AllocationInstance& inst) {
  LpSolution sol = SolveLp(AllocationLp(inst));
  if (sol.status != LpStatus::kOptimal) {
    throw std::logic_error("allocation LP is " + ToString(sol.status));
  }
  const std::size_t num_profiles = inst.num_profiles();
  AllocationSolution out;
  out.value = sol.value;
  for (std::size_t i = 0; i < inst.num_agents(); ++i) {
    out.mechanism.x.emplace_back(
        sol.primal.begin() + static_cast<std::ptrdiff_t>(i * num_profiles),
        sol.primal.begin() + static_cast<std::ptrdiff_t>((i + 1) * num_profiles));
  }
  Rational vbar = inst.BestConstantValue();
  out.benchmark = inst.disposal && sgn(vbar) < 0 ? Rational(0) : vbar;
  out.profitable = out.value > out.benchmark;
  return out;
}

Rational MaxSpread(const JointDist& pi) {
  LinearProgram lp = PrincipalLp(pi, Matrix(pi.rows(), pi.cols()));
  const std::size_t cells = lp.num_vars();
  Rational best = 0;
  for (std::size_t j = 0; j < cells; ++j) {
    for (std::size_t k = 0; k < cells; ++k) {
      if (j == k) continue;
      std::fill(lp.objective.begin(), lp.objective.end(), Rational(0));
      lp.objective[j] = 1;
      lp.objective[k] = -1;
      LpSolution sol = SolveLp(lp);
      if (sol.status != LpStatus::kOptimal) throw std::logic_error("spread LP not optimal");
      if (sol.value > best) best = sol.value;
    }
  }
  return best;
}

namespace {

// mt19937_64 output is fixed by the standard, unlike the distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t Below(std::uint64_t n) { return gen_() % n; }
  long Between(long lo, long hi) {
    return lo + static_cast<long>(Below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::mt19937_64 gen_;
};

std::vector<std::string> Labels(std::size_t k) {
  std::vector<std::string> out;
  for (std::size_t t = 0; t < k; ++t) out.push_back(std::to_string(t));
  return out;
}

Vec PositiveDistribution(Rng& rng, std::size_t k) {
  const long cap = std::max<long>(1, 64 / static_cast<long>(k));
  Vec w(k);
  Rational total = 0;
  for (auto& e : w) {
    e = rng.Between(1, cap);
    total += e;
  }
  for (auto& e : w) e /= total;
  return w;
}

Matrix RandomJoint(Rng& rng, std::size_t m, std::size_t n) {
  const long cap = std::max<long>(1, 64 / static_cast<long>(m * n));
  for (;;) {
    Matrix p(m, n);
    Rational total = 0;
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        p(a, b) = rng.Between(0, cap);
        total += p(a, b);
      }
    }
    bool positive_marginals = true;
    for (const auto& s : p.RowSums()) positive_marginals = positive_marginals && sgn(s) > 0;
    for (const auto& s : p.ColSums()) positive_marginals = positive_marginals && sgn(s) > 0;
    if (!positive_marginals) continue;
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < n; ++b) p(a, b) /= total;
    }
    return p;
  }
}

Matrix RandomObjective(Rng& rng, std::size_t m, std::size_t n, bool additive) {
  Matrix v(m, n);
  if (additive) {
    Vec left(m), right(n);
    for (auto& e : left) e = rng.Between(-3, 3);
    for (auto& e : right) e = rng.Between(-3, 3);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < n; ++b) v(a, b) = left[a] + right[b];
    }
  } else {
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < n; ++b) v(a, b) = rng.Between(-4, 4);
    }
  }
  return v;
}

}  // namespace

Mechanism SampleICVertex(const JointDist& pi, std::uint64_t seed) {
  Rng rng(seed);
  Matrix v(pi.rows(), pi.cols());
  for (std::size_t a = 0; a < pi.rows(); ++a) {
    for (std::size_t b = 0; b < pi.cols(); ++b) v(a, b) = rng.Between(-4, 4);
  }
  LpSolution sol = SolveLp(PrincipalLp(pi, v));
  if (sol.status != LpStatus::kOptimal) throw std::logic_error("IC vertex LP not optimal");
  return Mechanism(Matrix::FromFlat(pi.rows(), pi.cols(), sol.primal));
}

GenerateKind ParseGenerateKind(const std::string& text) {
  if (text == "independent") return GenerateKind::kIndependent;
  if (text == "correlated") return GenerateKind::kCorrelated;
  if (text == "full-rank") return GenerateKind::kFullRank;
  if (text == "conditionally-independent") return GenerateKind::kConditionallyIndependent;
  if (text == "unbiased-n-alloc") return GenerateKind::kUnbiasedAllocation;
  throw std::invalid_argument("unknown instance kind '" + text + "'");
}

std::string ToString(GenerateKind kind) {
  switch (kind) {
    case GenerateKind::kIndependent:
      return "independent";
    case GenerateKind::kCorrelated:
      return "correlated";
    case GenerateKind::kFullRank:
      return "full-rank";
    case GenerateKind::kConditionallyIndependent:
      return "conditionally-independent";
    case GenerateKind::kUnbiasedAllocation:
      return "unbiased-n-alloc";
  }
  return "unknown";
}

Instance Generate(const GenerateOptions& options) {
  if (options.kind == GenerateKind::kUnbiasedAllocation) {
    throw std::invalid_argument("allocation instances come from GenerateAllocation");
  }
  if (options.shape.size() != 2 || options.shape[0] == 0 || options.shape[1] == 0) {
    throw std::invalid_argument("two-agent shape with positive type counts required");
  }
  const std::size_t m = options.shape[0];
  const std::size_t n = options.shape[1];
  if (m * n > 64) throw std::invalid_argument("shape too large for denominators <= 64");
  Rng rng(options.seed);

  Matrix pi;
  switch (options.kind) {
    case GenerateKind::kIndependent:
      pi = JointDist::Product(PositiveDistribution(rng, m), PositiveDistribution(rng, n))
               .matrix();
      break;
    case GenerateKind::kCorrelated:
      if (m < 2 || n < 2) {
        throw std::invalid_argument("correlation needs two or more types per agent");
      }
      do {
        pi = RandomJoint(rng, m, n);
      } while (JointDist::Create(pi).IsIndependent());
      break;
    case GenerateKind::kFullRank: {
      const std::size_t full = std::min(m, n);
      int attempts = 0;
      do {
        if (++attempts > 10000) throw std::invalid_argument("could not draw a full-rank matrix");
        pi = RandomJoint(rng, m, n);
      } while (Rank(pi) != full);
      break;
    }
    case GenerateKind::kConditionallyIndependent: {
      const std::size_t k = options.mixture_states;
      if (k == 0) throw std::invalid_argument("mixture needs at least one state");
      Vec weights = PositiveDistribution(rng, k);
      pi = Matrix(m, n);
      for (std::size_t w = 0; w < k; ++w) {
        Vec left = PositiveDistribution(rng, m);
        Vec right = PositiveDistribution(rng, n);
        for (std::size_t a = 0; a < m; ++a) {
          for (std::size_t b = 0; b < n; ++b) pi(a, b) += weights[w] * left[a] * right[b];
        }
      }
      if (Rank(pi) > k) throw std::logic_error("mixture of k products has rank above k");
      break;
    }
    case GenerateKind::kUnbiasedAllocation:
      break;
  }

  bool additive = options.objective == ObjectiveShape::kAdditive;
  if (options.objective == ObjectiveShape::kMixed) additive = rng.Below(3) == 0;
  Matrix v = RandomObjective(rng, m, n, additive);
  if (options.zero_mean) {
    Rational mean = JointDist::Create(pi).Expectation(v);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < n; ++b) v(a, b) -= mean;
    }
  }
  Instance inst = MakeInstance(TypeSpace::TwoAgent(Labels(m), Labels(n)), pi, v, Matrix(m, n),
                               ToString(options.kind) + "-" + std::to_string(options.seed));
  inst.seed = options.seed;
  return inst;
}

AllocationInstance GenerateAllocation(const AllocationGenerateOptions& options) {
  const std::size_t n = options.shape.size();
  if (n == 0) throw std::invalid_argument("at least one agent required");
  std::size_t profiles = 1;
  for (std::size_t k : options.shape) {
    if (k == 0) throw std::invalid_argument("every agent needs a type");
    profiles *= k;
  }
  if (profiles > 4096) throw std::invalid_argument("type space too large");
  Rng rng(options.seed);
  std::vector<std::string> agents;
  std::vector<std::vector<std::string>> labels;
  std::vector<Vec> marginals;
  for (std::size_t i = 0; i < n; ++i) {
    agents.push_back("a" + std::to_string(i + 1));
    labels.push_back(Labels(options.shape[i]));
    marginals.push_back(PositiveDistribution(rng, options.shape[i]));
  }
  TypeSpace types(agents, labels);

  std::vector<Vec> values(n, Vec(profiles));
  Vec common(profiles);
  if (options.structure == AllocationStructure::kDifferenceAdditive) {
    for (auto& e : common) e = rng.Between(-4, 4);
  }
  for (std::size_t i = 0; i < n; ++i) {
    Vec own(options.shape[i]);
    for (auto& e : own) e = rng.Between(-3, 3);
    for (std::size_t p = 0; p < profiles; ++p) {
      const std::size_t t = types.Profile(p)[i];
      switch (options.structure) {
        case AllocationStructure::kGeneric:
          values[i][p] = rng.Between(-4, 4);
          break;
        case AllocationStructure::kDifferenceAdditive:
          values[i][p] = own[t] + common[p];
          break;
        case AllocationStructure::kPrivateValues:
          values[i][p] = own[t];
          break;
      }
    }
  }
  AllocationInstance inst = MakeAllocationInstance(types, marginals, values, options.disposal);
  Vec probs = inst.ProfileProbabilities();
  for (std::size_t i = 0; i < n; ++i) {
    Rational shift = Dot(probs, inst.values[i]);
    if (!options.unbiased) shift -= static_cast<long>(i + 1);
    for (auto& e : inst.values[i]) e -= shift;
  }
  inst.name = "allocation-" + std::to_string(options.seed);
  inst.seed = options.seed;
  return inst;
}

}  // namespace notransfer
