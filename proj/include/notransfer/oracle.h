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

#ifndef NOTRANSFER_ORACLE_H_
#define NOTRANSFER_ORACLE_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "notransfer/core.h"
#include "notransfer/lp.h"
#include "notransfer/nalloc.h"

namespace notransfer {

// Ground truth: the principal's problem solved directly as an exact LP over
// the IC set. Nothing here goes through the characterization results.

struct PrincipalSolution {
  Rational value;
  Mechanism mechanism;
  // max(0, E_pi[v]): the best the principal can do without asking.
  Rational benchmark;
  bool profitable = false;
};

// max E_pi[v x] over 0 <= x <= 1 and the IC equality block.
LinearProgram PrincipalLp(const JointDist& pi, const Matrix& v);
PrincipalSolution SolvePrincipal(const Instance& inst);

struct AllocationSolution {
  Rational value;
  AllocationMechanism mechanism;
  // v-bar without disposal, max(0, v-bar) with disposal.
  Rational benchmark;
  bool profitable = false;
};

// Variables x_i(theta) (agent-major), feasibility sum_i x_i = 1 (or <= 1),
// and the interim constancy equalities for every agent.
LinearProgram AllocationLp(const AllocationInstance& inst);
AllocationSolution SolveAllocation(const AllocationInstance& inst);

// max over IC x and profile pairs of x(j) - x(k). Zero exactly when only
// constant mechanisms are IC.
Rational MaxSpread(const JointDist& pi);

// Vertex of the IC polytope maximizing a random integer objective.
Mechanism SampleICVertex(const JointDist& pi, std::uint64_t seed);

enum class GenerateKind {
  kIndependent,
  kCorrelated,
  kFullRank,
  kConditionallyIndependent,
  kUnbiasedAllocation,
};

GenerateKind ParseGenerateKind(const std::string& text);
std::string ToString(GenerateKind kind);

enum class ObjectiveShape { kRandom, kAdditive, kMixed };

struct GenerateOptions {
  std::uint64_t seed = 0;
  std::vector<std::size_t> shape = {2, 2};
  GenerateKind kind = GenerateKind::kIndependent;
  std::size_t mixture_states = 2;  // conditionally independent kind
  ObjectiveShape objective = ObjectiveShape::kRandom;
  // Shift v so that E_pi[v] = 0 exactly.
  bool zero_mean = false;
};

// Two-agent instance. Deterministic in the options; probabilities are built
// from integer weights with denominators at most 64. Throws
// std::invalid_argument for impossible shapes.
Instance Generate(const GenerateOptions& options);

enum class AllocationStructure { kGeneric, kDifferenceAdditive, kPrivateValues };

struct AllocationGenerateOptions {
  std::uint64_t seed = 0;
  std::vector<std::size_t> shape = {2, 2, 2};
  AllocationStructure structure = AllocationStructure::kGeneric;
  bool disposal = false;
  // Shift every v_i to mean zero; otherwise shift by distinct constants.
  bool unbiased = true;
};

AllocationInstance GenerateAllocation(const AllocationGenerateOptions& options);

}  // namespace notransfer

#endif  // NOTRANSFER_ORACLE_H_
