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

#ifndef NOTRANSFER_NALLOC_H_
#define NOTRANSFER_NALLOC_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "notransfer/core.h"
#include "notransfer/rational.h"

namespace notransfer {

// Allocation of one good among n agents with independent types. Values and
// mechanisms are stored per agent as flat vectors over the profiles of
// `types` (row-major, last agent fastest).
struct AllocationInstance {
  TypeSpace types;
  std::vector<Vec> marginals;
  std::vector<Vec> values;
  bool disposal = false;
  std::string name;
  std::optional<std::uint64_t> seed;

  std::size_t num_agents() const { return types.num_agents(); }
  std::size_t num_profiles() const { return types.num_profiles(); }
  Vec ProfileProbabilities() const;
  Rational ExpectedValue(std::size_t agent) const;
  // max_i E[v_i]
  Rational BestConstantValue() const;
  // E[v_i] identical across agents.
  bool IsUnbiased() const;
};

// Throws SchemaError on dimension mismatches, non-distributions or zero
// marginal entries.
AllocationInstance MakeAllocationInstance(TypeSpace types, std::vector<Vec> marginals,
                                          std::vector<Vec> values, bool disposal,
                                          std::string name = "");

struct AllocationMechanism {
  std::vector<Vec> x;  // x[agent][profile]
  friend bool operator==(const AllocationMechanism&, const AllocationMechanism&) = default;
};

struct AllocationICReport {
  bool verdict = false;
  // interim[agent][type] = E[x_agent(type, theta_-agent)]
  std::vector<Vec> interim;
  Vec expected;  // E[x_agent]
  friend bool operator==(const AllocationICReport&, const AllocationICReport&) = default;
};

// Throws SchemaError if x is not feasible for the instance (negative entry,
// or allocation sum not 1 without disposal / above 1 with disposal).
AllocationICReport CheckICN(const AllocationMechanism& x, const AllocationInstance& inst);

struct DifferenceAdditivity {
  bool holds = false;
  // Target pi(theta)(v_i - v_n) and its projection residual over the space
  // of functions on {agents except the last} x profiles, flattened agent-major.
  Vec target;
  Vec residual;
  // u[agent][type] with v_i - v_n = u_i(theta_i) - u_n(theta_n), when holds.
  std::vector<Vec> u;
  friend bool operator==(const DifferenceAdditivity&, const DifferenceAdditivity&) = default;
};

// Projects the pairwise value differences against the last agent onto the
// subspace W spanned by one generator per (agent, type). Requires n >= 2.
DifferenceAdditivity DifferenceAdditive(const AllocationInstance& inst);

enum class NAllocOutcome { kConstructed, kNoneCertificate };

std::string ToString(NAllocOutcome outcome);

struct NAllocReport {
  NAllocOutcome outcome = NAllocOutcome::kNoneCertificate;
  Rational best_constant;  // v-bar
  DifferenceAdditivity condition;
  // Construction (kConstructed): shifted residual z = eps - min eps and the
  // largest step keeping sum_{i<n} x_i <= 1.
  Rational residual_min;
  Rational step;
  AllocationMechanism mechanism;
  Rational claimed_payoff;  // step * sum eps^2 + v-bar
  Rational payoff;          // evaluated directly from the mechanism
  AllocationICReport ic;
  friend bool operator==(const NAllocReport&, const NAllocReport&) = default;
};

// No-disposal construction. If the difference condition holds, returns a
// none-certificate (the best constant allocation) whether or not the
// principal is unbiased. Otherwise requires an unbiased principal and
// throws PreconditionError for biased instances or disposal instances.
NAllocReport ConstructProfitableN(const AllocationInstance& inst);

// Appends a dummy agent with a single type, zero value, and disposal off.
AllocationInstance AugmentWithDisposalAgent(const AllocationInstance& inst);

struct DisposalReport {
  // Unbiased with v-bar == 0: the non-constancy criterion is an iff.
  bool iff_regime = false;
  // Some agent's value depends on the other agents' types.
  bool interdependent = false;
  std::optional<std::size_t> witness_agent;
  // Decided profitability; unset outside the iff regime unless every value
  // is private (then not profitable).
  std::optional<bool> profitable;
  AllocationInstance augmented;
  // The no-disposal pipeline on the augmented instance (iff regime only).
  std::optional<NAllocReport> pipeline;
};

DisposalReport WithDisposal(const AllocationInstance& inst);

// Maps an augmented-instance mechanism back to the original agents; the
// dummy agent's share is the disposal probability.
AllocationMechanism DropDisposalAgent(const AllocationMechanism& augmented);

}  // namespace notransfer

#endif  // NOTRANSFER_NALLOC_H_
