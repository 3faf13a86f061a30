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

#include "notransfer/nalloc.h"

#include <stdexcept>
#include <utility>

#include "notransfer/errors.h"
#include "notransfer/linalg.h"

namespace notransfer {

Vec AllocationInstance::ProfileProbabilities() const {
  Vec probs(num_profiles());
  for (std::size_t p = 0; p < probs.size(); ++p) {
    auto profile = types.Profile(p);
    Rational pr = 1;
    for (std::size_t i = 0; i < profile.size(); ++i) pr *= marginals[i][profile[i]];
    probs[p] = pr;
  }
  return probs;
}

Rational AllocationInstance::ExpectedValue(std::size_t agent) const {
  return Dot(ProfileProbabilities(), values[agent]);
}

Rational AllocationInstance::BestConstantValue() const {
  Rational best = ExpectedValue(0);
  for (std::size_t i = 1; i < num_agents(); ++i) {
    Rational e = ExpectedValue(i);
    if (e > best) best = e;
  }
  return best;
}

bool AllocationInstance::IsUnbiased() const {
  Vec probs = ProfileProbabilities();
  Rational first = Dot(probs, values[0]);
  for (std::size_t i = 1; i < num_agents(); ++i) {
    if (Dot(probs, values[i]) != first) return false;
  }
  return true;
}

AllocationInstance MakeAllocationInstance(TypeSpace types, std::vector<Vec> marginals,
                                          std::vector<Vec> values, bool disposal,
                                          std::string name) {
  const std::size_t n = types.num_agents();
  if (marginals.size() != n) throw SchemaError("one marginal per agent required", "marginals");
  if (values.size() != n) throw SchemaError("one value tensor per agent required", "v");
  for (std::size_t i = 0; i < n; ++i) {
    const std::string field = "marginals." + types.agent(i);
    if (marginals[i].size() != types.num_types(i)) {
      throw SchemaError("length differs from the agent's type count", field);
    }
    for (const auto& p : marginals[i]) {
      if (sgn(p) <= 0) throw SchemaError("marginal entries must be strictly positive", field);
    }
    if (Sum(marginals[i]) != 1) throw SchemaError("marginal does not sum to 1", field);
    if (values[i].size() != types.num_profiles()) {
      throw SchemaError("value tensor does not match the type space", "v." + types.agent(i));
    }
  }
  AllocationInstance inst;
  inst.types = std::move(types);
  inst.marginals = std::move(marginals);
  inst.values = std::move(values);
  inst.disposal = disposal;
  inst.name = std::move(name);
  return inst;
}

AllocationICReport CheckICN(const AllocationMechanism& mech, const AllocationInstance& inst) {
  const std::size_t n = inst.num_agents();
  const std::size_t num_profiles = inst.num_profiles();
  if (mech.x.size() != n) throw SchemaError("one allocation vector per agent required", "x");
  for (std::size_t i = 0; i < n; ++i) {
    if (mech.x[i].size() != num_profiles) {
      throw SchemaError("allocation does not match the type space", "x." + inst.types.agent(i));
    }
  }
  for (std::size_t p = 0; p < num_profiles; ++p) {
    Rational total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(mech.x[i][p]) < 0) {
        throw SchemaError("negative allocation probability", "x." + inst.types.agent(i));
      }
      total += mech.x[i][p];
    }
    if (inst.disposal ? total > 1 : total != 1) {
      throw SchemaError("infeasible allocation at profile " + std::to_string(p) +
                            " (sum " + ToString(total) + ")",
                        "x");
    }
  }
  Vec probs = inst.ProfileProbabilities();
  AllocationICReport report;
  report.verdict = true;
  report.interim.assign(n, Vec());
  report.expected.assign(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    report.interim[i].assign(inst.types.num_types(i), Rational(0));
    for (std::size_t p = 0; p < num_profiles; ++p) {
      const std::size_t t = inst.types.Profile(p)[i];
      report.interim[i][t] += probs[p] * mech.x[i][p];
      report.expected[i] += probs[p] * mech.x[i][p];
    }
    for (std::size_t t = 0; t < report.interim[i].size(); ++t) {
      report.interim[i][t] /= inst.marginals[i][t];
      if (report.interim[i][t] != report.interim[i][0]) report.verdict = false;
    }
  }
  return report;
}

DifferenceAdditivity DifferenceAdditive(const AllocationInstance& inst) {
  const std::size_t n = inst.num_agents();
  if (n < 2) {
    throw PreconditionError("difference condition needs at least two agents",
                            "allocation-difference-criterion");
  }
  const std::size_t num_profiles = inst.num_profiles();
  const std::size_t last = n - 1;
  Vec probs = inst.ProfileProbabilities();
  std::vector<std::vector<std::size_t>> profiles(num_profiles);
  for (std::size_t p = 0; p < num_profiles; ++p) profiles[p] = inst.types.Profile(p);

  DifferenceAdditivity out;
  out.target.assign(last * num_profiles, Rational(0));
  for (std::size_t i = 0; i < last; ++i) {
    for (std::size_t p = 0; p < num_profiles; ++p) {
      out.target[i * num_profiles + p] = probs[p] * (inst.values[i][p] - inst.values[last][p]);
    }
  }
  // One generator per (agent, type): pi(theta) 1[theta_j = t] in agent j's
  // block for j < n, and -pi(theta) 1[theta_n = t] in every block for j = n.
  std::vector<Vec> generators;
  std::vector<std::pair<std::size_t, std::size_t>> owner;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t t = 0; t < inst.types.num_types(j); ++t) {
      Vec g(last * num_profiles);
      for (std::size_t p = 0; p < num_profiles; ++p) {
        if (profiles[p][j] != t) continue;
        if (j < last) {
          g[j * num_profiles + p] = probs[p];
        } else {
          for (std::size_t i = 0; i < last; ++i) g[i * num_profiles + p] = -probs[p];
        }
      }
      generators.push_back(std::move(g));
      owner.emplace_back(j, t);
    }
  }
  Projection proj = OrthogonalProjection(out.target, generators);
  out.residual = std::move(proj.residual);
  out.holds = IsZero(out.residual);
  if (out.holds) {
    out.u.assign(n, Vec());
    for (std::size_t j = 0; j < n; ++j) out.u[j].assign(inst.types.num_types(j), Rational(0));
    for (std::size_t g = 0; g < owner.size(); ++g) {
      out.u[owner[g].first][owner[g].second] = proj.coefficients[g];
    }
  }
  return out;
}

std::string ToString(NAllocOutcome outcome) {
  return outcome == NAllocOutcome::kConstructed ? "constructed" : "none-certificate";
}

namespace {

Rational Payoff(const AllocationInstance& inst, const AllocationMechanism& mech) {
  Vec probs = inst.ProfileProbabilities();
  Rational total = 0;
  for (std::size_t i = 0; i < inst.num_agents(); ++i) {
    for (std::size_t p = 0; p < probs.size(); ++p) {
      total += probs[p] * inst.values[i][p] * mech.x[i][p];
    }
  }
  return total;
}

}  // namespace

NAllocReport ConstructProfitableN(const AllocationInstance& inst) {
  if (inst.disposal) {
    throw PreconditionError("instance allows disposal; use the disposal reduction",
                            "allocation-difference-criterion");
  }
  const std::size_t n = inst.num_agents();
  const std::size_t num_profiles = inst.num_profiles();
  NAllocReport report;
  report.best_constant = inst.BestConstantValue();
  report.condition = DifferenceAdditive(inst);

  if (report.condition.holds) {
    // Every IC mechanism earns what some constant mechanism earns.
    report.outcome = NAllocOutcome::kNoneCertificate;
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (inst.ExpectedValue(i) > inst.ExpectedValue(best)) best = i;
    }
    report.mechanism.x.assign(n, Vec(num_profiles, Rational(0)));
    report.mechanism.x[best].assign(num_profiles, Rational(1));
    report.payoff = Payoff(inst, report.mechanism);
    report.claimed_payoff = report.best_constant;
    report.ic = CheckICN(report.mechanism, inst);
    return report;
  }
  if (!inst.IsUnbiased()) {
    throw PreconditionError(
        "principal is biased (E[v_i] differ); the construction needs equal expected values",
        "allocation-difference-criterion");
  }

  const std::size_t last = n - 1;
  const Vec& eps = report.condition.residual;
  report.residual_min = Min(eps);
  Rational max_load = 0;
  for (std::size_t p = 0; p < num_profiles; ++p) {
    Rational load = 0;
    for (std::size_t i = 0; i < last; ++i) load += eps[i * num_profiles + p] - report.residual_min;
    if (load > max_load) max_load = load;
  }
  if (sgn(max_load) == 0) throw std::logic_error("nonzero residual with zero spread");
  report.step = 1 / max_load;
  report.mechanism.x.assign(n, Vec(num_profiles, Rational(0)));
  for (std::size_t p = 0; p < num_profiles; ++p) {
    Rational used = 0;
    for (std::size_t i = 0; i < last; ++i) {
      Rational xi = report.step * (eps[i * num_profiles + p] - report.residual_min);
      report.mechanism.x[i][p] = xi;
      used += xi;
    }
    report.mechanism.x[last][p] = 1 - used;
  }
  Rational squared = 0;
  for (const auto& e : eps) squared += e * e;
  report.claimed_payoff = report.step * squared + report.best_constant;
  report.payoff = Payoff(inst, report.mechanism);
  report.ic = CheckICN(report.mechanism, inst);
  report.outcome = NAllocOutcome::kConstructed;

  if (report.payoff != report.claimed_payoff) {
    throw std::logic_error("constructed payoff differs from step * |eps|^2 + v-bar");
  }
  if (!report.ic.verdict) throw std::logic_error("constructed allocation is not IC");
  const Rational lead = -report.step * report.residual_min;
  const Rational tail = 1 + Rational(static_cast<long>(last)) * report.step * report.residual_min;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& v : report.ic.interim[i]) {
      if (v != (i < last ? lead : tail)) {
        throw std::logic_error("constructed allocation has unexpected interim values");
      }
    }
  }
  return report;
}

AllocationInstance AugmentWithDisposalAgent(const AllocationInstance& inst) {
  std::vector<std::string> agents = inst.types.agents();
  std::string dummy = "disposal";
  for (bool clash = true; clash;) {
    clash = false;
    for (const auto& a : agents) {
      if (a == dummy) {
        dummy += "_";
        clash = true;
      }
    }
  }
  std::vector<std::vector<std::string>> types;
  for (std::size_t i = 0; i < inst.num_agents(); ++i) types.push_back(inst.types.types(i));
  agents.push_back(dummy);
  types.push_back({"none"});
  std::vector<Vec> marginals = inst.marginals;
  marginals.push_back(Vec{Rational(1)});
  std::vector<Vec> values = inst.values;
  // The dummy has one type, so profile indices are unchanged.
  values.push_back(Vec(inst.num_profiles(), Rational(0)));
  return MakeAllocationInstance(TypeSpace(std::move(agents), std::move(types)),
                                std::move(marginals), std::move(values), false,
                                inst.name.empty() ? "" : inst.name + "+disposal");
}

AllocationMechanism DropDisposalAgent(const AllocationMechanism& augmented) {
  AllocationMechanism out = augmented;
  if (!out.x.empty()) out.x.pop_back();
  return out;
}

DisposalReport WithDisposal(const AllocationInstance& inst) {
  if (!inst.disposal) {
    throw PreconditionError("instance does not allow disposal", "disposal-criterion");
  }
  DisposalReport report;
  const std::size_t n = inst.num_agents();
  for (std::size_t j = 0; j < n && !report.witness_agent; ++j) {
    // Is v_j(theta_j, .) constant in theta_-j for every theta_j?
    std::vector<std::optional<Rational>> seen(inst.types.num_types(j));
    for (std::size_t p = 0; p < inst.num_profiles(); ++p) {
      const std::size_t t = inst.types.Profile(p)[j];
      if (!seen[t]) {
        seen[t] = inst.values[j][p];
      } else if (*seen[t] != inst.values[j][p]) {
        report.witness_agent = j;
        break;
      }
    }
  }
  report.interdependent = report.witness_agent.has_value();
  report.augmented = AugmentWithDisposalAgent(inst);
  report.iff_regime = inst.IsUnbiased() && sgn(inst.BestConstantValue()) == 0;
  if (report.iff_regime) {
    report.pipeline = ConstructProfitableN(report.augmented);
    const bool constructed = report.pipeline->outcome == NAllocOutcome::kConstructed;
    if (constructed != report.interdependent) {
      throw std::logic_error("disposal pipeline disagrees with the non-constancy criterion");
    }
    report.profitable = constructed;
  } else if (!report.interdependent) {
    // Necessity holds without unbiasedness.
    report.profitable = false;
  }
  return report;
}

}  // namespace notransfer
