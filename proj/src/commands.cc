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

#include "notransfer/commands.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "notransfer/errors.h"
#include "notransfer/game.h"
#include "notransfer/ic.h"
#include "notransfer/nalloc.h"
#include "notransfer/oracle.h"
#include "notransfer/profit.h"

namespace notransfer {
namespace {

constexpr std::size_t kMaxSpreadCells = 36;

Json Header(const std::string& command, const std::string& basis, const std::string& name) {
  Json out = Json::object();
  out["command"] = command;
  out["basis"] = basis;
  out["instance"] = name;
  return out;
}

// A distribution-only document (types + pi) is accepted wherever only pi
// matters; a zero objective is filled in.
Instance DistributionInstance(const Json& j, const ParseOptions& options) {
  if (j.is_object() && !j.contains("vL") && j.contains("pi")) {
    Json copy = j;
    Matrix pi = MatrixFromJson(j["pi"], "pi");
    copy["vL"] = ToJson(Matrix(pi.rows(), pi.cols()));
    return InstanceFromJson(copy, options);
  }
  return InstanceFromJson(j, options);
}

const std::string& TypeLabel(const TypeSpace& types, std::size_t agent, std::size_t type) {
  return types.types(agent)[type];
}

Json LabelsJson(const TypeSpace& types) {
  Json out = Json::object();
  for (std::size_t i = 0; i < types.num_agents(); ++i) out[types.agent(i)] = types.types(i);
  return out;
}

Json MarginalsJson(const TypeSpace& types, const std::vector<Vec>& marginals) {
  Json out = Json::object();
  for (std::size_t i = 0; i < types.num_agents(); ++i) {
    out[types.agent(i)] = ToJson(marginals[i]);
  }
  return out;
}

Json IcJson(const ICReport& ic, const TypeSpace& types) {
  Json out = Json::object();
  out["verdict"] = ic.verdict;
  out["expected_value"] = ToJson(ic.expected_value);
  out["common_value"] = ic.common_value ? ToJson(*ic.common_value) : Json();
  out["ex_ante_indifferent"] = ic.ex_ante_indifferent;
  out["uninformative"] = ic.uninformative;
  Json violations = Json::array();
  for (const auto& v : ic.violations) {
    violations.push_back({{"agent", types.agent(v.agent)},
                          {"type", TypeLabel(types, v.agent, v.type)},
                          {"report", TypeLabel(types, v.agent, v.report)},
                          {"gain", ToJson(v.gain)}});
  }
  out["violations"] = violations;
  Json interim = Json::array();
  for (const auto& e : ic.interim) {
    interim.push_back({{"agent", types.agent(e.agent)},
                       {"type", TypeLabel(types, e.agent, e.type)},
                       {"report", TypeLabel(types, e.agent, e.report)},
                       {"value", ToJson(e.value)}});
  }
  out["interim"] = interim;
  return out;
}

Json ObedienceJson(const ObedienceReport& ob, const TypeSpace& types) {
  Json out = Json::object();
  out["obedient"] = ob.obedient;
  Json violations = Json::array();
  for (const auto& v : ob.violations) {
    violations.push_back({{"agent", types.agent(v.agent)},
                          {"recommended", TypeLabel(types, v.agent, v.recommended)},
                          {"deviation", TypeLabel(types, v.agent, v.deviation)},
                          {"gain", ToJson(v.gain)}});
  }
  out["violations"] = violations;
  return out;
}

Json MaximinJson(const MaximinSolution& s) {
  return {{"value", ToJson(s.value)},
          {"row_strategy", ToJson(s.row_strategy)},
          {"col_strategy", ToJson(s.col_strategy)}};
}

Json AllocationIcJson(const AllocationICReport& ic, const TypeSpace& types) {
  Json out = Json::object();
  out["verdict"] = ic.verdict;
  Json interim = Json::object();
  Json expected = Json::object();
  for (std::size_t i = 0; i < types.num_agents(); ++i) {
    Json row = Json::object();
    for (std::size_t t = 0; t < types.num_types(i); ++t) {
      row[TypeLabel(types, i, t)] = ToJson(ic.interim[i][t]);
    }
    interim[types.agent(i)] = row;
    expected[types.agent(i)] = ToJson(ic.expected[i]);
  }
  out["interim"] = interim;
  out["expected"] = expected;
  return out;
}

Json ConditionJson(const DifferenceAdditivity& d, const AllocationInstance& inst) {
  const std::size_t n = inst.num_agents();
  const std::size_t profiles = inst.num_profiles();
  Json out = Json::object();
  out["holds"] = d.holds;
  Json residual = Json::object();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Vec part(d.residual.begin() + static_cast<std::ptrdiff_t>(i * profiles),
             d.residual.begin() + static_cast<std::ptrdiff_t>((i + 1) * profiles));
    residual[inst.types.agent(i)] = ToJson(part);
  }
  out["residual"] = residual;
  if (d.holds) {
    Json u = Json::object();
    for (std::size_t i = 0; i < n; ++i) u[inst.types.agent(i)] = ToJson(d.u[i]);
    out["u"] = u;
  }
  return out;
}

Json NAllocJson(const NAllocReport& r, const AllocationInstance& inst) {
  Json out = Json::object();
  out["outcome"] = ToString(r.outcome);
  out["best_constant"] = ToJson(r.best_constant);
  out["condition"] = ConditionJson(r.condition, inst);
  if (r.outcome == NAllocOutcome::kConstructed) {
    out["residual_min"] = ToJson(r.residual_min);
    out["step"] = ToJson(r.step);
  }
  out["mechanism"] = MechanismToJson(r.mechanism, inst.types);
  out["claimed_payoff"] = ToJson(r.claimed_payoff);
  out["payoff"] = ToJson(r.payoff);
  out["ic"] = AllocationIcJson(r.ic, inst.types);
  return out;
}

Json AllocationOracleJson(const AllocationSolution& s, const AllocationInstance& inst) {
  return {{"value", ToJson(s.value)},
          {"benchmark", ToJson(s.benchmark)},
          {"profitable", s.profitable},
          {"mechanism", MechanismToJson(s.mechanism, inst.types)}};
}

Json InspectAllocation(const AllocationInstance& inst) {
  Json out = Header("inspect", "instance-summary", inst.name);
  out["agents"] = inst.types.agents();
  out["types"] = LabelsJson(inst.types);
  out["marginals"] = MarginalsJson(inst.types, inst.marginals);
  out["independent"] = true;
  Json expected = Json::object();
  for (std::size_t i = 0; i < inst.num_agents(); ++i) {
    expected[inst.types.agent(i)] = ToJson(inst.ExpectedValue(i));
  }
  out["expected_values"] = expected;
  out["best_constant"] = ToJson(inst.BestConstantValue());
  out["unbiased"] = inst.IsUnbiased();
  out["disposal"] = inst.disposal;
  return out;
}

}  // namespace

Json InspectCommand(const Json& instance, const ParseOptions& options) {
  if (IsAllocationJson(instance)) return InspectAllocation(AllocationFromJson(instance, options));
  Instance inst = InstanceFromJson(instance, options);
  Json out = Header("inspect", "instance-summary", inst.name);
  out["agents"] = inst.types.agents();
  out["types"] = LabelsJson(inst.types);
  out["marginals"] = MarginalsJson(inst.types, {inst.pi.marginal(0), inst.pi.marginal(1)});
  out["rank"] = inst.pi.MatrixRank();
  out["independent"] = inst.pi.IsIndependent();
  out["v"] = ToJson(inst.v());
  out["swapped"] = inst.objective.swapped;
  const Rational ev = inst.ExpectedValue();
  out["expected_value"] = ToJson(ev);
  out["best_constant"] = ToJson(sgn(ev) > 0 ? ev : Rational(0));
  return out;
}

Json CheckICCommand(const Json& instance, const Json& mechanism, const ParseOptions& options) {
  if (IsAllocationJson(instance)) {
    AllocationInstance inst = AllocationFromJson(instance, options);
    AllocationMechanism x = AllocationMechanismFromJson(mechanism, inst);
    Json out = Header("check-ic", "allocation-interim-constancy", inst.name);
    Json ic = AllocationIcJson(CheckICN(x, inst), inst.types);
    for (auto it = ic.begin(); it != ic.end(); ++it) out[it.key()] = it.value();
    return out;
  }
  Instance inst = InstanceFromJson(instance, options);
  Mechanism x = MechanismFromJson(mechanism);
  ICReport ic = CheckIC(x, inst.pi);
  Json out = Header("check-ic", "interim-equality-characterization", inst.name);
  Json body = IcJson(ic, inst.types);
  for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
  MaximinSolution game = Maximin(x.matrix());
  out["maximin_value"] = ToJson(game.value);
  out["obedience"] = ObedienceJson(ObedienceCheck(x.matrix(), inst.pi), inst.types);
  return out;
}

Json MaximinCommand(const Json& mechanism, const Json& instance, const ParseOptions& options) {
  Mechanism x = MechanismFromJson(mechanism);
  MaximinSolution game = Maximin(x.matrix());
  Json out = Header("maximin", "auxiliary-zero-sum-game", "");
  Json body = MaximinJson(game);
  for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
  out["minimax_value"] = ToJson(MinimaxValue(x.matrix()));
  out["saddle_point"] = IsNashEquilibrium(x.matrix(), game);
  if (!instance.is_null()) {
    Instance inst = DistributionInstance(instance, options);
    out["instance"] = inst.name;
    ICReport ic = CheckIC(x, inst.pi);
    out["obedience"] = ObedienceJson(ObedienceCheck(x.matrix(), inst.pi), inst.types);
    out["ic_verdict"] = ic.verdict;
    bool all_equal = true;
    for (const auto& e : ic.interim) all_equal = all_equal && e.value == game.value;
    out["interim_equals_maximin"] = all_equal;
  }
  return out;
}

Json SpansCommand(const Json& a, const Json& b, const ParseOptions& options) {
  Instance pa = DistributionInstance(a, options);
  Instance pb = DistributionInstance(b, options);
  SpanningVerdict verdict = Spans(pa.pi, pb.pi);
  Json out = Header("spans", "spanning-inclusion", pa.name);
  out["target"] = pb.name;
  out["spans"] = verdict.spans;
  Json failures = Json::array();
  for (const auto& f : verdict.failures) {
    failures.push_back({{"agent", pb.types.agent(f.agent)},
                        {"type", TypeLabel(pb.types, f.agent, f.type)},
                        {"belief", ToJson(f.belief)}});
  }
  out["failures"] = failures;
  Json coefficients = Json::array();
  for (const auto& c : verdict.coefficients) {
    coefficients.push_back({{"agent", pb.types.agent(c.agent)},
                            {"type", TypeLabel(pb.types, c.agent, c.type)},
                            {"alpha", ToJson(c.alpha)}});
  }
  out["coefficients"] = coefficients;
  out["ic_inclusion"] = verdict.spans;
  return out;
}

Json ClassifyCommand(const Json& instance, const ParseOptions& options) {
  Instance inst = DistributionInstance(instance, options);
  Extremes e = ClassifyExtremes(inst.pi);
  Json out = Header("classify", "spanning-extremes", inst.name);
  out["rank"] = e.rank;
  out["maximal"] = e.maximal;
  out["minimal"] = e.minimal;
  out["only_constants_ic"] = e.maximal;
  if (inst.pi.rows() * inst.pi.cols() <= kMaxSpreadCells) {
    Rational spread = MaxSpread(inst.pi);
    out["max_spread"] = ToJson(spread);
    if ((sgn(spread) == 0) != e.maximal) {
      throw std::logic_error("full rank and constant-only IC set disagree");
    }
  } else {
    out["max_spread"] = Json();
  }
  return out;
}

Json AdditivityCommand(const Json& instance, const ParseOptions& options) {
  Instance inst = InstanceFromJson(instance, options);
  AdditivityReport r = AdditivityTest(inst);
  Json out = Header("additivity", "pi-additivity-criterion", inst.name);
  out["pi_additive"] = r.pi_additive;
  out["independent"] = r.independent;
  out["w"] = ToJson(r.w);
  out["projection"] = ToJson(r.projection);
  out["residual"] = ToJson(r.residual);
  out["generators"] = r.generators.size();
  out["left_part"] = r.left_part ? ToJson(*r.left_part) : Json();
  out["right_part"] = r.right_part ? ToJson(*r.right_part) : Json();
  return out;
}

Json ConstructCommand(const Json& instance, const ParseOptions& options) {
  Instance inst = InstanceFromJson(instance, options);
  ConstructionResult r = ConstructProfitable(inst);
  const bool fallback = r.kind == ConstructionKind::kOracleFallback;
  Json out = Header("construct", fallback ? "oracle-lp" : "projection-construction", inst.name);
  out["kind"] = ToString(r.kind);
  out["expected_value"] = ToJson(r.expected_value);
  out["pi_additive"] = r.additivity.pi_additive;
  if (fallback) {
    out["note"] = "E_pi[v] is nonzero; the additivity criterion is only necessary here, so the "
                  "exact LP decides";
  }
  if (r.kind == ConstructionKind::kConstructed) {
    out["step"] = ToJson(r.step);
    out["interim_value"] = ToJson(r.interim_value);
    out["claimed_payoff"] = ToJson(r.claimed_payoff);
  }
  out["mechanism"] = r.mechanism ? ToJson(*r.mechanism) : Json();
  out["payoff"] = ToJson(r.payoff);
  out["ic_verdict"] = r.ic ? Json(r.ic->verdict) : Json();
  out["profitable"] = r.profitable;
  return out;
}

Json TransportCommand(const Json& instance, const ParseOptions& options) {
  Instance inst = InstanceFromJson(instance, options);
  TransportResult r = TransportCriterion(inst);
  Json out = Header("transport", "transport-criterion", inst.name);
  out["independent"] = r.independent;
  out["v_hat"] = ToJson(r.v_hat);
  out["orthogonality_rows"] = r.orthogonality.rows();
  out["value"] = ToJson(r.value);
  out["optimizer"] = ToJson(r.optimizer);
  out["profitable"] = r.profitable;
  out["scale"] = ToJson(r.scale);
  out["implied_mechanism"] = ToJson(r.implied_mechanism);
  out["implied_payoff"] = ToJson(r.implied_payoff);
  return out;
}

Json OrthogonalCommand(const Json& a, const Json& b, const ParseOptions& options) {
  Instance pa = DistributionInstance(a, options);
  Instance pb = DistributionInstance(b, options);
  Json out = Header("orthogonal", "orthogonality-definition", pa.name);
  out["target"] = pb.name;
  out["orthogonal"] = Orthogonal(pa.pi, pb.pi);
  return out;
}

Json DecomposeCommand(const Json& instance, const Json& mechanism, const ParseOptions& options) {
  Instance inst = DistributionInstance(instance, options);
  Mechanism x = MechanismFromJson(mechanism);
  const Vec& left = inst.pi.marginal(0);
  const Vec& right = inst.pi.marginal(1);
  Decomposition d = Decompose(x, left, right);
  Json out = Header("decompose", "extreme-point-decomposition", inst.name);
  out["f"] = ToJson(d.f);
  out["q"] = ToJson(d.q);
  Json terms = Json::array();
  for (std::size_t j = 0; j < d.extremes.size(); ++j) {
    std::size_t support = 0;
    for (const auto& e : d.extremes[j].Flat()) support += sgn(e) != 0 ? 1 : 0;
    terms.push_back({{"gamma", ToJson(d.gamma[j])},
                     {"lambda", ToJson(d.lambda[j])},
                     {"support", support},
                     {"vertex", IsTransportVertex(d.extremes[j], left, right)},
                     {"extreme", ToJson(d.extremes[j])}});
  }
  out["terms"] = terms;
  out["exact_reconstruction"] = Reconstruct(d, left, right) == x.matrix();
  return out;
}

Json MatchCommand(const Json& instance, const ParseOptions& options) {
  Instance inst = InstanceFromJson(instance, options);
  MatchingReport r = MatchYourOpponent(inst);
  Json out = Header("myo", "match-your-opponent", inst.name);
  Json matching = Json::array();
  for (std::size_t t = 0; t < r.best_matching.size(); ++t) {
    matching.push_back({{"left", TypeLabel(inst.types, 0, t)},
                        {"right", TypeLabel(inst.types, 1, r.best_matching[t])}});
  }
  out["best_matching"] = matching;
  out["best_value"] = ToJson(r.best_value);
  out["enumerated"] = r.enumerated;
  out["uniform"] = r.uniform;
  out["symmetric"] = r.symmetric;
  out["supermodular"] = r.supermodular;
  out["transport_value"] = ToJson(r.transport_value);
  out["profitable"] = r.profitable;
  out["diagonal_sum"] = ToJson(r.diagonal_sum);
  out["weighted_diagonal"] = ToJson(r.weighted_diagonal);
  out["diagonal_criterion"] = r.diagonal_criterion ? Json(*r.diagonal_criterion) : Json();
  out["diagonal_criterion_asserted"] = r.symmetric && r.supermodular;
  return out;
}

Json AllocNCommand(const Json& instance, const ParseOptions& options) {
  AllocationInstance inst = AllocationFromJson(instance, options);
  AllocationSolution oracle = SolveAllocation(inst);
  Json out = Header("alloc-n", "", inst.name);
  out["agents"] = inst.num_agents();
  out["disposal"] = inst.disposal;
  out["unbiased"] = inst.IsUnbiased();
  out["best_constant"] = ToJson(inst.BestConstantValue());
  std::optional<bool> verdict;
  std::string basis;

  if (inst.disposal) {
    DisposalReport r = WithDisposal(inst);
    out["iff_regime"] = r.iff_regime;
    out["interdependent"] = r.interdependent;
    out["witness_agent"] = r.witness_agent ? Json(inst.types.agent(*r.witness_agent)) : Json();
    if (r.pipeline) out["pipeline"] = NAllocJson(*r.pipeline, r.augmented);
    if (r.profitable) {
      verdict = *r.profitable;
      basis = "disposal-criterion";
    }
  } else if (inst.num_agents() >= 2) {
    DifferenceAdditivity condition = DifferenceAdditive(inst);
    if (condition.holds || inst.IsUnbiased()) {
      NAllocReport r = ConstructProfitableN(inst);
      out["pipeline"] = NAllocJson(r, inst);
      verdict = r.outcome == NAllocOutcome::kConstructed;
      basis = "allocation-difference-criterion";
    } else {
      out["condition"] = ConditionJson(condition, inst);
    }
  }
  if (!verdict) {
    basis = "oracle-lp";
    out["outside_characterization"] = true;
    verdict = oracle.profitable;
  } else {
    out["outside_characterization"] = false;
  }
  out["basis"] = basis;
  out["profitable"] = *verdict;
  out["oracle"] = AllocationOracleJson(oracle, inst);
  out["oracle_agrees"] = oracle.profitable == *verdict;
  return out;
}

Json OracleCommand(const Json& instance, const ParseOptions& options) {
  if (IsAllocationJson(instance)) {
    AllocationInstance inst = AllocationFromJson(instance, options);
    AllocationSolution s = SolveAllocation(inst);
    Json out = Header("oracle", "oracle-lp", inst.name);
    Json body = AllocationOracleJson(s, inst);
    for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
    out["ic_verdict"] = CheckICN(s.mechanism, inst).verdict;
    return out;
  }
  Instance inst = InstanceFromJson(instance, options);
  PrincipalSolution s = SolvePrincipal(inst);
  Json out = Header("oracle", "oracle-lp", inst.name);
  out["value"] = ToJson(s.value);
  out["benchmark"] = ToJson(s.benchmark);
  out["profitable"] = s.profitable;
  out["mechanism"] = ToJson(s.mechanism);
  out["ic_verdict"] = CheckIC(s.mechanism, inst.pi).verdict;
  return out;
}

Json GenerateCommand(const GenerateRequest& request) {
  GenerateKind kind = ParseGenerateKind(request.kind);
  if (kind == GenerateKind::kUnbiasedAllocation) {
    AllocationGenerateOptions options;
    options.seed = request.seed;
    if (!request.shape.empty()) options.shape = request.shape;
    if (request.structure == "generic") {
      options.structure = AllocationStructure::kGeneric;
    } else if (request.structure == "difference-additive") {
      options.structure = AllocationStructure::kDifferenceAdditive;
    } else if (request.structure == "private") {
      options.structure = AllocationStructure::kPrivateValues;
    } else {
      throw std::invalid_argument("unknown structure '" + request.structure + "'");
    }
    options.disposal = request.disposal;
    options.unbiased = !request.biased;
    return ToJson(GenerateAllocation(options));
  }
  GenerateOptions options;
  options.seed = request.seed;
  options.kind = kind;
  if (!request.shape.empty()) options.shape = request.shape;
  options.mixture_states = request.states;
  if (request.objective == "random") {
    options.objective = ObjectiveShape::kRandom;
  } else if (request.objective == "additive") {
    options.objective = ObjectiveShape::kAdditive;
  } else if (request.objective == "mixed") {
    options.objective = ObjectiveShape::kMixed;
  } else {
    throw std::invalid_argument("unknown objective shape '" + request.objective + "'");
  }
  options.zero_mean = request.zero_mean;
  return ToJson(Generate(options));
}

namespace {

std::string Scalar(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  return j.dump();
}

bool IsScalar(const Json& j) { return !j.is_array() && !j.is_object(); }

bool IsScalarRow(const Json& j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), IsScalar);
}

bool IsFlatRecord(const Json& j) {
  if (!j.is_object()) return false;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!IsScalar(it.value()) && !IsScalarRow(it.value())) return false;
  }
  return true;
}

std::string Cell(const Json& j) {
  if (IsScalar(j)) return Scalar(j);
  std::string out = "[";
  for (std::size_t k = 0; k < j.size(); ++k) out += (k ? " " : "") + Scalar(j[k]);
  return out + "]";
}

void Table(std::ostringstream& os, const std::string& indent,
           const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : rows) {
    os << indent;
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << (c ? "  " : "") << row[c];
      if (c + 1 < row.size()) os << std::string(width[c] - row[c].size(), ' ');
    }
    os << "\n";
  }
}

void Render(std::ostringstream& os, const Json& j, const std::string& indent) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& value = it.value();
    if (IsScalar(value) || IsScalarRow(value)) {
      os << indent << it.key() << ": " << Cell(value) << "\n";
    } else if (value.is_array() && std::all_of(value.begin(), value.end(), IsScalarRow)) {
      os << indent << it.key() << ":\n";
      std::vector<std::vector<std::string>> rows;
      for (const auto& row : value) {
        rows.emplace_back();
        for (const auto& e : row) rows.back().push_back(Scalar(e));
      }
      Table(os, indent + "  ", rows);
    } else if (value.is_array() && std::all_of(value.begin(), value.end(), IsFlatRecord)) {
      os << indent << it.key() << ": " << value.size() << " entries\n";
      if (value.empty()) continue;
      std::vector<std::vector<std::string>> rows(1);
      for (auto f = value[0].begin(); f != value[0].end(); ++f) rows[0].push_back(f.key());
      for (const auto& rec : value) {
        rows.emplace_back();
        for (auto f = rec.begin(); f != rec.end(); ++f) rows.back().push_back(Cell(f.value()));
      }
      Table(os, indent + "  ", rows);
    } else if (value.is_object()) {
      os << indent << it.key() << ":\n";
      Render(os, value, indent + "  ");
    } else {
      os << indent << it.key() << ": " << value.dump() << "\n";
    }
  }
}

}  // namespace

std::string RenderText(const Json& report) {
  std::ostringstream os;
  if (report.is_object()) {
    Render(os, report, "");
  } else {
    os << report.dump(2) << "\n";
  }
  return os.str();
}

}  // namespace notransfer
