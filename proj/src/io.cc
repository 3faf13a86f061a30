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

#include "notransfer/io.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "notransfer/errors.h"

namespace notransfer {
namespace {

std::string Label(const Json& j, const std::string& field) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number()) return j.dump();
  throw SchemaError("type labels must be strings or numbers", field);
}

const Json& Require(const Json& j, const std::string& key, const std::string& field) {
  if (!j.is_object()) throw SchemaError("object expected", field);
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError("missing field", field.empty() ? key : field + "." + key);
  return *it;
}

TypeSpace TypesFromJson(const Json& j) {
  const Json& types = Require(j, "types", "");
  if (!types.is_object()) throw SchemaError("object keyed by agent expected", "types");
  std::vector<std::string> agents;
  if (j.contains("agents")) {
    const Json& a = j["agents"];
    if (!a.is_array()) throw SchemaError("array expected", "agents");
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i].is_string()) throw SchemaError("agent names must be strings", "agents");
      agents.push_back(a[i].get<std::string>());
    }
  } else {
    for (auto it = types.begin(); it != types.end(); ++it) agents.push_back(it.key());
  }
  std::vector<std::vector<std::string>> labels;
  for (const auto& agent : agents) {
    const std::string field = "types." + agent;
    const Json& list = Require(types, agent, "types");
    if (!list.is_array()) throw SchemaError("array of labels expected", field);
    std::vector<std::string> row;
    for (std::size_t t = 0; t < list.size(); ++t) {
      row.push_back(Label(list[t], field + "[" + std::to_string(t) + "]"));
    }
    labels.push_back(std::move(row));
  }
  if (types.size() != agents.size()) throw SchemaError("types for unknown agents", "types");
  return TypeSpace(std::move(agents), std::move(labels));
}

Json TypesToJson(const TypeSpace& types) {
  Json out = Json::object();
  for (std::size_t i = 0; i < types.num_agents(); ++i) {
    out[types.agent(i)] = types.types(i);
  }
  return out;
}

void ReadTensor(const Json& j, const std::vector<std::size_t>& shape, std::size_t depth,
                const std::string& field, Vec& out) {
  if (depth == shape.size()) {
    out.push_back(RationalFromJson(j, field));
    return;
  }
  if (!j.is_array() || j.size() != shape[depth]) {
    throw SchemaError("expected array of length " + std::to_string(shape[depth]), field);
  }
  for (std::size_t k = 0; k < j.size(); ++k) {
    ReadTensor(j[k], shape, depth + 1, field + "[" + std::to_string(k) + "]", out);
  }
}

Vec TensorFromJson(const Json& j, const std::vector<std::size_t>& shape,
                   const std::string& field) {
  Vec out;
  ReadTensor(j, shape, 0, field, out);
  return out;
}

Json WriteTensor(const Vec& flat, const std::vector<std::size_t>& shape, std::size_t depth,
                 std::size_t& pos) {
  if (depth == shape.size()) return ToJson(flat[pos++]);
  Json arr = Json::array();
  for (std::size_t k = 0; k < shape[depth]; ++k) arr.push_back(WriteTensor(flat, shape, depth + 1, pos));
  return arr;
}

Json TensorToJson(const Vec& flat, const std::vector<std::size_t>& shape) {
  std::size_t pos = 0;
  return WriteTensor(flat, shape, 0, pos);
}

std::vector<std::size_t> Positive(const Vec& marginal) {
  std::vector<std::size_t> keep;
  for (std::size_t t = 0; t < marginal.size(); ++t) {
    if (sgn(marginal[t]) > 0) keep.push_back(t);
  }
  return keep;
}

Matrix Slice(const Matrix& m, const std::vector<std::size_t>& rows,
             const std::vector<std::size_t>& cols) {
  Matrix out(rows.size(), cols.size());
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) out(a, b) = m(rows[a], cols[b]);
  }
  return out;
}

std::vector<std::string> Pick(const std::vector<std::string>& labels,
                              const std::vector<std::size_t>& keep) {
  std::vector<std::string> out;
  for (std::size_t k : keep) out.push_back(labels[k]);
  return out;
}

}  // namespace

Json ToJson(const Rational& value) { return ToString(value); }

Json ToJson(const Vec& values) {
  Json arr = Json::array();
  for (const auto& v : values) arr.push_back(ToString(v));
  return arr;
}

Json ToJson(const Matrix& m) {
  Json arr = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) arr.push_back(ToJson(m.Row(r)));
  return arr;
}

Rational RationalFromJson(const Json& j, const std::string& field) {
  try {
    if (j.is_string()) return ParseRational(j.get<std::string>());
    if (j.is_number_integer()) return ParseRational(j.dump());
    if (j.is_number_float()) return ParseRational(j.dump());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what(), field);
  }
  throw SchemaError("number or rational string expected", field);
}

Vec VecFromJson(const Json& j, const std::string& field) {
  if (!j.is_array()) throw SchemaError("array expected", field);
  Vec out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(RationalFromJson(j[k], field + "[" + std::to_string(k) + "]"));
  }
  return out;
}

Matrix MatrixFromJson(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw SchemaError("nonempty array of rows expected", field);
  std::vector<Vec> rows;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string row_field = field + "[" + std::to_string(r) + "]";
    rows.push_back(VecFromJson(j[r], row_field));
    if (rows.back().size() != rows.front().size() || rows.back().empty()) {
      throw SchemaError("ragged or empty row", row_field);
    }
  }
  return Matrix::FromRows(rows);
}

bool IsAllocationJson(const Json& j) { return j.is_object() && j.contains("v"); }

Instance InstanceFromJson(const Json& j, const ParseOptions& options) {
  if (!j.is_object()) throw SchemaError("instance must be a JSON object", "");
  if (IsAllocationJson(j)) {
    throw SchemaError("n-agent allocation instance given where a two-agent one is needed", "v");
  }
  TypeSpace types = TypesFromJson(j);
  if (types.num_agents() != 2) throw SchemaError("exactly two agents expected", "agents");
  Matrix pi = MatrixFromJson(Require(j, "pi", ""), "pi");
  Matrix left = MatrixFromJson(Require(j, "vL", ""), "vL");
  Matrix right = j.contains("vR") ? MatrixFromJson(j["vR"], "vR")
                                  : Matrix(left.rows(), left.cols());
  const std::size_t m = types.num_types(0);
  const std::size_t n = types.num_types(1);
  for (const auto& [field, mat] : {std::pair<std::string, const Matrix*>{"pi", &pi},
                                   {"vL", &left},
                                   {"vR", &right}}) {
    if (mat->rows() != m || mat->cols() != n) {
      throw SchemaError("expected " + std::to_string(m) + "x" + std::to_string(n) + " array",
                        field);
    }
  }
  if (options.drop_zero_types) {
    auto rows = Positive(pi.RowSums());
    auto cols = Positive(pi.ColSums());
    if (rows.empty() || cols.empty()) throw SchemaError("distribution has no mass", "pi");
    types = TypeSpace(types.agents(), {Pick(types.types(0), rows), Pick(types.types(1), cols)});
    pi = Slice(pi, rows, cols);
    left = Slice(left, rows, cols);
    right = Slice(right, rows, cols);
  }
  std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>()
                                                                 : "";
  Instance inst = MakeInstance(std::move(types), pi, left, right, name);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw SchemaError("nonnegative integer expected", "seed");
    inst.seed = j["seed"].get<std::uint64_t>();
  }
  return inst;
}

Json ToJson(const Instance& inst) {
  Json out = Json::object();
  out["name"] = inst.name;
  out["agents"] = inst.types.agents();
  out["types"] = TypesToJson(inst.types);
  out["pi"] = ToJson(inst.pi.matrix());
  out["vL"] = ToJson(inst.objective.raw_left);
  out["vR"] = ToJson(inst.objective.raw_right);
  if (inst.seed) out["seed"] = *inst.seed;
  return out;
}

AllocationInstance AllocationFromJson(const Json& j, const ParseOptions& options) {
  if (!j.is_object()) throw SchemaError("instance must be a JSON object", "");
  TypeSpace types = TypesFromJson(j);
  const std::size_t n = types.num_agents();
  std::vector<std::size_t> shape = types.shape();

  std::vector<Vec> marginals;
  if (j.contains("marginals")) {
    const Json& mj = j["marginals"];
    for (std::size_t i = 0; i < n; ++i) {
      const std::string field = "marginals." + types.agent(i);
      marginals.push_back(VecFromJson(Require(mj, types.agent(i), "marginals"), field));
      if (marginals.back().size() != shape[i]) {
        throw SchemaError("length differs from the agent's type count", field);
      }
    }
  } else if (j.contains("pi")) {
    Vec pi = TensorFromJson(j["pi"], shape, "pi");
    marginals.assign(n, Vec());
    for (std::size_t i = 0; i < n; ++i) marginals[i].assign(shape[i], Rational(0));
    for (std::size_t p = 0; p < pi.size(); ++p) {
      auto profile = types.Profile(p);
      for (std::size_t i = 0; i < n; ++i) marginals[i][profile[i]] += pi[p];
    }
    for (std::size_t p = 0; p < pi.size(); ++p) {
      auto profile = types.Profile(p);
      Rational product = 1;
      for (std::size_t i = 0; i < n; ++i) product *= marginals[i][profile[i]];
      if (product != pi[p]) {
        throw SchemaError("allocation instances need independent types", "pi");
      }
    }
  } else {
    throw SchemaError("missing field", "marginals");
  }

  const Json& vj = Require(j, "v", "");
  std::vector<Vec> values;
  for (std::size_t i = 0; i < n; ++i) {
    values.push_back(
        TensorFromJson(Require(vj, types.agent(i), "v"), shape, "v." + types.agent(i)));
  }
  if (vj.size() != n) throw SchemaError("values for unknown agents", "v");

  bool disposal = false;
  if (j.contains("disposal")) {
    if (!j["disposal"].is_boolean()) throw SchemaError("boolean expected", "disposal");
    disposal = j["disposal"].get<bool>();
  }

  if (options.drop_zero_types) {
    std::vector<std::vector<std::size_t>> keep;
    std::vector<std::vector<std::string>> labels;
    for (std::size_t i = 0; i < n; ++i) {
      keep.push_back(Positive(marginals[i]));
      if (keep.back().empty()) throw SchemaError("marginal has no mass", "marginals");
      labels.push_back(Pick(types.types(i), keep.back()));
      Vec kept;
      for (std::size_t t : keep.back()) kept.push_back(marginals[i][t]);
      marginals[i] = std::move(kept);
    }
    TypeSpace reduced(types.agents(), labels);
    std::vector<Vec> sliced(n, Vec(reduced.num_profiles()));
    for (std::size_t p = 0; p < reduced.num_profiles(); ++p) {
      auto profile = reduced.Profile(p);
      for (std::size_t i = 0; i < n; ++i) profile[i] = keep[i][profile[i]];
      const std::size_t old = types.Index(profile);
      for (std::size_t i = 0; i < n; ++i) sliced[i][p] = values[i][old];
    }
    types = std::move(reduced);
    values = std::move(sliced);
  }
  std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>()
                                                                 : "";
  AllocationInstance inst = MakeAllocationInstance(std::move(types), std::move(marginals),
                                                   std::move(values), disposal, name);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw SchemaError("nonnegative integer expected", "seed");
    inst.seed = j["seed"].get<std::uint64_t>();
  }
  return inst;
}

Json TensorsToJson(const std::vector<Vec>& values, const TypeSpace& types) {
  Json out = Json::object();
  for (std::size_t i = 0; i < types.num_agents(); ++i) {
    out[types.agent(i)] = TensorToJson(values[i], types.shape());
  }
  return out;
}

Json ToJson(const AllocationInstance& inst) {
  Json out = Json::object();
  out["name"] = inst.name;
  out["agents"] = inst.types.agents();
  out["types"] = TypesToJson(inst.types);
  Json marginals = Json::object();
  for (std::size_t i = 0; i < inst.num_agents(); ++i) {
    marginals[inst.types.agent(i)] = ToJson(inst.marginals[i]);
  }
  out["marginals"] = marginals;
  out["v"] = TensorsToJson(inst.values, inst.types);
  out["disposal"] = inst.disposal;
  if (inst.seed) out["seed"] = *inst.seed;
  return out;
}

Mechanism MechanismFromJson(const Json& j) {
  if (j.is_object()) {
    if (j.contains("mechanism")) return MechanismFromJson(j["mechanism"]);
    if (j.contains("x")) return Mechanism(MatrixFromJson(j["x"], "x"));
    throw SchemaError("expected a matrix or an object with \"x\" or \"mechanism\"", "x");
  }
  return Mechanism(MatrixFromJson(j, "x"));
}

AllocationMechanism AllocationMechanismFromJson(const Json& j, const AllocationInstance& inst) {
  if (!j.is_object()) throw SchemaError("object keyed by agent expected", "x");
  if (j.contains("mechanism")) return AllocationMechanismFromJson(j["mechanism"], inst);
  if (j.contains("x")) return AllocationMechanismFromJson(j["x"], inst);
  AllocationMechanism out;
  for (std::size_t i = 0; i < inst.num_agents(); ++i) {
    const std::string& agent = inst.types.agent(i);
    out.x.push_back(TensorFromJson(Require(j, agent, "x"), inst.types.shape(), "x." + agent));
  }
  return out;
}

Json ToJson(const Mechanism& x) { return ToJson(x.matrix()); }

Json MechanismToJson(const AllocationMechanism& x, const TypeSpace& types) {
  return TensorsToJson(x.x, types);
}

Json ParseJson(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw IoError(source + ": not valid JSON (" + e.what() + ")");
  }
}

Json LoadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseJson(buf.str(), path);
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace notransfer
