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

#include "notransfer/core.h"

#include <set>
#include <stdexcept>
#include <utility>

#include "notransfer/errors.h"

namespace notransfer {

TypeSpace::TypeSpace(std::vector<std::string> agents,
                     std::vector<std::vector<std::string>> types)
    : agents_(std::move(agents)), types_(std::move(types)) {
  if (agents_.empty()) throw SchemaError("at least one agent required", "agents");
  if (agents_.size() != types_.size()) {
    throw SchemaError("one type list per agent required", "types");
  }
  std::set<std::string> seen_agents;
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    if (!seen_agents.insert(agents_[i]).second) {
      throw SchemaError("duplicate agent '" + agents_[i] + "'", "agents");
    }
    if (types_[i].empty()) {
      throw SchemaError("agent has no types", "types." + agents_[i]);
    }
    std::set<std::string> seen(types_[i].begin(), types_[i].end());
    if (seen.size() != types_[i].size()) {
      throw SchemaError("duplicate type label", "types." + agents_[i]);
    }
  }
}

TypeSpace TypeSpace::TwoAgent(std::vector<std::string> left,
                              std::vector<std::string> right) {
  return TypeSpace({"l", "r"}, {std::move(left), std::move(right)});
}

std::vector<std::size_t> TypeSpace::shape() const {
  std::vector<std::size_t> s;
  for (const auto& t : types_) s.push_back(t.size());
  return s;
}

std::size_t TypeSpace::num_profiles() const {
  std::size_t n = 1;
  for (const auto& t : types_) n *= t.size();
  return n;
}

std::vector<std::size_t> TypeSpace::Profile(std::size_t index) const {
  std::vector<std::size_t> p(types_.size());
  for (std::size_t i = types_.size(); i-- > 0;) {
    p[i] = index % types_[i].size();
    index /= types_[i].size();
  }
  return p;
}

std::size_t TypeSpace::Index(std::span<const std::size_t> profile) const {
  if (profile.size() != types_.size()) throw std::invalid_argument("profile arity");
  std::size_t index = 0;
  for (std::size_t i = 0; i < types_.size(); ++i) {
    index = index * types_[i].size() + profile[i];
  }
  return index;
}

std::optional<Rational> TypeSpace::NumericLabel(std::size_t agent, std::size_t type) const {
  try {
    return ParseRational(types_[agent][type]);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

JointDist JointDist::Create(Matrix p) {
  if (p.empty()) throw SchemaError("distribution must be nonempty", "pi");
  Rational total = 0;
  for (const auto& e : p.Flat()) {
    if (sgn(e) < 0) throw SchemaError("negative probability", "pi");
    total += e;
  }
  if (total != 1) {
    throw SchemaError("probabilities sum to " + ToString(total) + ", not 1", "pi");
  }
  JointDist d;
  d.left_ = p.RowSums();
  d.right_ = p.ColSums();
  for (std::size_t a = 0; a < d.left_.size(); ++a) {
    if (sgn(d.left_[a]) == 0) {
      throw SchemaError("type " + std::to_string(a) + " of agent 0 has zero marginal", "pi");
    }
  }
  for (std::size_t b = 0; b < d.right_.size(); ++b) {
    if (sgn(d.right_[b]) == 0) {
      throw SchemaError("type " + std::to_string(b) + " of agent 1 has zero marginal", "pi");
    }
  }
  d.p_ = std::move(p);
  return d;
}

JointDist JointDist::Product(const Vec& left, const Vec& right) {
  Matrix p(left.size(), right.size());
  for (std::size_t a = 0; a < left.size(); ++a) {
    for (std::size_t b = 0; b < right.size(); ++b) p(a, b) = left[a] * right[b];
  }
  return Create(std::move(p));
}

Vec JointDist::Conditional(std::size_t agent, std::size_t type) const {
  if (agent == 0) {
    Vec c = p_.Row(type);
    for (auto& e : c) e /= left_[type];
    return c;
  }
  Vec c = p_.Col(type);
  for (auto& e : c) e /= right_[type];
  return c;
}

Matrix JointDist::Conditionals(std::size_t agent) const {
  Matrix m;
  for (std::size_t t = 0; t < num_types(agent); ++t) m.AppendRow(Conditional(agent, t));
  return m;
}

Rational JointDist::Expectation(const Matrix& f) const {
  if (f.rows() != rows() || f.cols() != cols()) {
    throw std::invalid_argument("Expectation: dimension mismatch");
  }
  return Dot(p_.Flat(), f.Flat());
}

bool JointDist::IsIndependent() const {
  for (std::size_t a = 0; a < rows(); ++a) {
    for (std::size_t b = 0; b < cols(); ++b) {
      if (p_(a, b) != left_[a] * right_[b]) return false;
    }
  }
  return true;
}

std::size_t JointDist::MatrixRank() const { return Rank(p_); }

JointDist JointDist::IndependentCounterpart() const { return Product(left_, right_); }

Mechanism::Mechanism(Matrix x) : x_(std::move(x)) {
  for (const auto& e : x_.Flat()) {
    if (sgn(e) < 0 || e > 1) {
      throw SchemaError("mechanism entry " + ToString(e) + " outside [0,1]", "x");
    }
  }
}

Mechanism Mechanism::Constant(std::size_t rows, std::size_t cols, const Rational& c) {
  return Mechanism(Matrix::FromFlat(rows, cols, Vec(rows * cols, c)));
}

bool Mechanism::IsConstant() const {
  for (const auto& e : x_.Flat()) {
    if (e != x_.Flat().front()) return false;
  }
  return true;
}

Matrix Hadamard(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("Hadamard: dimension mismatch");
  }
  Vec out(a.Flat().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.Flat()[i] * b.Flat()[i];
  return Matrix::FromFlat(a.rows(), a.cols(), std::move(out));
}

Objective Normalize(const Matrix& raw_left, const Matrix& raw_right,
                    const JointDist& pi) {
  auto check = [&](const Matrix& m, const char* field) {
    if (m.rows() != pi.rows() || m.cols() != pi.cols()) {
      throw SchemaError("dimension mismatch with pi", field);
    }
  };
  check(raw_left, "vL");
  check(raw_right, "vR");
  Objective obj;
  obj.raw_left = raw_left;
  obj.raw_right = raw_right;
  obj.v = Matrix::FromFlat(raw_left.rows(), raw_left.cols(),
                           Subtract(raw_left.Flat(), raw_right.Flat()));
  if (sgn(pi.Expectation(obj.v)) > 0) {
    obj.swapped = true;
    obj.v = Matrix::FromFlat(obj.v.rows(), obj.v.cols(), Scale(obj.v.Flat(), -1));
  }
  return obj;
}

Instance MakeInstance(TypeSpace types, const Matrix& pi, const Matrix& raw_left,
                      const Matrix& raw_right, std::string name) {
  if (types.num_agents() != 2) {
    throw SchemaError("two-agent instance expected", "agents");
  }
  if (pi.rows() != types.num_types(0) || pi.cols() != types.num_types(1)) {
    throw SchemaError("dimension mismatch with types", "pi");
  }
  Instance inst;
  inst.pi = JointDist::Create(pi);
  inst.objective = Normalize(raw_left, raw_right, inst.pi);
  inst.types = std::move(types);
  inst.name = std::move(name);
  return inst;
}

}  // namespace notransfer
