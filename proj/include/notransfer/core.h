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

#ifndef NOTRANSFER_CORE_H_
#define NOTRANSFER_CORE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "notransfer/linalg.h"
#include "notransfer/rational.h"

namespace notransfer {

// Labeled finite type sets. Profiles are enumerated row-major in agent
// order: the last agent's type varies fastest.
class TypeSpace {
 public:
  TypeSpace() = default;
  TypeSpace(std::vector<std::string> agents,
            std::vector<std::vector<std::string>> types);
  // Agents "l" and "r" with the given labels.
  static TypeSpace TwoAgent(std::vector<std::string> left,
                            std::vector<std::string> right);

  std::size_t num_agents() const { return agents_.size(); }
  const std::string& agent(std::size_t i) const { return agents_[i]; }
  const std::vector<std::string>& agents() const { return agents_; }
  const std::vector<std::string>& types(std::size_t i) const { return types_[i]; }
  std::size_t num_types(std::size_t i) const { return types_[i].size(); }
  std::vector<std::size_t> shape() const;
  std::size_t num_profiles() const;

  std::vector<std::size_t> Profile(std::size_t index) const;
  std::size_t Index(std::span<const std::size_t> profile) const;

  // Label parsed as a rational, if it is one ("-1", "0.5", "3/4").
  std::optional<Rational> NumericLabel(std::size_t agent, std::size_t type) const;

  friend bool operator==(const TypeSpace&, const TypeSpace&) = default;

 private:
  std::vector<std::string> agents_;
  std::vector<std::vector<std::string>> types_;
};

// Two-agent joint type distribution pi(theta_l, theta_r). Rows index the
// first agent ("l"), columns the second ("r"). Entries are nonnegative, sum
// to exactly one, and every marginal entry is strictly positive.
class JointDist {
 public:
  JointDist() = default;
  // Throws SchemaError when the matrix is not a valid distribution.
  static JointDist Create(Matrix p);
  static JointDist Product(const Vec& left, const Vec& right);

  const Matrix& matrix() const { return p_; }
  std::size_t rows() const { return p_.rows(); }
  std::size_t cols() const { return p_.cols(); }
  std::size_t num_types(std::size_t agent) const { return agent == 0 ? rows() : cols(); }
  const Rational& operator()(std::size_t a, std::size_t b) const { return p_(a, b); }

  const Vec& marginal(std::size_t agent) const { return agent == 0 ? left_ : right_; }
  // pi(. | theta_agent = type) over the other agent's types.
  Vec Conditional(std::size_t agent, std::size_t type) const;
  // Row t holds Conditional(agent, t).
  Matrix Conditionals(std::size_t agent) const;

  // sum_theta pi(theta) f(theta)
  Rational Expectation(const Matrix& f) const;
  bool IsIndependent() const;
  std::size_t MatrixRank() const;
  JointDist IndependentCounterpart() const;

  friend bool operator==(const JointDist& a, const JointDist& b) { return a.p_ == b.p_; }

 private:
  Matrix p_;
  Vec left_;
  Vec right_;
};

// Two-option mechanism: x(theta_l, theta_r) is the probability of option L.
class Mechanism {
 public:
  Mechanism() = default;
  // Throws SchemaError unless every entry lies in [0, 1].
  explicit Mechanism(Matrix x);
  static Mechanism Constant(std::size_t rows, std::size_t cols, const Rational& c);

  const Matrix& matrix() const { return x_; }
  std::size_t rows() const { return x_.rows(); }
  std::size_t cols() const { return x_.cols(); }
  const Rational& operator()(std::size_t a, std::size_t b) const { return x_(a, b); }
  bool IsConstant() const;

  friend bool operator==(const Mechanism& a, const Mechanism& b) { return a.x_ == b.x_; }

 private:
  Matrix x_;
};

// The principal's objective after the v_R = 0 normalization.
struct Objective {
  Matrix v;
  Matrix raw_left;
  Matrix raw_right;
  // True when L and R were relabeled so that E_pi[v] <= 0.
  bool swapped = false;
};

// v = vL - vR, negated (and flagged) when E_pi[v] > 0 so that R is the
// ex-ante preferred option.
Objective Normalize(const Matrix& raw_left, const Matrix& raw_right,
                    const JointDist& pi);

struct Instance {
  TypeSpace types;
  JointDist pi;
  Objective objective;
  std::string name;
  std::optional<std::uint64_t> seed;

  const Matrix& v() const { return objective.v; }
  Rational ExpectedValue() const { return pi.Expectation(objective.v); }
};

// Validates dimensions against the type space (two agents).
Instance MakeInstance(TypeSpace types, const Matrix& pi, const Matrix& raw_left,
                      const Matrix& raw_right, std::string name = "");

// Elementwise product a(i,j) * b(i,j).
Matrix Hadamard(const Matrix& a, const Matrix& b);

}  // namespace notransfer

#endif  // NOTRANSFER_CORE_H_
