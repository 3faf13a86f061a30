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

#ifndef NOTRANSFER_PROFIT_H_
#define NOTRANSFER_PROFIT_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "notransfer/core.h"
#include "notransfer/ic.h"
#include "notransfer/linalg.h"
#include "notransfer/oracle.h"

namespace notransfer {

struct AdditivityReport {
  Matrix w;                      // v * pi
  std::vector<Matrix> generators;  // spanning set of U, left block first
  Matrix projection;             // u-hat
  Matrix residual;               // w-hat = w - u-hat, orthogonal to U
  bool pi_additive = false;      // residual == 0
  bool independent = false;
  // v = left(theta_l) + right(theta_r); only filled for independent pi.
  std::optional<Vec> left_part;
  std::optional<Vec> right_part;
};

// Generators 1[theta_l = a] pi(theta_r | theta_l = b) and
// 1[theta_r = c] pi(theta_l | theta_r = d) over all a, b, c, d.
std::vector<Matrix> AdditiveGenerators(const JointDist& pi);

AdditivityReport AdditivityTest(const Instance& inst);

enum class ConstructionKind { kConstructed, kNoneCertificate, kOracleFallback };

std::string ToString(ConstructionKind kind);

struct ConstructionResult {
  ConstructionKind kind = ConstructionKind::kNoneCertificate;
  Rational expected_value;  // E_pi[v]
  AdditivityReport additivity;
  // kConstructed: x = step * (w-hat - min w-hat), step = 1 / (max - min).
  Rational step;
  Rational interim_value;  // -step * min w-hat
  std::optional<Mechanism> mechanism;
  Rational claimed_payoff;  // step * sum w-hat^2
  Rational payoff;          // E_pi[v x], evaluated directly
  std::optional<ICReport> ic;
  bool profitable = false;
  // kOracleFallback only: E_pi[v] != 0, decided by the exact LP.
  std::optional<PrincipalSolution> oracle;
};

// With E_pi[v] == 0 this builds the projection mechanism or certifies that
// none exists. Otherwise it falls back to SolvePrincipal and says so in
// `kind`. Throws std::logic_error if the construction fails its own audit.
ConstructionResult ConstructProfitable(const Instance& inst);

// Rows over flattened pi-tilde (row-major):
//   sum_{theta_-i} (pi(theta_i | theta_-i) - pi_i(theta_i)) pi~(theta_i', theta_-i) = 0
// for every agent i and pair (theta_i, theta_i'). Zero and duplicate rows are
// dropped, so the block is empty for independent pi.
Matrix OrthogonalityRows(const JointDist& pi);

struct TransportResult {
  Matrix v_hat;  // v pi / (pi_l pi_r)
  Vec left_marginal;
  Vec right_marginal;
  Matrix orthogonality;
  bool independent = false;
  Rational value;
  Matrix optimizer;  // pi-tilde
  bool profitable = false;  // value > 0
  // Largest q with q pi~ <= pi_l pi_r, and the IC mechanism q pi~/(pi_l pi_r)
  // it induces. Its payoff q * value is a lower bound, not the optimum.
  Rational scale;
  Mechanism implied_mechanism;
  Rational implied_payoff;
};

// Throws std::logic_error if the LP is not optimal (pi_l pi_r is feasible
// and the polytope is bounded).
TransportResult TransportCriterion(const Instance& inst);

// Covariance test in both directions. Throws PreconditionError when the
// marginals differ.
bool Orthogonal(const JointDist& pi, const JointDist& tilde);

struct Decomposition {
  Matrix f;  // pi_l pi_r x
  Rational q;  // sum f
  std::vector<Matrix> extremes;  // vertices of the transportation polytope
  Vec lambda;  // convex weights of f / q
  Vec gamma;   // q * lambda
};

// Writes x = sum_j gamma_j pi^j / (pi_l pi_r). Throws PreconditionError if x
// is not IC under the product distribution.
Decomposition Decompose(const Mechanism& x, const Vec& left, const Vec& right);

Matrix Reconstruct(const Decomposition& d, const Vec& left, const Vec& right);

// Support graph on rows + columns is a forest.
bool HasAcyclicSupport(const Matrix& m);

// Nonnegative, exact marginals and acyclic support.
bool IsTransportVertex(const Matrix& m, const Vec& left, const Vec& right);

// North-west corner rule after permuting rows and columns.
Matrix NorthWestCornerVertex(const Vec& left, const Vec& right,
                             const std::vector<std::size_t>& row_order,
                             const std::vector<std::size_t>& col_order);

struct MatchingReport {
  std::vector<std::size_t> best_matching;  // left type t -> right type m(t)
  Rational best_value;  // sum_t pi_l(t) pi_r(m(t)) v(t, m(t))
  bool enumerated = false;
  bool uniform = false;
  bool symmetric = false;
  bool supermodular = false;
  // Decided through the independent transport problem.
  bool profitable = false;
  Rational transport_value;
  Rational diagonal_sum;       // sum_t v(t, t)
  Rational weighted_diagonal;  // sum_t pi_l(t) v(t, t), symmetric marginals
  std::optional<bool> diagonal_criterion;
};

// Requires square type spaces and independent pi (PreconditionError).
MatchingReport MatchYourOpponent(const Instance& inst);

// v(a, b) + v(a', b') >= v(a, b') + v(a', b) for a < a', b < b'.
bool IsSupermodular(const Matrix& v);

}  // namespace notransfer

#endif  // NOTRANSFER_PROFIT_H_
