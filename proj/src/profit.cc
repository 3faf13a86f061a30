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

#include "notransfer/profit.h"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

#include "notransfer/errors.h"
#include "notransfer/lp.h"

namespace notransfer {
namespace {

Matrix Elementwise(const Matrix& a, const Matrix& b, bool divide) {
  Matrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      out(r, c) = divide ? Rational(a(r, c) / b(r, c)) : Rational(a(r, c) * b(r, c));
    }
  }
  return out;
}

Matrix Divided(const Matrix& a, const Rational& s) {
  Matrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) /= s;
  }
  return out;
}

Matrix Outer(const Vec& left, const Vec& right) {
  Matrix out(left.size(), right.size());
  for (std::size_t r = 0; r < left.size(); ++r) {
    for (std::size_t c = 0; c < right.size(); ++c) out(r, c) = left[r] * right[c];
  }
  return out;
}

// Union-find over rows [0, m) and columns [m, m + n) of a support graph.
class Forest {
 public:
  explicit Forest(std::size_t nodes) : parent_(nodes) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t Find(std::size_t a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }
  bool Join(std::size_t a, std::size_t b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

using Cell = std::pair<std::size_t, std::size_t>;

// First cycle of the support graph closed in lexicographic cell order, as a
// closed walk of cells. Empty when the support is a forest.
std::vector<Cell> FindCycle(const Matrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t nodes = rows + m.cols();
  Forest forest(nodes);
  std::vector<std::vector<std::size_t>> adj(nodes);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (sgn(m(r, c)) == 0) continue;
      const std::size_t a = r;
      const std::size_t b = rows + c;
      if (forest.Join(a, b)) {
        adj[a].push_back(b);
        adj[b].push_back(a);
        continue;
      }
      // Path from column node b to row node a through earlier edges.
      std::vector<std::size_t> prev(nodes, nodes);
      std::deque<std::size_t> queue = {b};
      prev[b] = b;
      while (!queue.empty() && prev[a] == nodes) {
        std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t w : adj[u]) {
          if (prev[w] == nodes) {
            prev[w] = u;
            queue.push_back(w);
          }
        }
      }
      std::vector<Cell> cycle = {{r, c}};
      for (std::size_t u = a; u != b; u = prev[u]) {
        const std::size_t p = prev[u];
        cycle.push_back(u < rows ? Cell{u, p - rows} : Cell{p, u - rows});
      }
      return cycle;
    }
  }
  return {};
}

// Cancels support cycles of a transportation-polytope point until its
// support is a forest; the result is the vertex with that support.
Matrix CancelCycles(Matrix m) {
  for (;;) {
    std::vector<Cell> cycle = FindCycle(m);
    if (cycle.empty()) return m;
    const std::size_t smallest = static_cast<std::size_t>(
        std::min_element(cycle.begin(), cycle.end()) - cycle.begin());
    Rational step;
    bool first = true;
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      if ((k % 2) != (smallest % 2)) continue;
      const Rational& value = m(cycle[k].first, cycle[k].second);
      if (first || value < step) step = value;
      first = false;
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      Rational& cell = m(cycle[k].first, cycle[k].second);
      if ((k % 2) == (smallest % 2)) {
        cell -= step;
      } else {
        cell += step;
      }
    }
  }
}

}  // namespace

std::vector<Matrix> AdditiveGenerators(const JointDist& pi) {
  const std::size_t m = pi.rows();
  const std::size_t n = pi.cols();
  std::vector<Matrix> gens;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      Vec cond = pi.Conditional(0, b);
      Matrix g(m, n);
      for (std::size_t c = 0; c < n; ++c) g(a, c) = cond[c];
      gens.push_back(std::move(g));
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t d = 0; d < n; ++d) {
      Vec cond = pi.Conditional(1, d);
      Matrix g(m, n);
      for (std::size_t a = 0; a < m; ++a) g(a, c) = cond[a];
      gens.push_back(std::move(g));
    }
  }
  return gens;
}

AdditivityReport AdditivityTest(const Instance& inst) {
  const JointDist& pi = inst.pi;
  const std::size_t m = pi.rows();
  const std::size_t n = pi.cols();
  AdditivityReport report;
  report.w = Hadamard(inst.v(), pi.matrix());
  report.generators = AdditiveGenerators(pi);
  std::vector<Vec> flat;
  for (const auto& g : report.generators) flat.push_back(g.Flat());
  Projection proj = OrthogonalProjection(report.w.Flat(), flat);
  report.projection = Matrix::FromFlat(m, n, proj.projection);
  report.residual = Matrix::FromFlat(m, n, proj.residual);
  report.pi_additive = IsZero(proj.residual);
  report.independent = pi.IsIndependent();

  for (const auto& g : flat) {
    if (sgn(Dot(g, proj.residual)) != 0) throw std::logic_error("residual not orthogonal to U");
  }
  if (report.independent) {
    Vec left(m), right(n);
    const Matrix& v = inst.v();
    for (std::size_t a = 0; a < m; ++a) left[a] = v(a, 0);
    for (std::size_t b = 0; b < n; ++b) right[b] = v(0, b) - v(0, 0);
    bool additive = true;
    for (std::size_t a = 0; a < m && additive; ++a) {
      for (std::size_t b = 0; b < n && additive; ++b) additive = v(a, b) == left[a] + right[b];
    }
    if (additive != report.pi_additive) {
      throw std::logic_error("additivity and pi-additivity disagree under independence");
    }
    if (additive) {
      report.left_part = std::move(left);
      report.right_part = std::move(right);
    }
  }
  return report;
}

std::string ToString(ConstructionKind kind) {
  switch (kind) {
    case ConstructionKind::kConstructed:
      return "constructed";
    case ConstructionKind::kNoneCertificate:
      return "none-certificate";
    case ConstructionKind::kOracleFallback:
      return "oracle-fallback";
  }
  return "unknown";
}

ConstructionResult ConstructProfitable(const Instance& inst) {
  ConstructionResult result;
  result.expected_value = inst.ExpectedValue();
  result.additivity = AdditivityTest(inst);
  if (sgn(result.expected_value) != 0) {
    result.kind = ConstructionKind::kOracleFallback;
    result.oracle = SolvePrincipal(inst);
    result.mechanism = result.oracle->mechanism;
    result.payoff = result.oracle->value;
    result.profitable = result.oracle->profitable;
    result.ic = CheckIC(result.oracle->mechanism, inst.pi);
    return result;
  }
  if (result.additivity.pi_additive) {
    result.kind = ConstructionKind::kNoneCertificate;
    return result;
  }
  const Vec& what = result.additivity.residual.Flat();
  const Rational lo = Min(what);
  const Rational hi = Max(what);
  if (!(hi > lo)) throw std::logic_error("nonzero residual with zero sum must change sign");
  result.kind = ConstructionKind::kConstructed;
  result.step = 1 / (hi - lo);
  result.interim_value = -result.step * lo;
  Vec x(what.size());
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = result.step * (what[j] - lo);
  result.mechanism = Mechanism(Matrix::FromFlat(inst.pi.rows(), inst.pi.cols(), x));
  result.claimed_payoff = result.step * Dot(what, what);
  result.payoff = inst.pi.Expectation(Hadamard(inst.v(), result.mechanism->matrix()));
  result.ic = CheckIC(*result.mechanism, inst.pi);
  if (!result.ic->verdict || result.payoff != result.claimed_payoff ||
      *result.ic->common_value != result.interim_value) {
    throw std::logic_error("constructed mechanism fails its audit");
  }
  result.profitable = sgn(result.payoff) > 0;
  return result;
}

Matrix OrthogonalityRows(const JointDist& pi) {
  const std::size_t m = pi.rows();
  const std::size_t n = pi.cols();
  Matrix block;
  std::set<Vec> seen;
  for (std::size_t agent = 0; agent < 2; ++agent) {
    const std::size_t own = pi.num_types(agent);
    const std::size_t other = pi.num_types(1 - agent);
    const Vec& marginal = pi.marginal(agent);
    for (std::size_t t = 0; t < own; ++t) {
      Vec update(other);
      for (std::size_t o = 0; o < other; ++o) {
        update[o] = pi.Conditional(1 - agent, o)[t] - marginal[t];
      }
      for (std::size_t tp = 0; tp < own; ++tp) {
        Vec row(m * n);
        for (std::size_t o = 0; o < other; ++o) {
          row[agent == 0 ? tp * n + o : o * n + tp] = update[o];
        }
        if (IsZero(row) || !seen.insert(row).second) continue;
        block.AppendRow(row);
      }
    }
  }
  return block;
}

TransportResult TransportCriterion(const Instance& inst) {
  const JointDist& pi = inst.pi;
  const std::size_t m = pi.rows();
  const std::size_t n = pi.cols();
  TransportResult result;
  result.left_marginal = pi.marginal(0);
  result.right_marginal = pi.marginal(1);
  const Matrix product = Outer(result.left_marginal, result.right_marginal);
  result.v_hat = Elementwise(Hadamard(inst.v(), pi.matrix()), product, true);
  result.independent = pi.IsIndependent();
  if (!result.independent) result.orthogonality = OrthogonalityRows(pi);

  LinearProgram lp(m * n);
  lp.objective = result.v_hat.Flat();
  for (std::size_t a = 0; a < m; ++a) {
    Vec row(m * n);
    for (std::size_t b = 0; b < n; ++b) row[a * n + b] = 1;
    lp.AddEquality(row, result.left_marginal[a]);
  }
  for (std::size_t b = 0; b < n; ++b) {
    Vec row(m * n);
    for (std::size_t a = 0; a < m; ++a) row[a * n + b] = 1;
    lp.AddEquality(row, result.right_marginal[b]);
  }
  for (std::size_t r = 0; r < result.orthogonality.rows(); ++r) {
    lp.AddEquality(result.orthogonality.Row(r), 0);
  }
  LpSolution sol = SolveLp(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw std::logic_error("transport LP is " + ToString(sol.status) +
                           "; the product distribution is always feasible");
  }
  result.value = sol.value;
  result.optimizer = Matrix::FromFlat(m, n, sol.primal);
  result.profitable = sgn(result.value) > 0;

  bool first = true;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (sgn(result.optimizer(a, b)) == 0) continue;
      Rational ratio = product(a, b) / result.optimizer(a, b);
      if (first || ratio < result.scale) result.scale = ratio;
      first = false;
    }
  }
  Matrix x(m, n);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      x(a, b) = result.scale * result.optimizer(a, b) / product(a, b);
    }
  }
  result.implied_mechanism = Mechanism(x);
  result.implied_payoff = result.scale * result.value;
  return result;
}

bool Orthogonal(const JointDist& pi, const JointDist& tilde) {
  if (pi.rows() != tilde.rows() || pi.cols() != tilde.cols() ||
      pi.marginal(0) != tilde.marginal(0) || pi.marginal(1) != tilde.marginal(1)) {
    throw PreconditionError("orthogonality is defined for equal marginals",
                            "orthogonality-definition");
  }
  for (std::size_t agent = 0; agent < 2; ++agent) {
    const std::size_t own = pi.num_types(agent);
    const std::size_t other = pi.num_types(1 - agent);
    const Vec& marginal = pi.marginal(agent);
    const Vec& weights = pi.marginal(1 - agent);
    for (std::size_t t = 0; t < own; ++t) {
      for (std::size_t tp = 0; tp < own; ++tp) {
        Rational cov = 0;
        for (std::size_t o = 0; o < other; ++o) {
          cov += (pi.Conditional(1 - agent, o)[t] - marginal[t]) *
                 (tilde.Conditional(1 - agent, o)[tp] - marginal[tp]) * weights[o];
        }
        if (sgn(cov) != 0) return false;
      }
    }
  }
  return true;
}

Decomposition Decompose(const Mechanism& x, const Vec& left, const Vec& right) {
  if (x.rows() != left.size() || x.cols() != right.size()) {
    throw std::invalid_argument("Decompose: mechanism and marginals differ in size");
  }
  const JointDist product = JointDist::Product(left, right);
  ICReport ic = CheckIC(x, product);
  if (!ic.verdict) {
    const ICViolation& v = ic.violations.front();
    throw PreconditionError("mechanism is not IC under the product distribution: agent " +
                                std::to_string(v.agent) + " type " + std::to_string(v.type) +
                                " gains " + ToString(v.gain) + " by reporting " +
                                std::to_string(v.report),
                            "extreme-point-decomposition");
  }
  Decomposition d;
  d.f = Elementwise(product.matrix(), x.matrix(), false);
  d.q = Sum(d.f.Flat());
  if (sgn(d.q) == 0) return d;

  Matrix remainder = Divided(d.f, d.q);
  Rational mass = 1;
  while (sgn(mass) > 0) {
    Matrix vertex = CancelCycles(Divided(remainder, mass));
    Rational step;
    bool first = true;
    for (std::size_t j = 0; j < vertex.Flat().size(); ++j) {
      if (sgn(vertex.Flat()[j]) == 0) continue;
      Rational ratio = remainder.Flat()[j] / vertex.Flat()[j];
      if (first || ratio < step) step = ratio;
      first = false;
    }
    for (std::size_t r = 0; r < remainder.rows(); ++r) {
      for (std::size_t c = 0; c < remainder.cols(); ++c) remainder(r, c) -= step * vertex(r, c);
    }
    mass -= step;
    d.extremes.push_back(std::move(vertex));
    d.lambda.push_back(step);
    d.gamma.push_back(step * d.q);
  }
  return d;
}

Matrix Reconstruct(const Decomposition& d, const Vec& left, const Vec& right) {
  Matrix x(left.size(), right.size());
  for (std::size_t j = 0; j < d.extremes.size(); ++j) {
    for (std::size_t a = 0; a < left.size(); ++a) {
      for (std::size_t b = 0; b < right.size(); ++b) {
        x(a, b) += d.gamma[j] * d.extremes[j](a, b) / (left[a] * right[b]);
      }
    }
  }
  return x;
}

bool HasAcyclicSupport(const Matrix& m) { return FindCycle(m).empty(); }

bool IsTransportVertex(const Matrix& m, const Vec& left, const Vec& right) {
  if (m.rows() != left.size() || m.cols() != right.size()) return false;
  for (const auto& e : m.Flat()) {
    if (sgn(e) < 0) return false;
  }
  return m.RowSums() == left && m.ColSums() == right && HasAcyclicSupport(m);
}

Matrix NorthWestCornerVertex(const Vec& left, const Vec& right,
                             const std::vector<std::size_t>& row_order,
                             const std::vector<std::size_t>& col_order) {
  if (Sum(left) != Sum(right)) throw std::invalid_argument("marginals have different mass");
  Matrix out(left.size(), right.size());
  Vec supply = left;
  Vec demand = right;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < row_order.size() && j < col_order.size()) {
    const std::size_t r = row_order[i];
    const std::size_t c = col_order[j];
    Rational amount = std::min(supply[r], demand[c]);
    out(r, c) = amount;
    supply[r] -= amount;
    demand[c] -= amount;
    if (sgn(supply[r]) == 0) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

bool IsSupermodular(const Matrix& v) {
  for (std::size_t a = 0; a < v.rows(); ++a) {
    for (std::size_t ap = a + 1; ap < v.rows(); ++ap) {
      for (std::size_t b = 0; b < v.cols(); ++b) {
        for (std::size_t bp = b + 1; bp < v.cols(); ++bp) {
          if (v(a, b) + v(ap, bp) < v(a, bp) + v(ap, b)) return false;
        }
      }
    }
  }
  return true;
}

MatchingReport MatchYourOpponent(const Instance& inst) {
  const JointDist& pi = inst.pi;
  const std::size_t m = pi.rows();
  if (pi.cols() != m) {
    throw PreconditionError("matchings need equally many types on both sides",
                            "match-your-opponent");
  }
  if (!pi.IsIndependent()) {
    throw PreconditionError("matching analysis assumes independent types",
                            "match-your-opponent");
  }
  const Vec& pl = pi.marginal(0);
  const Vec& pr = pi.marginal(1);
  const Matrix& v = inst.v();
  Matrix weight(m, m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) weight(a, b) = pl[a] * pr[b] * v(a, b);
  }

  MatchingReport report;
  if (m <= 8) {
    report.enumerated = true;
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    bool first = true;
    do {
      Rational value = 0;
      for (std::size_t t = 0; t < m; ++t) value += weight(t, perm[t]);
      if (first || value > report.best_value) {
        report.best_value = value;
        report.best_matching = perm;
      }
      first = false;
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    // Assignment LP; basic optimal solutions of the Birkhoff polytope are
    // permutation matrices.
    LinearProgram lp(m * m);
    lp.objective = weight.Flat();
    for (std::size_t a = 0; a < m; ++a) {
      Vec row(m * m), col(m * m);
      for (std::size_t b = 0; b < m; ++b) {
        row[a * m + b] = 1;
        col[b * m + a] = 1;
      }
      lp.AddEquality(row, 1);
      lp.AddEquality(col, 1);
    }
    LpSolution sol = SolveLp(lp);
    if (sol.status != LpStatus::kOptimal) throw std::logic_error("assignment LP not optimal");
    report.best_value = sol.value;
    report.best_matching.assign(m, m);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        if (sol.primal[a * m + b] == 1) report.best_matching[a] = b;
      }
      if (report.best_matching[a] == m) {
        throw std::logic_error("assignment LP returned a fractional vertex");
      }
    }
  }

  report.symmetric = pl == pr;
  report.uniform = report.symmetric &&
                   std::all_of(pl.begin(), pl.end(), [&](const Rational& p) { return p == pl[0]; });
  report.supermodular = IsSupermodular(v);
  TransportResult transport = TransportCriterion(inst);
  report.transport_value = transport.value;
  report.profitable = transport.profitable;
  for (std::size_t t = 0; t < m; ++t) {
    report.diagonal_sum += v(t, t);
    report.weighted_diagonal += pl[t] * v(t, t);
  }
  if (report.uniform && (sgn(report.best_value) > 0) != report.profitable) {
    throw std::logic_error("uniform marginals: matching and transport verdicts disagree");
  }
  if (report.symmetric) {
    report.diagonal_criterion = sgn(report.weighted_diagonal) > 0;
    if (report.supermodular && *report.diagonal_criterion != report.profitable) {
      throw std::logic_error("supermodular objective: diagonal criterion disagrees");
    }
  }
  return report;
}

}  // namespace notransfer
