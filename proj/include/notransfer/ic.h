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

#ifndef NOTRANSFER_IC_H_
#define NOTRANSFER_IC_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "notransfer/core.h"
#include "notransfer/linalg.h"

namespace notransfer {

// E_pi[x(report, theta_-i) | theta_i = type] for one (agent, type, report).
struct InterimEntry {
  std::size_t agent = 0;
  std::size_t type = 0;
  std::size_t report = 0;
  Rational value;
};

// A misreport that strictly pays, with the interim gain over truth-telling.
struct ICViolation {
  std::size_t agent = 0;
  std::size_t type = 0;
  std::size_t report = 0;
  Rational gain;
};

struct ICReport {
  bool verdict = false;
  // Agent-major, then type, then report.
  std::vector<InterimEntry> interim;
  // E_pi[x], present when the mechanism is IC.
  std::optional<Rational> common_value;
  Rational expected_value;
  // Sorted by gain, largest first; ties by (agent, type, report).
  std::vector<ICViolation> violations;
  // Report-independent ex-ante expectation E_{pi_-i}[x(report, .)].
  bool ex_ante_indifferent = false;
  // Interim expectations equal ex-ante ones for every (type, report).
  bool uninformative = false;
  // The three routes to the verdict; they must agree.
  bool inequality_verdict = false;
  bool equality_verdict = false;
  bool split_verdict = false;
};

// Evaluates the raw truth-telling inequalities, the "every interim
// expectation equals E_pi[x]" equalities, and the ex-ante indifference /
// uninformativeness split. Throws std::logic_error if they disagree.
ICReport CheckIC(const Mechanism& x, const JointDist& pi);

// Homogeneous equality rows over the flattened mechanism (row-major
// profiles) whose solution set, intersected with [0,1], is the IC set:
//   sum_{theta_-i} pi(theta_-i | theta_i) x(report, theta_-i) - E_pi[x] = 0
// for every agent, type and report. Zero rows and exact duplicates are
// dropped.
Matrix ICConstraintBlock(const JointDist& pi);

struct SpanFailure {
  std::size_t agent = 0;
  std::size_t type = 0;
  Vec belief;  // target conditional not reachable from the spanning set
};

struct SpanCoefficientSet {
  std::size_t agent = 0;
  std::size_t type = 0;
  // tilde_pi(. | type) = sum_k alpha[k] * pi(. | k)
  Vec alpha;
};

struct SpanningVerdict {
  bool spans = false;
  std::vector<SpanFailure> failures;
  std::vector<SpanCoefficientSet> coefficients;  // filled when spans
};

// Does pi span tilde? Every conditional belief of tilde must be a linear
// combination of the conditional beliefs of pi, for both agents. Decided by
// exact rank, never by a residual threshold.
SpanningVerdict Spans(const JointDist& pi, const JointDist& tilde);

struct Extremes {
  bool maximal = false;  // full row and column rank
  bool minimal = false;  // independent
  std::size_t rank = 0;
};

Extremes ClassifyExtremes(const JointDist& pi);

}  // namespace notransfer

#endif  // NOTRANSFER_IC_H_
