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

#include "notransfer/ic.h"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

namespace notransfer {
namespace {

// x(report, theta_-i) seen from `agent` as a vector over the opponent's types.
Vec ReportSection(const Matrix& x, std::size_t agent, std::size_t report) {
  return agent == 0 ? x.Row(report) : x.Col(report);
}

}  // namespace

ICReport CheckIC(const Mechanism& mech, const JointDist& pi) {
  const Matrix& x = mech.matrix();
  if (x.rows() != pi.rows() || x.cols() != pi.cols()) {
    throw std::invalid_argument("CheckIC: mechanism and distribution dimensions differ");
  }
  ICReport report;
  report.expected_value = pi.Expectation(x);
  report.inequality_verdict = true;
  report.equality_verdict = true;
  report.ex_ante_indifferent = true;
  report.uninformative = true;

  for (std::size_t agent = 0; agent < 2; ++agent) {
    const std::size_t k = pi.num_types(agent);
    const Vec& other = pi.marginal(1 - agent);
    Vec ex_ante(k);
    for (std::size_t rep = 0; rep < k; ++rep) {
      ex_ante[rep] = Dot(other, ReportSection(x, agent, rep));
      if (ex_ante[rep] != ex_ante[0]) report.ex_ante_indifferent = false;
    }
    for (std::size_t type = 0; type < k; ++type) {
      Vec belief = pi.Conditional(agent, type);
      Vec interim(k);
      for (std::size_t rep = 0; rep < k; ++rep) {
        interim[rep] = Dot(belief, ReportSection(x, agent, rep));
        report.interim.push_back({agent, type, rep, interim[rep]});
        if (interim[rep] != report.expected_value) report.equality_verdict = false;
        if (interim[rep] != ex_ante[rep]) report.uninformative = false;
      }
      for (std::size_t rep = 0; rep < k; ++rep) {
        // Agent 0 wants x high, agent 1 wants x low.
        Rational gain = agent == 0 ? Rational(interim[rep] - interim[type])
                                   : Rational(interim[type] - interim[rep]);
        if (sgn(gain) > 0) {
          report.inequality_verdict = false;
          report.violations.push_back({agent, type, rep, gain});
        }
      }
    }
  }
  report.split_verdict = report.ex_ante_indifferent && report.uninformative;
  if (report.inequality_verdict != report.equality_verdict ||
      report.inequality_verdict != report.split_verdict) {
    throw std::logic_error("IC characterizations disagree");
  }
  report.verdict = report.inequality_verdict;
  if (report.verdict) report.common_value = report.expected_value;
  std::sort(report.violations.begin(), report.violations.end(),
            [](const ICViolation& a, const ICViolation& b) {
              if (a.gain != b.gain) return a.gain > b.gain;
              return std::tie(a.agent, a.type, a.report) <
                     std::tie(b.agent, b.type, b.report);
            });
  return report;
}

Matrix ICConstraintBlock(const JointDist& pi) {
  const std::size_t rows = pi.rows();
  const std::size_t cols = pi.cols();
  Matrix block;
  std::set<Vec> seen;
  for (std::size_t agent = 0; agent < 2; ++agent) {
    const std::size_t k = pi.num_types(agent);
    for (std::size_t type = 0; type < k; ++type) {
      Vec belief = pi.Conditional(agent, type);
      for (std::size_t rep = 0; rep < k; ++rep) {
        Vec row(rows * cols);
        for (std::size_t j = 0; j < row.size(); ++j) row[j] = -pi.matrix().Flat()[j];
        for (std::size_t o = 0; o < belief.size(); ++o) {
          const std::size_t idx = agent == 0 ? rep * cols + o : o * cols + rep;
          row[idx] += belief[o];
        }
        if (IsZero(row) || !seen.insert(row).second) continue;
        block.AppendRow(row);
      }
    }
  }
  return block;
}

SpanningVerdict Spans(const JointDist& pi, const JointDist& tilde) {
  if (pi.rows() != tilde.rows() || pi.cols() != tilde.cols()) {
    throw std::invalid_argument("Spans: distributions live on different type spaces");
  }
  SpanningVerdict verdict;
  for (std::size_t agent = 0; agent < 2; ++agent) {
    std::vector<Vec> generators;
    for (std::size_t t = 0; t < pi.num_types(agent); ++t) {
      generators.push_back(pi.Conditional(agent, t));
    }
    for (std::size_t t = 0; t < tilde.num_types(agent); ++t) {
      Vec target = tilde.Conditional(agent, t);
      auto alpha = SpanCoefficients(target, generators);
      if (alpha) {
        verdict.coefficients.push_back({agent, t, *alpha});
      } else {
        verdict.failures.push_back({agent, t, target});
      }
    }
  }
  verdict.spans = verdict.failures.empty();
  if (!verdict.spans) verdict.coefficients.clear();
  return verdict;
}

Extremes ClassifyExtremes(const JointDist& pi) {
  Extremes e;
  e.rank = pi.MatrixRank();
  e.maximal = e.rank == std::min(pi.rows(), pi.cols());
  e.minimal = e.rank == 1;
  return e;
}

}  // namespace notransfer
