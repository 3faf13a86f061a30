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

#ifndef NOTRANSFER_RATIONAL_H_
#define NOTRANSFER_RATIONAL_H_

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace notransfer {

// Every probability, payoff and mechanism entry in the library is an exact
// rational. There is no tolerance anywhere.
using Rational = mpq_class;
using Vec = std::vector<Rational>;

// Parses "3", "-1/4", "0.25", "1.5e-2". Decimal text is converted exactly.
// Throws std::invalid_argument on malformed input or a zero denominator.
Rational ParseRational(std::string_view text);

// Canonical form: "p/q" in lowest terms, or "p" when q == 1.
std::string ToString(const Rational& value);

Rational Dot(const Vec& a, const Vec& b);
Rational Sum(const Vec& a);
bool IsZero(const Vec& a);
Rational Min(const Vec& a);
Rational Max(const Vec& a);

Vec Add(const Vec& a, const Vec& b);
Vec Subtract(const Vec& a, const Vec& b);
Vec Scale(const Vec& a, const Rational& s);

}  // namespace notransfer

#endif  // NOTRANSFER_RATIONAL_H_
