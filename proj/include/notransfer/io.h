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

#ifndef NOTRANSFER_IO_H_
#define NOTRANSFER_IO_H_

#include <string>

#include "json.hpp"
#include "notransfer/core.h"
#include "notransfer/linalg.h"
#include "notransfer/nalloc.h"
#include "notransfer/rational.h"

namespace notransfer {

// Key order is preserved so that dumps are canonical.
using Json = nlohmann::ordered_json;

// Rationals are written as strings ("3/4", "-2"). On input, strings go
// through ParseRational, integers are exact, and floats are read from their
// shortest round-trip decimal form ("0.1" means 1/10).
Json ToJson(const Rational& value);
Json ToJson(const Vec& values);
Json ToJson(const Matrix& m);
Rational RationalFromJson(const Json& j, const std::string& field);
Vec VecFromJson(const Json& j, const std::string& field);
Matrix MatrixFromJson(const Json& j, const std::string& field);

struct ParseOptions {
  // Remove types with zero marginal probability instead of rejecting them.
  bool drop_zero_types = false;
};

// Two-agent schema:
//   {"name", "agents": [l, r], "types": {agent: [labels]}, "pi": [[...]],
//    "vL": [[...]], "vR": [[...]] (optional, default 0), "seed" (optional)}
// n-agent schema:
//   {"name", "agents", "types", "marginals": {agent: [...]} or a product
//    "pi" tensor, "v": {agent: tensor}, "disposal": bool}
bool IsAllocationJson(const Json& j);
Instance InstanceFromJson(const Json& j, const ParseOptions& options = {});
Json ToJson(const Instance& inst);
AllocationInstance AllocationFromJson(const Json& j, const ParseOptions& options = {});
Json ToJson(const AllocationInstance& inst);

// Accepts a bare matrix, {"x": ...}, or {"mechanism": ...} (so emitted
// reports can be fed back in).
Mechanism MechanismFromJson(const Json& j);
// Accepts {agent: tensor}, {"x": ...} or {"mechanism": ...}.
AllocationMechanism AllocationMechanismFromJson(const Json& j, const AllocationInstance& inst);
Json ToJson(const Mechanism& x);
Json MechanismToJson(const AllocationMechanism& x, const TypeSpace& types);
// Agent-major flat values as nested tensors keyed by agent.
Json TensorsToJson(const std::vector<Vec>& values, const TypeSpace& types);

Json ParseJson(const std::string& text, const std::string& source);
Json LoadJsonFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& text);
std::string Dump(const Json& j);

}  // namespace notransfer

#endif  // NOTRANSFER_IO_H_
