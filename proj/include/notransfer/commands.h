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

#ifndef NOTRANSFER_COMMANDS_H_
#define NOTRANSFER_COMMANDS_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "notransfer/io.h"

namespace notransfer {

// One function per CLI subcommand. Inputs are parsed JSON documents, outputs
// are JSON reports with exact rationals as strings and a "basis" field naming
// the result each verdict rests on. Errors propagate as SchemaError,
// PreconditionError or IoError.

Json InspectCommand(const Json& instance, const ParseOptions& options = {});
Json CheckICCommand(const Json& instance, const Json& mechanism,
                    const ParseOptions& options = {});
// `instance` may be null; with it the report adds the obedience check and the
// interim-versus-maximin comparison.
Json MaximinCommand(const Json& mechanism, const Json& instance,
                    const ParseOptions& options = {});
Json SpansCommand(const Json& a, const Json& b, const ParseOptions& options = {});
Json ClassifyCommand(const Json& instance, const ParseOptions& options = {});
Json AdditivityCommand(const Json& instance, const ParseOptions& options = {});
Json ConstructCommand(const Json& instance, const ParseOptions& options = {});
Json TransportCommand(const Json& instance, const ParseOptions& options = {});
Json OrthogonalCommand(const Json& a, const Json& b, const ParseOptions& options = {});
Json DecomposeCommand(const Json& instance, const Json& mechanism,
                      const ParseOptions& options = {});
Json MatchCommand(const Json& instance, const ParseOptions& options = {});
Json AllocNCommand(const Json& instance, const ParseOptions& options = {});
Json OracleCommand(const Json& instance, const ParseOptions& options = {});

struct GenerateRequest {
  std::string kind = "independent";
  std::vector<std::size_t> shape;  // empty: 2x2, or 2x2x2 for allocations
  std::uint64_t seed = 0;
  std::size_t states = 2;
  std::string objective = "random";  // random | additive | mixed
  bool zero_mean = false;
  std::string structure = "generic";  // generic | difference-additive | private
  bool disposal = false;
  bool biased = false;
};

// Emits an instance document, not a report.
Json GenerateCommand(const GenerateRequest& request);

// Human-readable rendering of any report: scalars as "key: value", matrices
// and record lists as aligned tables.
std::string RenderText(const Json& report);

}  // namespace notransfer

#endif  // NOTRANSFER_COMMANDS_H_
