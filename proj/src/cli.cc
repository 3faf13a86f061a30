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

#include "notransfer/cli.h"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "notransfer/commands.h"
#include "notransfer/errors.h"
#include "notransfer/io.h"

namespace notransfer {
namespace {

struct Subcommand {
  const char* name;
  const char* help;
  std::size_t min_files;
  std::size_t max_files;
};

constexpr Subcommand kSubcommands[] = {
    {"inspect", "Marginals, rank, independence, E_pi[v] and the best constant value", 1, 1},
    {"check-ic", "Check a mechanism for incentive compatibility: INSTANCE MECHANISM", 2, 2},
    {"maximin", "Maximin value of the auxiliary zero-sum game: MECHANISM [INSTANCE]", 1, 2},
    {"spans", "Does the first distribution span the second: A B", 2, 2},
    {"classify", "Rank and extremality in the spanning preorder", 1, 1},
    {"additivity", "Project v*pi onto the additive subspace U", 1, 1},
    {"construct", "Build a profitable mechanism or certify that none exists", 1, 1},
    {"transport", "Solve the constrained optimal transport problem", 1, 1},
    {"orthogonal", "Covariance test between two equal-marginal distributions: A B", 2, 2},
    {"decompose", "Split an IC mechanism into transportation-polytope vertices", 2, 2},
    {"myo", "Best match-your-opponent mechanism", 1, 1},
    {"alloc-n", "n-agent allocation analysis (with or without disposal)", 1, 1},
    {"oracle", "Solve the principal's problem as an exact LP", 1, 1},
};

std::vector<std::size_t> ParseShape(const std::string& text) {
  std::vector<std::size_t> shape;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    if (part.empty() || !std::all_of(part.begin(), part.end(), ::isdigit)) {
      throw std::invalid_argument("shape must look like 2x3, got '" + text + "'");
    }
    shape.push_back(std::stoul(part));
  }
  if (shape.empty()) throw std::invalid_argument("empty shape");
  return shape;
}

Json Dispatch(const std::string& command, const std::vector<std::string>& files,
              const ParseOptions& options, const GenerateRequest& request) {
  if (command == "generate") return GenerateCommand(request);
  std::vector<Json> docs;
  for (const auto& f : files) docs.push_back(LoadJsonFile(f));
  if (command == "inspect") return InspectCommand(docs[0], options);
  if (command == "check-ic") return CheckICCommand(docs[0], docs[1], options);
  if (command == "maximin") {
    return MaximinCommand(docs[0], docs.size() > 1 ? docs[1] : Json(), options);
  }
  if (command == "spans") return SpansCommand(docs[0], docs[1], options);
  if (command == "classify") return ClassifyCommand(docs[0], options);
  if (command == "additivity") return AdditivityCommand(docs[0], options);
  if (command == "construct") return ConstructCommand(docs[0], options);
  if (command == "transport") return TransportCommand(docs[0], options);
  if (command == "orthogonal") return OrthogonalCommand(docs[0], docs[1], options);
  if (command == "decompose") return DecomposeCommand(docs[0], docs[1], options);
  if (command == "myo") return MatchCommand(docs[0], options);
  if (command == "alloc-n") return AllocNCommand(docs[0], options);
  if (command == "oracle") return OracleCommand(docs[0], options);
  throw std::invalid_argument("unknown command '" + command + "'");
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact analysis of mechanisms without transfers on finite type spaces",
               "notransfer"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  std::string out_path;
  std::uint64_t seed = 0;
  bool drop_zero_types = false;
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--out", out_path, "Write the report to PATH instead of stdout");
  app.add_option("--seed", seed, "Seed for generate");
  app.add_flag("--drop-zero-types", drop_zero_types,
               "Drop zero-probability types instead of rejecting them");

  std::vector<std::string> files;
  for (const auto& sub : kSubcommands) {
    CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
    cmd->add_option("files", files, "Input JSON files")
        ->required()
        ->expected(static_cast<int>(sub.min_files), static_cast<int>(sub.max_files));
  }

  GenerateRequest request;
  std::string shape;
  CLI::App* gen = app.add_subcommand("generate", "Emit a deterministic random instance");
  gen->add_option("--kind", request.kind,
                  "independent | correlated | full-rank | conditionally-independent | "
                  "unbiased-n-alloc")
      ->capture_default_str();
  gen->add_option("--shape", shape, "Type counts per agent, e.g. 3x3 or 2x2x2");
  gen->add_option("--states", request.states, "Mixture states (conditionally-independent)")
      ->capture_default_str();
  gen->add_option("--objective", request.objective, "random | additive | mixed")
      ->capture_default_str();
  gen->add_flag("--zero-mean", request.zero_mean, "Shift v so that E_pi[v] = 0");
  gen->add_option("--structure", request.structure,
                  "generic | difference-additive | private (allocations)")
      ->capture_default_str();
  gen->add_flag("--disposal", request.disposal, "Allow disposal (allocations)");
  gen->add_flag("--biased", request.biased, "Distinct expected values (allocations)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    request.seed = seed;
    if (!shape.empty()) request.shape = ParseShape(shape);
    ParseOptions options;
    options.drop_zero_types = drop_zero_types;
    Json report = Dispatch(command, files, options, request);
    const std::string text = format == "text" ? RenderText(report) : Dump(report);
    if (out_path.empty()) {
      out << text;
    } else {
      WriteTextFile(out_path, text);
    }
    return kExitOk;
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Json::exception& e) {
    err << "json error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const PreconditionError& e) {
    err << "refused: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace notransfer
