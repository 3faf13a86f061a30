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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "notransfer/cli.h"
#include "notransfer/commands.h"
#include "notransfer/errors.h"
#include "notransfer/io.h"

namespace py = pybind11;

namespace notransfer {
namespace {

// Every entry point takes JSON text and returns JSON text; the Python
// wrapper handles dicts and files.
Json In(const std::string& text) { return ParseJson(text, "<python>"); }
std::string Out(const Json& report) { return Dump(report); }

ParseOptions Options(bool drop_zero_types) {
  ParseOptions options;
  options.drop_zero_types = drop_zero_types;
  return options;
}

using Unary = Json (*)(const Json&, const ParseOptions&);
using Binary = Json (*)(const Json&, const Json&, const ParseOptions&);

void DefUnary(py::module_& m, const char* name, Unary fn) {
  m.def(
      name,
      [fn](const std::string& instance, bool drop_zero_types) {
        return Out(fn(In(instance), Options(drop_zero_types)));
      },
      py::arg("instance"), py::arg("drop_zero_types") = false);
}

void DefBinary(py::module_& m, const char* name, Binary fn, const char* a, const char* b) {
  m.def(
      name,
      [fn](const std::string& first, const std::string& second, bool drop_zero_types) {
        return Out(fn(In(first), In(second), Options(drop_zero_types)));
      },
      py::arg(a), py::arg(b), py::arg("drop_zero_types") = false);
}

}  // namespace
}  // namespace notransfer

PYBIND11_MODULE(_core, m) {
  using namespace notransfer;
  m.doc() = "Exact analysis of mechanisms without transfers (JSON in, JSON out).";

  py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  DefUnary(m, "inspect", InspectCommand);
  DefBinary(m, "check_ic", CheckICCommand, "instance", "mechanism");
  m.def(
      "maximin",
      [](const std::string& mechanism, std::optional<std::string> instance,
         bool drop_zero_types) {
        return Out(MaximinCommand(In(mechanism), instance ? In(*instance) : Json(),
                                  Options(drop_zero_types)));
      },
      py::arg("mechanism"), py::arg("instance") = py::none(),
      py::arg("drop_zero_types") = false);
  DefBinary(m, "spans", SpansCommand, "a", "b");
  DefUnary(m, "classify", ClassifyCommand);
  DefUnary(m, "additivity", AdditivityCommand);
  DefUnary(m, "construct", ConstructCommand);
  DefUnary(m, "transport", TransportCommand);
  DefBinary(m, "orthogonal", OrthogonalCommand, "a", "b");
  DefBinary(m, "decompose", DecomposeCommand, "instance", "mechanism");
  DefUnary(m, "myo", MatchCommand);
  DefUnary(m, "alloc_n", AllocNCommand);
  DefUnary(m, "oracle", OracleCommand);

  m.def(
      "generate",
      [](const std::string& kind, std::vector<std::size_t> shape, std::uint64_t seed,
         std::size_t states, const std::string& objective, bool zero_mean,
         const std::string& structure, bool disposal, bool biased) {
        GenerateRequest request;
        request.kind = kind;
        request.shape = std::move(shape);
        request.seed = seed;
        request.states = states;
        request.objective = objective;
        request.zero_mean = zero_mean;
        request.structure = structure;
        request.disposal = disposal;
        request.biased = biased;
        return Out(GenerateCommand(request));
      },
      py::arg("kind") = "independent", py::arg("shape") = std::vector<std::size_t>{},
      py::arg("seed") = 0, py::arg("states") = 2, py::arg("objective") = "random",
      py::arg("zero_mean") = false, py::arg("structure") = "generic",
      py::arg("disposal") = false, py::arg("biased") = false);

  m.def("render_text", [](const std::string& report) { return RenderText(In(report)); },
        py::arg("report"));

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = Run(args, out, err);
        return std::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line front end; returns (exit_code, stdout, stderr).");
}
