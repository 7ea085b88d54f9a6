// Copyright 2026 The ghzrig Authors
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

#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "ghzrig/diagram.hpp"
#include "ghzrig/game.hpp"
#include "ghzrig/rigidity.hpp"
#include "ghzrig/strategy.hpp"
#include "ghzrig/tensor.hpp"

namespace ghzrig::io {

using Json = nlohmann::json;

// Every reader throws Error(ErrorKind::Schema) naming the offending JSON
// path, e.g. "$.singles[3].matrix.entries[2]".

/// Complex numbers are [re, im].
Json to_json(Complex z);
Complex complex_from_json(const Json &j, const std::string &path = "$");

/// {"rows": r, "cols": c, "entries": [[re, im], ...]} in row-major order.
Json to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const Json &j, const std::string &path = "$");

Json to_json(const StateVector &psi);
StateVector state_from_json(const Json &j, const std::string &path = "$");

/// Rounds are 1-based. Every single and every ordered pair must be present.
Json to_json(const Strategy &s);
Strategy strategy_from_json(const Json &j, const Limits &limits = {});

Json to_json(const InputCombo &input);
InputCombo input_from_json(const Json &j, std::size_t n, const std::string &path = "$");
Json to_json(const OutputCombo &output);
OutputCombo output_from_json(const Json &j, const std::string &path = "$");

Json to_json(const Box &box);
Box box_from_json(const Json &j, const std::string &path = "$");
Json to_json(const Diagram &d);
Diagram diagram_from_json(const Json &j);

Json to_json(const ValidationReport &report);
Json to_json(const ExtractionResult &result, bool include_vector = false);
Json to_json(const RelationReport &report);

/// Parses a file; I/O failures are InvalidArgument, bad JSON is Schema.
Json read_file(const std::filesystem::path &path);
void write_file(const std::filesystem::path &path, const Json &j);

}  // namespace ghzrig::io
