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

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "ghzrig/error.hpp"
#include "ghzrig/strategy.hpp"
#include "ghzrig/tensor.hpp"

namespace ghzrig::cli {

enum class Command { Ideal, Verify, Classical, Sweep, Extract, Simulate };
enum class Format { Json, Csv };

struct Grid {
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;

    /// Points start, start+step, ... up to stop inclusive.
    std::vector<double> points() const;
};

struct RunConfig {
    Command command = Command::Ideal;
    std::size_t n = 1;
    std::optional<std::string> strategy_path;
    std::optional<Grid> noise;
    NoiseKind kind = NoiseKind::Rotation;
    double theta = 0.0;
    std::uint64_t seed = 0;
    double tol = Tolerance::kDefault;
    std::optional<std::string> out;
    Format format = Format::Json;
    std::size_t rounds = 100000;
    Limits limits{};
};

struct SweepRow {
    double theta = 0.0;
    double epsilon = 0.0;
    double max_keyineq_residual = 0.0;
    double max_anticommute_residual = 0.0;
    double extraction_residual = 0.0;
    double fidelity = 0.0;
    std::optional<double> bound_ratio;
};

Command command_from_string(const std::string &name);
Format format_from_string(const std::string &name);
/// "start:stop:step"; throws InvalidArgument on a malformed or empty grid.
Grid parse_grid(const std::string &text);
/// Reads the dimension-ceiling override from GHZRIG_MAX_DIM when set.
Limits limits_from_env();

/// Process exit status for an error kind.
int exit_code(ErrorKind kind);

std::vector<SweepRow> sweep(const RunConfig &config);

/// Runs one command. Results go to `out` (or the --out file); failures
/// print a single JSON line to `err` and return a nonzero status.
int run(const RunConfig &config, std::ostream &out, std::ostream &err);

/// One-line machine-readable diagnostic.
std::string diagnostic(int code, const std::string &kind, const std::string &message);

}  // namespace ghzrig::cli
