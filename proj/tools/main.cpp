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

#include <iostream>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include "cli.hpp"

using namespace ghzrig;

int main(int argc, char **argv) {
    CLI::App app{"ghzrig: augmented GHZ game and rigidity checks"};
    app.require_subcommand(1);

    cli::RunConfig config;
    std::string noise, kind = "rotation", format = "json", strategy, out;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--n", config.n, "Number of rounds")->check(CLI::PositiveNumber);
        sub->add_option("--seed", config.seed, "Random seed");
        sub->add_option("--tol", config.tol, "Validation tolerance");
        sub->add_option("--out", out, "Output file (default stdout)");
        sub->add_option("--format", format, "json or csv");
    };
    auto add_noise = [&](CLI::App *sub) {
        sub->add_option("--kind", kind, "Noise family: rotation or state-mix");
        sub->add_option("--theta", config.theta, "Noise strength applied to the ideal strategy");
    };

    auto *ideal = app.add_subcommand("ideal", "Write the ideal strategy as JSON");
    add_common(ideal);
    add_noise(ideal);
    auto *verify = app.add_subcommand("verify", "Validate, score and check relations");
    add_common(verify);
    add_noise(verify);
    verify->add_option("--strategy", strategy, "Strategy file");
    auto *classical = app.add_subcommand("classical", "Exhaustive classical value");
    add_common(classical);
    auto *sweep = app.add_subcommand("sweep", "Noise sweep over the ideal strategy");
    add_common(sweep);
    sweep->add_option("--kind", kind, "Noise family: rotation or state-mix");
    sweep->add_option("--noise", noise, "Grid start:stop:step")->required();
    auto *extract = app.add_subcommand("extract", "Run the swap-isometry extraction");
    add_common(extract);
    add_noise(extract);
    extract->add_option("--strategy", strategy, "Strategy file");
    auto *simulate = app.add_subcommand("simulate", "Monte Carlo referee");
    add_common(simulate);
    add_noise(simulate);
    simulate->add_option("--strategy", strategy, "Strategy file");
    simulate->add_option("--rounds", config.rounds, "Number of rounds played")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << cli::diagnostic(2, "invalid_argument", e.what()) << '\n';
        return 2;
    }

    try {
        config.command = cli::command_from_string(app.get_subcommands().front()->get_name());
        config.format = cli::format_from_string(format);
        config.kind = noise_kind_from_string(kind);
        config.limits = cli::limits_from_env();
        if (!noise.empty()) config.noise = cli::parse_grid(noise);
        if (!strategy.empty()) config.strategy_path = strategy;
        if (!out.empty()) config.out = out;
    } catch (const Error &e) {
        const int code = cli::exit_code(e.kind());
        std::cerr << cli::diagnostic(code, std::string(to_string(e.kind())), e.what()) << '\n';
        return code;
    }
    return cli::run(config, std::cout, std::cerr);
}
