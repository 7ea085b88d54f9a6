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

#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ghzrig/game.hpp"
#include "ghzrig/io.hpp"
#include "ghzrig/random.hpp"
#include "ghzrig/rigidity.hpp"

namespace ghzrig::cli {

namespace {

using io::Json;

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string opt_num(const std::optional<double> &x) { return x ? num(*x) : ""; }

Json opt_json(const std::optional<double> &x) { return x ? Json(*x) : Json(nullptr); }

Strategy load_or_build(const RunConfig &c) {
    if (c.strategy_path) return io::strategy_from_json(io::read_file(*c.strategy_path), c.limits);
    Strategy s = ideal_strategy(c.n, c.limits);
    if (c.theta != 0.0) s = perturb(s, {c.kind, c.theta, c.seed});
    return s;
}

void emit(const RunConfig &c, std::ostream &out, const std::string &text) {
    if (!c.out) {
        out << text;
        return;
    }
    std::ofstream f(*c.out);
    if (!f) fail(ErrorKind::InvalidArgument, "cannot write '" + *c.out + "'");
    f << text;
}

std::string json_text(const Json &j) { return j.dump(2) + "\n"; }

std::string do_ideal(const RunConfig &c) {
    Strategy s = ideal_strategy(c.n, c.limits);
    if (c.theta != 0.0) s = perturb(s, {c.kind, c.theta, c.seed});
    return json_text(io::to_json(s));
}

std::string do_verify(const RunConfig &c) {
    const Strategy s = load_or_build(c);
    const auto validation = validate(s, Tolerance(c.tol));
    const double win = winning_probability(s);
    const auto rep = check_relations(s, c.limits);
    if (c.format == Format::Json) {
        return json_text({{"validation", io::to_json(validation)},
                          {"winning_probability", win},
                          {"relations", io::to_json(rep)}});
    }
    std::string text = "relation,player,round,detail,residual\n";
    text += "winning_probability,,,," + num(win) + "\n";
    text += "valid,,,," + std::string(validation.ok ? "1" : "0") + "\n";
    for (const auto &e : rep.keyineqs)
        text += "keyineq,,"  + std::to_string(e.input.i) + ",r=" + std::to_string(e.input.r) + "," + num(e.residual) + "\n";
    for (const auto *list : {&rep.anticommute, &rep.commute, &rep.push, &rep.correct_pauli, &rep.multi_pauli})
        for (const auto &e : *list)
            text += e.relation + "," + player_name(e.player) + "," + std::to_string(e.round) + "," + e.detail + "," +
                    num(e.residual) + "\n";
    return text;
}

std::string do_classical(const RunConfig &c) {
    const double v = classical_value(c.n);
    if (c.format == Format::Json) return json_text({{"n", c.n}, {"classical_value", v}});
    return "n,classical_value\n" + std::to_string(c.n) + "," + num(v) + "\n";
}

std::string do_sweep(const RunConfig &c) {
    const auto rows = sweep(c);
    if (c.format == Format::Json) {
        Json arr = Json::array();
        for (const auto &r : rows)
            arr.push_back({{"theta", r.theta},
                           {"epsilon", r.epsilon},
                           {"max_keyineq_residual", r.max_keyineq_residual},
                           {"max_anticommute_residual", r.max_anticommute_residual},
                           {"extraction_residual", r.extraction_residual},
                           {"fidelity", r.fidelity},
                           {"bound_ratio", opt_json(r.bound_ratio)}});
        return json_text({{"n", c.n}, {"kind", to_string(c.kind)}, {"seed", c.seed}, {"rows", arr}});
    }
    std::string text =
        "theta,epsilon,max_keyineq_residual,max_anticommute_residual,extraction_residual,fidelity,bound_ratio\n";
    for (const auto &r : rows)
        text += num(r.theta) + "," + num(r.epsilon) + "," + num(r.max_keyineq_residual) + "," +
                num(r.max_anticommute_residual) + "," + num(r.extraction_residual) + "," + num(r.fidelity) + "," +
                opt_num(r.bound_ratio) + "\n";
    return text;
}

std::string do_extract(const RunConfig &c) {
    const Strategy s = load_or_build(c);
    const auto r = extract(s, c.limits);
    std::optional<double> negation;
    if (r.method == ExtractionMethod::Dense) negation = negation_residual(r);
    if (c.format == Format::Json) {
        Json j = io::to_json(r);
        j["negation_residual"] = opt_json(negation);
        return json_text(j);
    }
    std::string text = "n,method,epsilon,g0_weight,fidelity,residual,bound_ratio,negation_residual\n";
    text += std::to_string(r.n) + "," + to_string(r.method) + "," + num(r.epsilon) + "," + num(r.g0_weight) + "," +
            num(r.fidelity) + "," + num(r.residual) + "," + opt_num(r.bound_ratio()) + "," + opt_num(negation) + "\n";
    return text;
}

std::string do_simulate(const RunConfig &c) {
    const Strategy s = load_or_build(c);
    const auto sim = simulate(s, c.rounds, c.seed);
    const double p = winning_probability(s);
    const double f = sim.frequency();
    const double sigma = std::sqrt(f * (1.0 - f) / static_cast<double>(sim.rounds));
    const double lo = std::max(0.0, f - 3.0 * sigma), hi = std::min(1.0, f + 3.0 * sigma);
    if (c.format == Format::Json) {
        return json_text({{"rounds", sim.rounds},
                          {"wins", sim.wins},
                          {"frequency", f},
                          {"ci_low", lo},
                          {"ci_high", hi},
                          {"winning_probability", p},
                          {"seed", c.seed}});
    }
    return "rounds,wins,frequency,ci_low,ci_high,winning_probability\n" + std::to_string(sim.rounds) + "," +
           std::to_string(sim.wins) + "," + num(f) + "," + num(lo) + "," + num(hi) + "," + num(p) + "\n";
}

}  // namespace

std::vector<double> Grid::points() const {
    if (!(step > 0.0) || !std::isfinite(step)) fail(ErrorKind::InvalidArgument, "grid step must be positive");
    if (!std::isfinite(start) || !std::isfinite(stop) || stop < start)
        fail(ErrorKind::InvalidArgument, "grid stop must not be below start");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> pts;
    for (std::size_t k = 0; k < count; ++k) pts.push_back(start + static_cast<double>(k) * step);
    return pts;
}

Command command_from_string(const std::string &name) {
    if (name == "ideal") return Command::Ideal;
    if (name == "verify") return Command::Verify;
    if (name == "classical") return Command::Classical;
    if (name == "sweep") return Command::Sweep;
    if (name == "extract") return Command::Extract;
    if (name == "simulate") return Command::Simulate;
    fail(ErrorKind::InvalidArgument, "unknown command '" + name + "'");
}

Format format_from_string(const std::string &name) {
    if (name == "json") return Format::Json;
    if (name == "csv") return Format::Csv;
    fail(ErrorKind::InvalidArgument, "unknown format '" + name + "'");
}

Grid parse_grid(const std::string &text) {
    std::istringstream in(text);
    std::string part;
    std::vector<double> v;
    while (std::getline(in, part, ':')) {
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(part, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != part.size()) fail(ErrorKind::InvalidArgument, "bad grid '" + text + "'");
        v.push_back(x);
    }
    if (v.size() != 3) fail(ErrorKind::InvalidArgument, "grid must be start:stop:step");
    Grid g{v[0], v[1], v[2]};
    (void)g.points();
    return g;
}

Limits limits_from_env() {
    Limits limits;
    if (const char *env = std::getenv("GHZRIG_MAX_DIM")) {
        char *end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || v == 0) fail(ErrorKind::InvalidArgument, "GHZRIG_MAX_DIM must be a positive integer");
        limits.max_dim = static_cast<std::size_t>(v);
    }
    return limits;
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument:
        case ErrorKind::ShapeMismatch:
            return 2;
        case ErrorKind::Schema:
            return 3;
        case ErrorKind::DimensionCeiling:
            return 4;
        case ErrorKind::Numeric:
            return 5;
    }
    return 1;
}

std::string diagnostic(int code, const std::string &kind, const std::string &message) {
    return Json{{"code", code}, {"error", kind}, {"message", message}}.dump();
}

std::vector<SweepRow> sweep(const RunConfig &c) {
    if (!c.noise) fail(ErrorKind::InvalidArgument, "sweep needs --noise start:stop:step");
    const Strategy base = ideal_strategy(c.n, c.limits);
    const auto thetas = c.noise->points();
    std::vector<SweepRow> rows;
    for (std::size_t k = 0; k < thetas.size(); ++k) {
        const Strategy s = perturb(base, {c.kind, thetas[k], derive_seed(c.seed, k)});
        SweepRow row;
        row.theta = thetas[k];
        row.epsilon = losing_total(s);
        for (const auto &e : check_keyineqs(s)) row.max_keyineq_residual = std::max(row.max_keyineq_residual, e.residual);
        for (Player w : kPlayers)
            for (std::size_t i = 1; i <= c.n; ++i)
                row.max_anticommute_residual = std::max(row.max_anticommute_residual, check_anticommute(s, i, w).residual);
        const auto r = extract(s, c.limits);
        row.extraction_residual = r.residual;
        row.fidelity = r.fidelity;
        row.bound_ratio = r.bound_ratio();
        rows.push_back(row);
    }
    return rows;
}

int run(const RunConfig &config, std::ostream &out, std::ostream &err) {
    try {
        if (config.n == 0) fail(ErrorKind::InvalidArgument, "--n must be at least 1");
        if (!(config.tol > 0.0)) fail(ErrorKind::InvalidArgument, "--tol must be positive");
        std::string text;
        switch (config.command) {
            case Command::Ideal:
                text = do_ideal(config);
                break;
            case Command::Verify:
                text = do_verify(config);
                break;
            case Command::Classical:
                text = do_classical(config);
                break;
            case Command::Sweep:
                text = do_sweep(config);
                break;
            case Command::Extract:
                text = do_extract(config);
                break;
            case Command::Simulate:
                text = do_simulate(config);
                break;
        }
        emit(config, out, text);
        return 0;
    } catch (const Error &e) {
        const int code = exit_code(e.kind());
        err << diagnostic(code, std::string(to_string(e.kind())), e.what()) << '\n';
        return code;
    } catch (const std::exception &e) {
        err << diagnostic(1, "internal", e.what()) << '\n';
        return 1;
    }
}

}  // namespace ghzrig::cli
