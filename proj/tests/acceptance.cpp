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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "ghzrig/diagram.hpp"
#include "ghzrig/game.hpp"
#include "ghzrig/random.hpp"
#include "ghzrig/rigidity.hpp"
#include "ghzrig/strategy.hpp"
#include "oracles.hpp"

using namespace ghzrig;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char *f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Outcome ideal_optimality() {
    double worst = 0.0;
    for (std::size_t n = 1; n <= 3; ++n) worst = std::max(worst, std::abs(1.0 - winning_probability(ideal_strategy(n))));
    return {worst <= 1e-10, fmt("max |1 - w| over n=1..3: %.3g", worst)};
}

Outcome classical_gap() {
    const double v = classical_value(1);
    const double brute = oracle::classical_value_n1();
    return {v == 0.75 && brute == 0.75, fmt("classical_value(1) = %.17g, 64-strategy oracle = %.17g", v, brute)};
}

Outcome input_counts() {
    bool ok = true;
    double worst = 0.0;
    for (std::size_t n = 2; n <= 4; ++n) {
        const auto all = enumerate_inputs(n);
        ok &= all.size() == 4 * n + 24 * n * (n - 1);
        double total = 0.0;
        for (const auto &w : all) total += w.probability;
        worst = std::max(worst, std::abs(total - 1.0));
    }
    ok &= worst <= 1e-12;
    return {ok, fmt("counts 56/156/312 expected; max |sum - 1| = %.3g", worst)};
}

Outcome keyineq_identity() {
    Rng rng(4);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const auto s = random_strategy(2, {2, 2, 2}, rng);
        if (!validate(s).ok) return {false, "random strategy failed validation"};
        for (const auto &e : check_keyineqs(s))
            worst = std::max(worst, std::abs(e.residual * e.residual - 4 * e.losing_probability));
    }
    return {worst <= 1e-10, fmt("max |residual^2 - 4 losing| over 20 strategies: %.3g", worst)};
}

Outcome zero_noise_collapse() {
    double worst = 0.0;
    for (std::size_t n = 1; n <= 2; ++n) {
        const auto s = ideal_strategy(n);
        const auto rep = check_relations(s);
        for (const auto *list : {&rep.anticommute, &rep.commute, &rep.push, &rep.correct_pauli, &rep.multi_pauli})
            worst = std::max(worst, RelationReport::max_of(*list));
        worst = std::max(worst, extract(s).residual);
    }
    return {worst <= 1e-9, fmt("max checker/extraction residual at N=1,2: %.3g", worst)};
}

Outcome rigidity_scaling() {
    const auto base = ideal_strategy(1);
    std::vector<double> xs, ys, ratios;
    for (int k = 1; k <= 10; ++k) {
        const auto r = extract(perturb(base, {NoiseKind::Rotation, 0.02 * k, 0}));
        if (!(r.epsilon > 0.0) || !(r.residual > 0.0)) return {false, "degenerate sweep point"};
        xs.push_back(std::log(r.epsilon));
        ys.push_back(std::log(r.residual));
        ratios.push_back(r.residual / std::sqrt(r.epsilon));
    }
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        mx += xs[k];
        my += ys[k];
    }
    mx /= xs.size();
    my /= ys.size();
    double sxy = 0, sxx = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sxy += (xs[k] - mx) * (ys[k] - my);
        sxx += (xs[k] - mx) * (xs[k] - mx);
    }
    const double slope = sxy / sxx;
    const double spread = *std::max_element(ratios.begin(), ratios.end()) / *std::min_element(ratios.begin(), ratios.end());
    return {std::abs(slope - 0.5) <= 0.15 && spread < 5.0,
            fmt("log-log slope %.6f, residual/sqrt(eps) max/min %.6f", slope, spread)};
}

Outcome diagram_agreement() {
    Rng rng(7);
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        const auto s = random_strategy(1, {2, 2, 2}, rng);
        for (Player w : kPlayers)
            worst = std::max(worst, frobenius_distance(evaluate(swap_isometry_diagram(s, w, 1)), swap_isometry(s, w, 1)));
    }
    return {worst <= 1e-12, fmt("max ||eval(diagram) - matrix||: %.3g", worst)};
}

Outcome isometry_property() {
    Rng rng(8);
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        const auto s = random_strategy(2, {2, 2, 2}, rng);
        for (Player w : kPlayers) {
            const auto theta = chained_isometry(s, w);
            worst = std::max(worst, frobenius_distance(theta.adjoint() * theta, ComplexMatrix::identity(s.dim(w))));
        }
    }
    return {worst <= 1e-9, fmt("max ||Theta^dag Theta - I||: %.3g", worst)};
}

Outcome monte_carlo() {
    Rng rng(9);
    const std::size_t rounds = 100000;
    double worst_z = 0.0;
    bool reproducible = true;
    for (int t = 0; t < 5; ++t) {
        const auto s = random_strategy(2, {2, 2, 2}, rng);
        const double p = winning_probability(s);
        const auto a = simulate(s, rounds, 100 + t);
        const auto b = simulate(s, rounds, 100 + t);
        reproducible &= fmt("%.17g", a.frequency()) == fmt("%.17g", b.frequency()) && a.wins == b.wins;
        const double sigma = std::sqrt(p * (1 - p) / rounds);
        const double z = std::abs(a.frequency() - p) / (3 * sigma + 1e-9);
        worst_z = std::max(worst_z, z);
    }
    return {worst_z <= 1.0 && reproducible,
            fmt("max |f - p| / (3 sigma) = %.4f, reproducible = %.0f", worst_z, reproducible ? 1.0 : 0.0)};
}

Outcome negation_structure() {
    double worst = 0.0;
    double smallest_rest = 1.0;
    for (double theta : {0.05, 0.1, 0.2, 0.3}) {
        for (NoiseKind kind : {NoiseKind::Rotation, NoiseKind::StateMix}) {
            const auto r = extract_dense(perturb(ideal_strategy(1), {kind, theta, 0}));
            worst = std::max(worst, negation_residual(r));
            smallest_rest = std::min(smallest_rest, r.residual);
        }
    }
    return {worst <= 1e-10 && smallest_rest > 0.0,
            fmt("max ||L'_v + S L'_v|| = %.3g (non-G_0 mass >= %.3g)", worst, smallest_rest)};
}

}  // namespace

int main() {
    struct Criterion {
        const char *name;
        double budget_s;
        std::function<Outcome()> check;
    };
    const std::vector<Criterion> criteria{
        {"ideal strategy wins with probability 1 (n = 1, 2, 3)", 5.0, ideal_optimality},
        {"classical value at n = 1 is exactly 0.75", 1.0, classical_gap},
        {"input counts 4n + 24n(n-1) with unit total probability", 0.0, input_counts},
        {"key inequality residual^2 = 4 x losing probability", 0.0, keyineq_identity},
        {"zero-noise collapse of every checker at N = 1, 2", 60.0, zero_noise_collapse},
        {"extraction residual scales as sqrt(epsilon)", 0.0, rigidity_scaling},
        {"swap isometry diagram equals its matrix form", 0.0, diagram_agreement},
        {"chained isometry satisfies Theta^dag Theta = I", 0.0, isometry_property},
        {"Monte Carlo within 3 sigma and reproducible", 0.0, monte_carlo},
        {"negation structure of the G-basis components", 0.0, negation_structure},
    };
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].check();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (criteria[k].budget_s > 0.0 && secs > criteria[k].budget_s) {
            o.pass = false;
            o.detail += fmt(" (over the %.0f s budget)", criteria[k].budget_s);
        }
        std::printf("criterion %2zu: %s  %s  [%s] (%.2f s)\n", k + 1, o.pass ? "PASS" : "FAIL", criteria[k].name,
                    o.detail.c_str(), secs);
        failures += o.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
