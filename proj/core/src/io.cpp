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

#include "ghzrig/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <tuple>

namespace ghzrig::io {

namespace {

[[noreturn]] void schema(const std::string &path, const std::string &what) {
    fail(ErrorKind::Schema, path + ": " + what);
}

const Json &field(const Json &j, const char *key, const std::string &path) {
    if (!j.is_object()) schema(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) schema(path + "." + key, "missing field");
    return *it;
}

const Json &array_at(const Json &j, const std::string &path) {
    if (!j.is_array()) schema(path, "expected an array");
    return j;
}

double number(const Json &j, const std::string &path) {
    if (!j.is_number()) schema(path, "expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) schema(path, "non-finite number");
    return x;
}

std::size_t count(const Json &j, const std::string &path) {
    if (!j.is_number_integer() || j.get<long long>() < 0) schema(path, "expected a non-negative integer");
    return j.get<std::size_t>();
}

int bit(const Json &j, const std::string &path) {
    if (!j.is_number_integer() || (j.get<long long>() != 0 && j.get<long long>() != 1)) schema(path, "expected 0 or 1");
    return j.get<int>();
}

Player player(const Json &j, const std::string &path) {
    if (!j.is_string() || j.get<std::string>().size() != 1) schema(path, "expected \"A\", \"B\" or \"C\"");
    const char c = j.get<std::string>()[0];
    if (c != 'A' && c != 'B' && c != 'C') schema(path, "expected \"A\", \"B\" or \"C\"");
    return player_from_name(c);
}

std::string at(const std::string &path, std::size_t k) { return path + "[" + std::to_string(k) + "]"; }

// Re-raises InvalidArgument/ShapeMismatch from constructors as schema errors at `path`.
template <class F>
auto guarded(const std::string &path, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::InvalidArgument || e.kind() == ErrorKind::ShapeMismatch) schema(path, e.what());
        throw;
    }
}

Json wire_json(const WireType &w) { return {{"label", w.label}, {"dim", w.dim}}; }

std::vector<WireType> wires_from_json(const Json &j, const std::string &path) {
    std::vector<WireType> out;
    array_at(j, path);
    for (std::size_t k = 0; k < j.size(); ++k) {
        const auto p = at(path, k);
        const Json &label = field(j[k], "label", p);
        if (!label.is_string()) schema(p + ".label", "expected a string");
        const std::size_t dim = count(field(j[k], "dim", p), p + ".dim");
        if (dim == 0) schema(p + ".dim", "dimension must be positive");
        out.push_back({label.get<std::string>(), dim});
    }
    return out;
}

Json port_json(const Port &p) { return Json::array({p.box, p.index}); }

Port port_from_json(const Json &j, const std::string &path) {
    if (!j.is_array() || j.size() != 2) schema(path, "expected [box, port]");
    return {count(j[0], at(path, 0)), count(j[1], at(path, 1))};
}

Json entry_json(const RelationEntry &e) {
    return {{"relation", e.relation},
            {"player", std::string(1, player_name(e.player))},
            {"round", e.round},
            {"detail", e.detail},
            {"residual", e.residual}};
}

Json entries_json(const std::vector<RelationEntry> &entries) {
    Json out = Json::array();
    for (const auto &e : entries) out.push_back(entry_json(e));
    return out;
}

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json &j, const std::string &path) {
    if (!j.is_array() || j.size() != 2) schema(path, "expected [re, im]");
    return {number(j[0], at(path, 0)), number(j[1], at(path, 1))};
}

Json to_json(const ComplexMatrix &m) {
    Json entries = Json::array();
    for (const Complex &z : m.entries()) entries.push_back(to_json(z));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

ComplexMatrix matrix_from_json(const Json &j, const std::string &path) {
    const std::size_t rows = count(field(j, "rows", path), path + ".rows");
    const std::size_t cols = count(field(j, "cols", path), path + ".cols");
    const Json &entries = array_at(field(j, "entries", path), path + ".entries");
    if (entries.size() != rows * cols) schema(path + ".entries", "expected rows*cols entries");
    std::vector<Complex> data;
    data.reserve(entries.size());
    for (std::size_t k = 0; k < entries.size(); ++k) data.push_back(complex_from_json(entries[k], at(path + ".entries", k)));
    return ComplexMatrix(rows, cols, std::move(data));
}

Json to_json(const StateVector &psi) {
    Json out = Json::array();
    for (const Complex &z : psi.amplitudes()) out.push_back(to_json(z));
    return out;
}

StateVector state_from_json(const Json &j, const std::string &path) {
    array_at(j, path);
    std::vector<Complex> amps;
    for (std::size_t k = 0; k < j.size(); ++k) amps.push_back(complex_from_json(j[k], at(path, k)));
    return StateVector(std::move(amps));
}

Json to_json(const Strategy &s) {
    Json singles = Json::array();
    Json pairs = Json::array();
    for (Player w : kPlayers) {
        const std::string name(1, player_name(w));
        for (std::size_t i = 1; i <= s.n(); ++i)
            for (int b = 0; b < 2; ++b)
                singles.push_back({{"player", name}, {"round", i}, {"bit", b}, {"matrix", to_json(s.single(w, i, b))}});
        for (std::size_t i = 1; i <= s.n(); ++i)
            for (int b = 0; b < 2; ++b)
                for (std::size_t j = 1; j <= s.n(); ++j)
                    for (int c = 0; c < 2; ++c) {
                        if (i == j) continue;
                        pairs.push_back({{"player", name}, {"i", i}, {"b", b}, {"j", j}, {"c", c},
                                         {"matrix", to_json(s.pair(w, i, b, j, c))}});
                    }
    }
    return {{"n", s.n()},
            {"dims", {{"A", s.dims()[0]}, {"B", s.dims()[1]}, {"C", s.dims()[2]}}},
            {"state", to_json(s.state())},
            {"singles", singles},
            {"pairs", pairs}};
}

Strategy strategy_from_json(const Json &j, const Limits &limits) {
    const std::size_t n = count(field(j, "n", "$"), "$.n");
    if (n == 0) schema("$.n", "n must be at least 1");
    const Json &dj = field(j, "dims", "$");
    std::array<std::size_t, 3> dims{};
    for (Player w : kPlayers) {
        const char key[2] = {player_name(w), '\0'};
        dims[index_of(w)] = count(field(dj, key, "$.dims"), std::string("$.dims.") + key);
    }
    Strategy s = guarded("$.dims", [&] { return Strategy(n, dims, limits); });
    guarded("$.state", [&] { s.set_state(state_from_json(field(j, "state", "$"), "$.state")); });

    auto round = [&](const Json &x, const std::string &p) {
        const std::size_t r = count(x, p);
        if (r < 1 || r > n) schema(p, "round out of range 1.." + std::to_string(n));
        return r;
    };

    std::set<std::tuple<std::size_t, std::size_t, int>> seen_single;
    const Json &singles = array_at(field(j, "singles", "$"), "$.singles");
    for (std::size_t k = 0; k < singles.size(); ++k) {
        const auto p = at("$.singles", k);
        const Player w = player(field(singles[k], "player", p), p + ".player");
        const std::size_t i = round(field(singles[k], "round", p), p + ".round");
        const int b = bit(field(singles[k], "bit", p), p + ".bit");
        if (!seen_single.insert({index_of(w), i, b}).second) schema(p, "duplicate single");
        const auto m = matrix_from_json(field(singles[k], "matrix", p), p + ".matrix");
        guarded(p + ".matrix", [&] { s.set_single(w, i, b, m); });
    }
    if (seen_single.size() != 3 * n * 2) schema("$.singles", "expected one entry per (player, round, bit)");

    std::set<std::tuple<std::size_t, std::size_t, int, std::size_t, int>> seen_pair;
    const Json &pairs = array_at(field(j, "pairs", "$"), "$.pairs");
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto p = at("$.pairs", k);
        const Player w = player(field(pairs[k], "player", p), p + ".player");
        const std::size_t i = round(field(pairs[k], "i", p), p + ".i");
        const int b = bit(field(pairs[k], "b", p), p + ".b");
        const std::size_t jj = round(field(pairs[k], "j", p), p + ".j");
        const int c = bit(field(pairs[k], "c", p), p + ".c");
        if (i == jj) schema(p + ".j", "pair rounds must differ");
        if (!seen_pair.insert({index_of(w), i, b, jj, c}).second) schema(p, "duplicate pair");
        const auto m = matrix_from_json(field(pairs[k], "matrix", p), p + ".matrix");
        guarded(p + ".matrix", [&] { s.set_pair(w, i, b, jj, c, m); });
    }
    if (seen_pair.size() != 3 * n * (n - 1) * 4) schema("$.pairs", "expected one entry per (player, i, b, j, c)");
    return s;
}

Json to_json(const InputCombo &input) {
    Json f = Json::array();
    for (const auto &pa : input.f) {
        Json entries = Json::array();
        for (const auto &e : pa.entries) entries.push_back(Json::array({e.round, e.bit}));
        f.push_back(entries);
    }
    return {{"n", input.n},
            {"r", input.r},
            {"i", input.i},
            {"j", input.j ? Json(*input.j) : Json(nullptr)},
            {"f", f}};
}

InputCombo input_from_json(const Json &j, std::size_t n, const std::string &path) {
    InputCombo in;
    in.n = n;
    const std::size_t r = count(field(j, "r", path), path + ".r");
    if (r > 3) schema(path + ".r", "expected 0..3");
    in.r = static_cast<int>(r);
    in.i = count(field(j, "i", path), path + ".i");
    const Json &jj = field(j, "j", path);
    if (!jj.is_null()) in.j = count(jj, path + ".j");
    const Json &f = array_at(field(j, "f", path), path + ".f");
    if (f.size() != 3) schema(path + ".f", "expected three partial assignments");
    for (std::size_t p = 0; p < 3; ++p) {
        const auto fp = at(path + ".f", p);
        array_at(f[p], fp);
        for (std::size_t k = 0; k < f[p].size(); ++k) {
            const auto ep = at(fp, k);
            if (!f[p][k].is_array() || f[p][k].size() != 2) schema(ep, "expected [round, bit]");
            in.f[p].entries.push_back({count(f[p][k][0], at(ep, 0)), bit(f[p][k][1], at(ep, 1))});
        }
    }
    guarded(path, [&] { in.validate(); });
    return in;
}

Json to_json(const OutputCombo &output) {
    Json g = Json::array();
    for (const auto &vals : output.g) {
        Json entries = Json::array();
        for (const auto &v : vals) entries.push_back(Json::array({v.round, v.value}));
        g.push_back(entries);
    }
    return {{"g", g}};
}

OutputCombo output_from_json(const Json &j, const std::string &path) {
    OutputCombo out;
    const Json &g = array_at(field(j, "g", path), path + ".g");
    if (g.size() != 3) schema(path + ".g", "expected three output lists");
    for (std::size_t p = 0; p < 3; ++p) {
        const auto gp = at(path + ".g", p);
        array_at(g[p], gp);
        for (std::size_t k = 0; k < g[p].size(); ++k) {
            const auto ep = at(gp, k);
            if (!g[p][k].is_array() || g[p][k].size() != 2 || !g[p][k][1].is_number_integer())
                schema(ep, "expected [round, value]");
            const int v = g[p][k][1].get<int>();
            if (v != 1 && v != -1) schema(at(ep, 1), "expected +1 or -1");
            out.g[p].push_back({count(g[p][k][0], at(ep, 0)), v});
        }
    }
    return out;
}

Json to_json(const Box &box) {
    Json ins = Json::array(), outs = Json::array();
    for (const auto &w : box.inputs()) ins.push_back(wire_json(w));
    for (const auto &w : box.outputs()) outs.push_back(wire_json(w));
    Json payload;
    switch (box.kind()) {
        case BoxKind::Matrix:
            payload = to_json(box.payload());
            break;
        case BoxKind::Identity:
            payload = {{"primitive", "identity"}};
            break;
        case BoxKind::Twist:
            payload = {{"primitive", "twist"}};
            break;
        case BoxKind::Bell:
            payload = {{"primitive", "bell"}};
            break;
        case BoxKind::Controlled:
            payload = {{"primitive", "controlled"}, {"box", to_json(*box.inner())}};
            break;
    }
    return {{"name", box.name()}, {"inputs", ins}, {"outputs", outs}, {"payload", payload}};
}

Box box_from_json(const Json &j, const std::string &path) {
    const Json &name = field(j, "name", path);
    if (!name.is_string()) schema(path + ".name", "expected a string");
    const auto ins = wires_from_json(field(j, "inputs", path), path + ".inputs");
    const auto outs = wires_from_json(field(j, "outputs", path), path + ".outputs");
    const Json &payload = field(j, "payload", path);
    const std::string pp = path + ".payload";
    if (!payload.is_object()) schema(pp, "expected an object");
    if (!payload.contains("primitive")) {
        const auto m = matrix_from_json(payload, pp);
        return guarded(path, [&] { return Box::matrix(name.get<std::string>(), ins, outs, m); });
    }
    const Json &prim = payload["primitive"];
    if (!prim.is_string()) schema(pp + ".primitive", "expected a string");
    const std::string kind = prim.get<std::string>();
    auto shape = [&](std::size_t ni, std::size_t no) {
        if (ins.size() != ni || outs.size() != no) schema(path, "wrong port count for " + kind);
    };
    if (kind == "identity") {
        shape(1, 1);
        return guarded(path, [&] { return Box::identity(ins[0]); });
    }
    if (kind == "twist") {
        shape(2, 2);
        return guarded(path, [&] { return Box::twist(ins[0], ins[1]); });
    }
    if (kind == "bell") {
        shape(0, 2);
        return guarded(path, [&] { return Box::bell(outs[0]); });
    }
    if (kind == "controlled") {
        if (ins.empty()) schema(path + ".inputs", "controlled box needs a control wire");
        const Box inner = box_from_json(field(payload, "box", pp), pp + ".box");
        return guarded(path, [&] { return Box::controlled(inner, ins[0]); });
    }
    schema(pp + ".primitive", "unknown primitive '" + kind + "'");
}

Json to_json(const Diagram &d) {
    Json boxes = Json::array();
    for (std::size_t k = 0; k < d.boxes().size(); ++k) {
        Json b = to_json(d.boxes()[k]);
        b["id"] = k;
        boxes.push_back(b);
    }
    Json wires = Json::array();
    for (const auto &w : d.wires()) wires.push_back(Json::array({port_json(w.from), port_json(w.to)}));
    Json din = Json::array(), dout = Json::array();
    for (const auto &p : d.dangling_in()) din.push_back(port_json(p));
    for (const auto &p : d.dangling_out()) dout.push_back(port_json(p));
    return {{"boxes", boxes}, {"wires", wires}, {"dangling_in", din}, {"dangling_out", dout}};
}

Diagram diagram_from_json(const Json &j) {
    const Json &bj = array_at(field(j, "boxes", "$"), "$.boxes");
    std::vector<Box> boxes;
    for (std::size_t k = 0; k < bj.size(); ++k) {
        const auto p = at("$.boxes", k);
        if (bj[k].contains("id") && count(bj[k]["id"], p + ".id") != k) schema(p + ".id", "ids must be 0..n-1 in order");
        boxes.push_back(box_from_json(bj[k], p));
    }
    const Json &wj = array_at(field(j, "wires", "$"), "$.wires");
    std::vector<Wire> wires;
    for (std::size_t k = 0; k < wj.size(); ++k) {
        const auto p = at("$.wires", k);
        if (!wj[k].is_array() || wj[k].size() != 2) schema(p, "expected [producerPort, consumerPort]");
        wires.push_back({port_from_json(wj[k][0], at(p, 0)), port_from_json(wj[k][1], at(p, 1))});
    }
    auto ports = [&](const char *key) {
        const std::string p = std::string("$.") + key;
        const Json &a = array_at(field(j, key, "$"), p);
        std::vector<Port> out;
        for (std::size_t k = 0; k < a.size(); ++k) out.push_back(port_from_json(a[k], at(p, k)));
        return out;
    };
    auto din = ports("dangling_in");
    auto dout = ports("dangling_out");
    return guarded("$", [&] { return Diagram(std::move(boxes), std::move(wires), std::move(din), std::move(dout)); });
}

Json to_json(const ValidationReport &report) {
    Json v = Json::array();
    for (const auto &x : report.violations) v.push_back({{"check", x.check}, {"where", x.where}, {"residual", x.residual}});
    return {{"ok", report.ok}, {"violations", v}};
}

Json to_json(const ExtractionResult &r, bool include_vector) {
    Json out{{"n", r.n},
             {"dims", {{"A", r.dims[0]}, {"B", r.dims[1]}, {"C", r.dims[2]}}},
             {"method", to_string(r.method)},
             {"epsilon", r.epsilon},
             {"g0_weight", r.g0_weight},
             {"fidelity", r.fidelity},
             {"residual", r.residual},
             {"weights", r.weights}};
    const auto ratio = r.bound_ratio();
    out["bound_ratio"] = ratio ? Json(*ratio) : Json(nullptr);
    if (include_vector && r.extracted.dim() > 0) out["extracted"] = to_json(r.extracted);
    return out;
}

Json to_json(const RelationReport &rep) {
    Json keys = Json::array();
    for (const auto &e : rep.keyineqs)
        keys.push_back({{"input", to_json(e.input)}, {"residual", e.residual}, {"losing_probability", e.losing_probability}});
    Json out{{"n", rep.n},
             {"epsilon", rep.epsilon},
             {"keyineqs", keys},
             {"anticommute", entries_json(rep.anticommute)},
             {"commute", entries_json(rep.commute)},
             {"push", entries_json(rep.push)},
             {"correct_pauli", entries_json(rep.correct_pauli)},
             {"multi_pauli", entries_json(rep.multi_pauli)}};
    out["max"] = {{"keyineq", rep.max_keyineq()},
                  {"anticommute", RelationReport::max_of(rep.anticommute)},
                  {"commute", RelationReport::max_of(rep.commute)},
                  {"push", RelationReport::max_of(rep.push)},
                  {"correct_pauli", RelationReport::max_of(rep.correct_pauli)},
                  {"multi_pauli", RelationReport::max_of(rep.multi_pauli)}};
    return out;
}

Json read_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::InvalidArgument, "cannot open '" + path.string() + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error &e) {
        schema("$", std::string("invalid JSON: ") + e.what());
    }
}

void write_file(const std::filesystem::path &path, const Json &j) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::InvalidArgument, "cannot write '" + path.string() + "'");
    out << j.dump(2) << '\n';
}

}  // namespace ghzrig::io
