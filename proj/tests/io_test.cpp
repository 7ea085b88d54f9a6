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

#include <filesystem>
#include <fstream>
#include <functional>

#include <gtest/gtest.h>

#include "ghzrig/error.hpp"
#include "ghzrig/io.hpp"
#include "ghzrig/random.hpp"
#include "oracles.hpp"

using namespace ghzrig;
using io::Json;

namespace {

std::string schema_path(const std::function<void()> &f) {
    try {
        f();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::Schema) << e.what();
        const std::string msg = e.what();
        return msg.substr(0, msg.find(':'));
    }
    ADD_FAILURE() << "no schema error";
    return "";
}

}  // namespace

TEST(Io, MatrixRoundTrip) {
    Rng rng(41);
    const auto m = oracle::random_matrix(2, 3, rng);
    const Json j = io::to_json(m);
    EXPECT_EQ(j["rows"], 2);
    EXPECT_EQ(j["entries"].size(), 6u);
    EXPECT_EQ(io::matrix_from_json(j), m);
    EXPECT_EQ(io::matrix_from_json(Json::parse(j.dump())), m);
}

TEST(Io, StrategyRoundTrip) {
    Rng rng(42);
    const auto s = random_strategy(2, {2, 3, 2}, rng);
    const Json j = io::to_json(s);
    EXPECT_EQ(j["singles"].size(), 12u);
    EXPECT_EQ(j["pairs"].size(), 24u);
    EXPECT_EQ(j["singles"][0]["round"], 1);
    EXPECT_TRUE(io::strategy_from_json(Json::parse(j.dump())) == s);
}

TEST(Io, StrategyFileRoundTrip) {
    const auto path = std::filesystem::temp_directory_path() / "ghzrig_io_test_strategy.json";
    const auto s = ideal_strategy(1);
    io::write_file(path, io::to_json(s));
    EXPECT_TRUE(io::strategy_from_json(io::read_file(path)) == s);
    std::filesystem::remove(path);
    EXPECT_THROW(io::read_file(path), Error);
}

TEST(Io, SchemaErrorsNameTheField) {
    Json good = io::to_json(ideal_strategy(1));

    Json j = good;
    j.erase("dims");
    EXPECT_EQ(schema_path([&] { io::strategy_from_json(j); }), "$.dims");

    j = good;
    j["singles"][3]["matrix"]["entries"][2] = "oops";
    EXPECT_EQ(schema_path([&] { io::strategy_from_json(j); }), "$.singles[3].matrix.entries[2]");

    j = good;
    j["singles"][1]["player"] = "D";
    EXPECT_EQ(schema_path([&] { io::strategy_from_json(j); }), "$.singles[1].player");

    j = good;
    j["singles"][0]["round"] = 2;
    EXPECT_EQ(schema_path([&] { io::strategy_from_json(j); }), "$.singles[0].round");

    j = good;
    j["singles"].erase(5);
    EXPECT_EQ(schema_path([&] { io::strategy_from_json(j); }), "$.singles");

    j = good;
    j["state"].erase(0);
    EXPECT_EQ(schema_path([&] { io::strategy_from_json(j); }), "$.state");

    j = good;
    j["singles"][0]["matrix"] = io::to_json(ComplexMatrix::identity(3));
    EXPECT_EQ(schema_path([&] { io::strategy_from_json(j); }), "$.singles[0].matrix");
}

TEST(Io, InvalidJsonIsSchemaError) {
    const auto path = std::filesystem::temp_directory_path() / "ghzrig_io_test_bad.json";
    {
        std::ofstream f(path);
        f << "{ not json";
    }
    EXPECT_EQ(schema_path([&] { io::read_file(path); }), "$");
    std::filesystem::remove(path);
}

TEST(Io, InputComboFixtureFormat) {
    const Json fixture = Json::parse(R"({"r":0,"i":1,"j":null,"f":[[[1,0]],[[1,0]],[[1,0]]]})");
    const auto in = io::input_from_json(fixture, 1);
    EXPECT_EQ(in.r, 0);
    EXPECT_FALSE(in.j.has_value());
    EXPECT_EQ(in.bit(Player::C), 0);
    for (const auto &[c, p] : enumerate_inputs(2)) EXPECT_TRUE(io::input_from_json(io::to_json(c), 2) == c);
    const Json bad = Json::parse(R"({"r":0,"i":1,"j":null,"f":[[[1,1]],[[1,0]],[[1,0]]]})");
    EXPECT_EQ(schema_path([&] { io::input_from_json(bad, 1); }), "$");
}

TEST(Io, OutputComboRoundTrip) {
    OutputCombo out;
    out.g[0] = {{1, 1}};
    out.g[1] = {{1, -1}, {2, 1}};
    out.g[2] = {{1, -1}};
    const auto back = io::output_from_json(io::to_json(out));
    EXPECT_EQ(back.g, out.g);
    Json bad = io::to_json(out);
    bad["g"][1][0][1] = 0;
    EXPECT_EQ(schema_path([&] { io::output_from_json(bad); }), "$.g[1][0][1]");
}

TEST(Io, DiagramRoundTrip) {
    Rng rng(43);
    const auto s = random_strategy(1, {2, 2, 2}, rng);
    const auto d = swap_isometry_diagram(s, Player::B, 1);
    const Json j = io::to_json(d);
    EXPECT_EQ(j["boxes"].size(), 6u);
    EXPECT_EQ(j["boxes"][0]["payload"]["primitive"], "bell");
    EXPECT_EQ(j["boxes"][1]["payload"]["primitive"], "controlled");
    const auto back = io::diagram_from_json(Json::parse(j.dump()));
    EXPECT_EQ(evaluate(back), evaluate(d));

    const auto tw = io::diagram_from_json(io::to_json(twist(qubit_wire("a"), WireType{"b", 3})));
    EXPECT_EQ(evaluate(tw), evaluate(twist(qubit_wire("a"), WireType{"b", 3})));
}

TEST(Io, DiagramSchemaErrors) {
    Json j = io::to_json(identity_wire(qubit_wire("q")));
    j["boxes"][0]["payload"]["primitive"] = "spider";
    EXPECT_EQ(schema_path([&] { io::diagram_from_json(j); }), "$.boxes[0].payload.primitive");
    j = io::to_json(compose_serial(identity_wire(qubit_wire("q")), identity_wire(qubit_wire("q"))));
    j["wires"][0][1] = Json::array({0, 0});
    EXPECT_EQ(schema_path([&] { io::diagram_from_json(j); }), "$");
}

TEST(Io, ReportsCarryResidualsAndBoundRatio) {
    const auto s = perturb(ideal_strategy(1), {NoiseKind::Rotation, 0.1, 0});
    const Json e = io::to_json(extract(s), true);
    EXPECT_EQ(e["n"], 1);
    EXPECT_EQ(e["method"], "dense");
    EXPECT_TRUE(e["bound_ratio"].is_number());
    EXPECT_EQ(e["weights"].size(), 8u);
    EXPECT_TRUE(e.contains("extracted"));
    EXPECT_TRUE(io::to_json(extract(ideal_strategy(1)))["bound_ratio"].is_null());

    const Json r = io::to_json(check_relations(s));
    EXPECT_EQ(r["keyineqs"].size(), 4u);
    EXPECT_GT(r["epsilon"].get<double>(), 0.0);
    EXPECT_EQ(r["push"].size(), 15u);
    EXPECT_TRUE(r["max"]["keyineq"].is_number());

    const Json v = io::to_json(validate(s));
    EXPECT_TRUE(v["ok"].get<bool>());
}
