// Copyright 2026 The qhoare Authors
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

#include <gtest/gtest.h>

#include "qhoare/io.hpp"
#include "qhoare/parser.hpp"
#include "test_util.hpp"

namespace qhoare {
namespace {

using testing::Rng;

TEST(MatrixJson, RoundTripsRandomMatrices) {
    Rng rng(601);
    for (int trial = 0; trial < 20; ++trial) {
        const CMat m = testing::random_complex(rng, 4, 4);
        const CMat back = matrix_from_json(matrix_to_json(m), "roundtrip");
        EXPECT_EQ(max_abs(m - back), 0.0);  // doubles survive json exactly
    }
}

TEST(MatrixJson, RejectsMalformedInput) {
    EXPECT_THROW(matrix_from_json(Json::parse(R"({"rows": []})"), "t"), IoError);
    EXPECT_THROW(matrix_from_json(Json::parse(R"({"dim": 0, "rows": []})"), "t"), IoError);
    // Ragged rows.
    EXPECT_THROW(
        matrix_from_json(Json::parse(R"({"dim": 2, "rows": [[[1,0],[0,0]], [[0,0]]]})"), "t"),
        IoError);
    // Entries must be [re, im] pairs of numbers.
    EXPECT_THROW(
        matrix_from_json(Json::parse(R"({"dim": 1, "rows": [[[1]]]})"), "t"), IoError);
    EXPECT_THROW(
        matrix_from_json(Json::parse(R"({"dim": 1, "rows": [[["x", 0]]]})"), "t"), IoError);
}

TEST(StateJson, ShapeMismatchesAreRejected) {
    const TypedUnit u = typecheck(parse("var q : bool;\nvar p : bool;\nskip"));
    // Wrong variable order.
    const Json j = Json::parse(
        R"({"dim": 4, "shape": [["p",2],["q",2]], "rows":
            [[[1,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],
             [[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]]]})");
    const DensityOperator rho = state_from_json(j, "t");
    EXPECT_THROW(check_state_shape(rho, u, "t"), IoError);
    // Matrix dimension must match the shape product.
    EXPECT_THROW(state_from_json(Json::parse(R"({"dim": 2, "shape": [["q",2],["p",2]],
        "rows": [[[1,0],[0,0]],[[0,0],[0,0]]]})"),
                                 "t"),
                 IoError);
}

TEST(PredicateJson, SubRegisterIsEmbeddedInAnyOrder) {
    const TypedUnit u = typecheck(parse("var q : bool;\nvar p : int[3];\nskip"));
    Rng rng(602);
    const CMat local = testing::random_predicate(rng, 6);
    // Register [p, q]: the matrix acts with p as the leading factor.
    Json j;
    j["dim"] = 6;
    j["register"] = Json::array({"p", "q"});
    j["rows"] = matrix_to_json(local)["rows"];
    const CMat global = predicate_from_json(j, u, "t");
    EXPECT_EQ(max_abs(global - embed(local, {"p", "q"}, u.shape)), 0.0);
    // Same matrix under register [q, p] is a different global operator.
    j["register"] = Json::array({"q", "p"});
    const CMat other = predicate_from_json(j, u, "t");
    EXPECT_GT(max_abs(global - other), 1e-3);
}

TEST(PredicateJson, RejectsNonPredicates) {
    const TypedUnit u = typecheck(parse("var q : bool;\nskip"));
    Json j;
    j["dim"] = 2;
    j["register"] = Json::array({"q"});
    j["rows"] = matrix_to_json(CMat(2.0 * CMat::Identity(2, 2)))["rows"];  // above I
    EXPECT_THROW(predicate_from_json(j, u, "t"), IoError);
    j["rows"] = matrix_to_json(CMat(-CMat::Identity(2, 2)))["rows"];  // below 0
    EXPECT_THROW(predicate_from_json(j, u, "t"), IoError);
    j["register"] = Json::array({"nope"});
    j["rows"] = matrix_to_json(CMat(CMat::Identity(2, 2)))["rows"];
    EXPECT_THROW(predicate_from_json(j, u, "t"), IoError);
}

TEST(PredicateJson, TransformerOutputsReadBack) {
    // wp results carry tiny eigenvalue noise; the load tolerance accepts it.
    testing::ProgramGen gen(603);
    Rng rng(604);
    EvalConfig cfg;
    for (int trial = 0; trial < 10; ++trial) {
        const TypedUnit u = gen.generate(2, 3);
        const CMat p = testing::random_predicate(rng, static_cast<int>(u.shape.total_dim()));
        const TransformerResult w = wlp(u, u.unit.main, p, cfg);
        if (!w.stats.converged) continue;
        const Json j = predicate_to_json(w.pred, u.shape);
        EXPECT_NO_THROW(predicate_from_json(j, u, "t"));
    }
}

TEST(ScriptJson, MissingFieldsAreReported) {
    const TypedUnit u = typecheck(parse("var q : bool;\nskip"));
    EXPECT_THROW(script_from_json(Json::parse(R"({"mode":"partial"})"), u, ".", "t"), IoError);
    EXPECT_THROW(
        script_from_json(Json::parse(R"({"mode":"sideways","predicates":{},"steps":[],"goal":"g"})"),
                         u, ".", "t"),
        IoError);
    // Steps referencing unknown predicates.
    EXPECT_THROW(script_from_json(Json::parse(R"({"mode":"partial","predicates":{},
        "steps":[{"id":"s0","rule":"AxSkip","pre":"nope","path":"","post":"nope"}],
        "goal":"s0"})"),
                                  u, ".", "t"),
                 IoError);
}

TEST(VerdictJson, SerializesAllFields) {
    Verdict v;
    v.kind = VerdictKind::Reject;
    v.margin = 0.25;
    v.witness = CMat::Identity(2, 2);
    v.detail = "d";
    const Json j = verdict_to_json(v, "w.json");
    EXPECT_EQ(j["verdict"], "reject");
    EXPECT_EQ(j["witness"], "w.json");
    Verdict a;
    a.kind = VerdictKind::Accept;
    EXPECT_TRUE(verdict_to_json(a, "").at("witness").is_null());
}

}  // namespace
}  // namespace qhoare
