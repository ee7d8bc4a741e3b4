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

#include <fstream>

#include "qhoare/parser.hpp"
#include "qhoare/pretty.hpp"
#include "qhoare/typecheck.hpp"
#include "test_util.hpp"

namespace qhoare {
namespace {

// The measurement-branching program with the diverging second arm,
// transcribed in the concrete syntax (integer truncated to 8).
const char* kBranchingSource = R"(
var q1 : bool;
var q2 : int[8];
measurement M = { 0: [[1, 0], [0, 0]], 1: [[0, 0], [0, 1]] };
measurement N = {
  0: [[1,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0],
      [0,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0],[0,0,0,0,0,0,0,0]],
  1: [[0,0,0,0,0,0,0,0],[0,1,0,0,0,0,0,0],[0,0,1,0,0,0,0,0],[0,0,0,1,0,0,0,0],
      [0,0,0,0,1,0,0,0],[0,0,0,0,0,1,0,0],[0,0,0,0,0,0,1,0],[0,0,0,0,0,0,0,1]]
};

q1 := 0;
q2 := 0;
[q1] *= H;
q2 := q2 + 2;
measure M[q1] {
  0 -> { skip }
  1 -> { while N[q2] = 1 do { [q1] *= Z } }
}
)";

int seq_chain_length(const Stmt& s) {
    if (const Seq* q = std::get_if<Seq>(&s.node)) return 1 + seq_chain_length(*q->second);
    return 1;
}

TEST(Parser, SkipOnly) {
    const SourceUnit u = parse("skip");
    EXPECT_TRUE(std::holds_alternative<Skip>(u.main->node));
    EXPECT_TRUE(u.vars.empty());
}

TEST(Parser, BranchingExampleShape) {
    const SourceUnit u = parse(kBranchingSource);
    EXPECT_EQ(u.vars.size(), 2u);
    EXPECT_EQ(u.measurements.size(), 2u);
    // Five statements chained by Seq, the last a measure with two arms.
    EXPECT_EQ(seq_chain_length(*u.main), 5);
    const Stmt* cur = u.main.get();
    while (const Seq* q = std::get_if<Seq>(&cur->node)) cur = q->second.get();
    const Measure* m = std::get_if<Measure>(&cur->node);
    ASSERT_NE(m, nullptr);
    EXPECT_EQ(m->arms.size(), 2u);
    EXPECT_TRUE(std::holds_alternative<Skip>(m->arms[0].second->node));
    EXPECT_TRUE(std::holds_alternative<While>(m->arms[1].second->node));
}

TEST(Parser, IncrementSugarIsShift) {
    const SourceUnit u = parse("var q : int[4];\nq := q + 3");
    const ApplyUnitary* app = std::get_if<ApplyUnitary>(&u.main->node);
    ASSERT_NE(app, nullptr);
    EXPECT_TRUE(app->gate.is_shift);
    EXPECT_EQ(app->gate.shift_amount, 3);
    const SourceUnit d = parse("var q : int[4];\nq := q - 1");
    EXPECT_EQ(std::get<ApplyUnitary>(d.main->node).gate.shift_amount, -1);
}

TEST(Parser, ComplexLiterals) {
    const SourceUnit u = parse(
        "unitary G = [[0, -1i], [i, 0]];\n"
        "var q : bool;\n[q] *= G");
    ASSERT_EQ(u.gates.size(), 1u);
    EXPECT_EQ(u.gates[0].matrix(0, 1), Complex(0, -1));
    EXPECT_EQ(u.gates[0].matrix(1, 0), Complex(0, 1));
    const SourceUnit v = parse("unitary W = [[0.5 + 0.5i, 1e-3], [2i, -0.25-0.75i]];\nskip");
    EXPECT_EQ(v.gates[0].matrix(0, 0), Complex(0.5, 0.5));
    EXPECT_EQ(v.gates[0].matrix(0, 1), Complex(1e-3, 0));
    EXPECT_EQ(v.gates[0].matrix(1, 0), Complex(0, 2));
    EXPECT_EQ(v.gates[0].matrix(1, 1), Complex(-0.25, -0.75));
}

TEST(Parser, ErrorsCarryPositions) {
    try {
        parse("var q : bool;\nskip;\nmeasure");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.pos.line, 3);
    }
    EXPECT_THROW(parse("q := q"), ParseError);
    EXPECT_THROW(parse("while M[q] = 0 do { skip }"), ParseError);
    EXPECT_THROW(parse("unitary G = [[1, 0], [0]];\nskip"), ParseError);  // ragged literal
    EXPECT_THROW(parse("measure M[q] { }"), ParseError);                  // no arms
}

TEST(Parser, DuplicateOutcomeRejected) {
    EXPECT_THROW(parse("measurement M = { 0: [[1]], 0: [[0]] };\nskip"), ParseError);
}

TEST(Parser, GarbageNeverCrashes) {
    testing::Rng rng(777);
    std::uniform_int_distribution<int> len(1, 80);
    const std::string alphabet =
        "abqwhile measure var :=*=->0123456789.;,[](){}+-eiH \n//=";
    std::uniform_int_distribution<size_t> pick(0, alphabet.size() - 1);
    int accepted = 0;
    for (int trial = 0; trial < 300; ++trial) {
        std::string src;
        const int n = len(rng);
        for (int i = 0; i < n; ++i) src += alphabet[pick(rng)];
        try {
            parse(src);
            ++accepted;
        } catch (const ParseError&) {
        }
    }
    // Random soup overwhelmingly fails to parse; what matters is that it
    // fails with a diagnostic, not a crash.
    EXPECT_LT(accepted, 50);
}

TEST(Pretty, RoundTripsTheCorpusShapes) {
    for (const char* src : {kBranchingSource, "skip", "var q : bool;\nq := 0;\n[q] *= H",
                            "var q : int[4];\nq := q + 1;\nq := q - 2"}) {
        const SourceUnit u = parse(src);
        const std::string printed = pretty(u);
        const SourceUnit again = parse(printed);
        EXPECT_TRUE(stmt_equal(*u.main, *again.main)) << printed;
        // Printing is idempotent once normalized.
        EXPECT_EQ(printed, pretty(again));
    }
}

TEST(Pretty, RoundTripsTheBundledCorpus) {
    const std::string corpus = QHOARE_CORPUS_DIR;
    for (const char* name : {"coin_fixpoint.qw", "random_walk.qw", "branching_measure.qw",
                             "flip_loop.qw", "flip_terminating.qw", "trivial_guard.qw"}) {
        std::ifstream in(corpus + "/" + name);
        ASSERT_TRUE(in) << name;
        const std::string src(std::istreambuf_iterator<char>(in),
                              std::istreambuf_iterator<char>{});
        const SourceUnit u = parse(src);
        const std::string printed = pretty(u);
        const SourceUnit again = parse(printed);
        EXPECT_TRUE(stmt_equal(*u.main, *again.main)) << name;
        ASSERT_EQ(u.gates.size(), again.gates.size());
        for (size_t i = 0; i < u.gates.size(); ++i)
            EXPECT_EQ(max_abs(u.gates[i].matrix - again.gates[i].matrix), 0.0);
        ASSERT_EQ(u.measurements.size(), again.measurements.size());
        for (size_t i = 0; i < u.measurements.size(); ++i)
            for (size_t m = 0; m < u.measurements[i].outcomes.size(); ++m)
                EXPECT_EQ(max_abs(u.measurements[i].outcomes[m].second -
                                  again.measurements[i].outcomes[m].second),
                          0.0);
        EXPECT_EQ(printed, pretty(again));
    }
}

TEST(Typecheck, AcceptsHadamardOnBool) {
    EXPECT_NO_THROW(typecheck(parse("var q : bool;\n[q] *= H")));
}

TEST(Typecheck, RejectsHadamardOnWideInteger) {
    try {
        typecheck(parse("var p : int[16];\n[p] *= H"));
        FAIL() << "expected a type error";
    } catch (const TypeError& e) {
        EXPECT_NE(std::string(e.what()).find("dimension"), std::string::npos);
    }
}

TEST(Typecheck, ComputationalBasisMeasurementIsComplete) {
    EXPECT_NO_THROW(typecheck(parse(
        "var q : bool;\nmeasurement M = { 0: [[1,0],[0,0]], 1: [[0,0],[0,1]] };\n"
        "measure M[q] { 0 -> { skip } 1 -> { skip } }")));
}

TEST(Typecheck, ReportsNonUnitaryGateWithDeviation) {
    try {
        typecheck(parse("var q : bool;\nunitary G = [[1, 0], [0, 0.9]];\n[q] *= G"));
        FAIL() << "expected a type error";
    } catch (const TypeError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("G"), std::string::npos);
        EXPECT_NE(msg.find("not unitary"), std::string::npos);
    }
}

TEST(Typecheck, ReportsIncompleteMeasurementWithDeviation) {
    try {
        typecheck(parse(
            "var q : bool;\nmeasurement M = { 0: [[1,0],[0,0]], 1: [[0,0],[0,0.5]] };\n"
            "measure M[q] { 0 -> { skip } 1 -> { skip } }"));
        FAIL() << "expected a type error";
    } catch (const TypeError& e) {
        EXPECT_NE(std::string(e.what()).find("incomplete"), std::string::npos);
    }
}

TEST(Typecheck, ArmsMustCoverDeclaredOutcomes) {
    EXPECT_THROW(typecheck(parse(
                     "var q : bool;\nmeasurement M = { 0: [[1,0],[0,0]], 1: [[0,0],[0,1]] };\n"
                     "measure M[q] { 0 -> { skip } }")),
                 TypeError);
    EXPECT_THROW(typecheck(parse(
                     "var q : bool;\nmeasurement M = { 0: [[1,0],[0,0]], 1: [[0,0],[0,1]] };\n"
                     "measure M[q] { 0 -> { skip } 1 -> { skip } 2 -> { skip } }")),
                 TypeError);
}

TEST(Typecheck, LoopGuardMustBeYesNo) {
    EXPECT_THROW(
        typecheck(parse("var q : bool;\n"
                        "measurement M = { 0: [[1,0],[0,0]], 1: [[0,0],[0,1]], 2: [[0,0],[0,0]] };\n"
                        "while M[q] = 1 do { skip }")),
        TypeError);
}

TEST(Typecheck, RegistersMustBeDistinct) {
    EXPECT_THROW(typecheck(parse("var q : bool;\n[q, q] *= CNOT")), TypeError);
}

TEST(Typecheck, UndeclaredNames) {
    EXPECT_THROW(typecheck(parse("q := 0")), TypeError);
    EXPECT_THROW(typecheck(parse("var q : bool;\n[q] *= NOPE")), TypeError);
    EXPECT_THROW(typecheck(parse("var q : bool;\nmeasure M[q] { 0 -> { skip } }")), TypeError);
}

TEST(Typecheck, DuplicateDeclarations) {
    EXPECT_THROW(typecheck(parse("var q : bool;\nvar q : bool;\nskip")), TypeError);
}

TEST(FreeVars, DefinitionClauses) {
    EXPECT_TRUE(free_vars(*parse("skip").main).empty());
    EXPECT_EQ(free_vars(*parse("var q : bool;\nq := 0").main), std::set<std::string>{"q"});
    const SourceUnit u = parse(
        "var q : bool;\nvar p : bool;\n"
        "measurement M = { 0: [[1,0],[0,0]], 1: [[0,0],[0,1]] };\n"
        "while M[q] = 1 do { [p] *= X }");
    EXPECT_EQ(free_vars(*u.main), (std::set<std::string>{"q", "p"}));
}

TEST(FreeVars, SeqIsUnionOfParts) {
    testing::ProgramGen gen(4242);
    for (int i = 0; i < 25; ++i) {
        const TypedUnit u = gen.generate(3, 3);
        if (const Seq* q = std::get_if<Seq>(&u.unit.main->node)) {
            std::set<std::string> expect = free_vars(*q->first);
            const auto rhs = free_vars(*q->second);
            expect.insert(rhs.begin(), rhs.end());
            EXPECT_EQ(free_vars(*u.unit.main), expect);
        }
    }
}

TEST(Parser, NeverAcceptsMismatchedArms) {
    // Parser-level outcome duplication plus typecheck-level coverage make it
    // impossible to build a Measure whose arms differ from the declaration.
    testing::ProgramGen gen(555);
    for (int i = 0; i < 10; ++i) {
        const TypedUnit u = gen.generate(2, 3);
        const std::string printed = pretty(u.unit);
        EXPECT_NO_THROW(typecheck(parse(printed))) << printed;
    }
}

}  // namespace
}  // namespace qhoare
