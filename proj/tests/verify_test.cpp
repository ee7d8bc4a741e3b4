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

#include "qhoare/parser.hpp"
#include "qhoare/verify.hpp"
#include "test_util.hpp"

namespace qhoare {
namespace {

using testing::Rng;

CMat plus_projector() {
    CMat p(2, 2);
    p << 0.5, 0.5, 0.5, 0.5;
    return p;
}

TEST(CheckTotal, ZeroPreconditionAlwaysAccepted) {
    testing::ProgramGen gen(401);
    Rng rng(402);
    for (int trial = 0; trial < 15; ++trial) {
        const TypedUnit u = gen.generate(2, 3);
        const long d = u.shape.total_dim();
        Triple t{CMat::Zero(d, d), u.unit.main,
                 testing::random_predicate(rng, static_cast<int>(d))};
        const Verdict v = check_total(u, t, {});
        if (v.kind == VerdictKind::Inconclusive) continue;  // non-converged wp
        EXPECT_EQ(v.kind, VerdictKind::Accept);
    }
}

TEST(CheckPartial, IdentityPostconditionAlwaysAccepted) {
    testing::ProgramGen gen(403);
    Rng rng(404);
    for (int trial = 0; trial < 15; ++trial) {
        const TypedUnit u = gen.generate(2, 3);
        const long d = u.shape.total_dim();
        Triple t{testing::random_predicate(rng, static_cast<int>(d)), u.unit.main,
                 CMat::Identity(d, d)};
        const Verdict v = check_partial(u, t, {});
        if (v.kind == VerdictKind::Inconclusive) continue;
        EXPECT_EQ(v.kind, VerdictKind::Accept);
    }
}

TEST(CheckTotal, UnitaryAxiomTriple) {
    Rng rng(405);
    const CMat g = testing::random_unitary(rng, 2);
    SourceUnit su;
    su.vars.push_back({"q", true, 2, {}});
    su.gates.push_back({"G", g, {}});
    su.main = make_stmt(ApplyUnitary{{"q"}, GateRef{"G", false, 0, false}});
    const TypedUnit u = typecheck(std::move(su));
    const CMat p = testing::random_predicate(rng, 2);
    Triple t{hermitize(g.adjoint() * p * g), u.unit.main, p};
    EXPECT_EQ(check_total(u, t, {}).kind, VerdictKind::Accept);
}

TEST(SignFlipLoop, PartialHoldsTotalFailsWithWitness) {
    // Pre = |psi><psi| x I with psi = (|0>+|1>)/sqrt(2); post = |0><0| x I.
    const TypedUnit u = testing::flip_loop_unit();
    Triple t;
    t.prog = u.unit.main;
    t.pre = tensor(plus_projector(), CMat::Identity(2, 2));
    t.post = tensor(ketbra(2, 0, 0), CMat::Identity(2, 2));

    EvalConfig cfg;
    const Verdict partial = check_partial(u, t, cfg);
    EXPECT_EQ(partial.kind, VerdictKind::Accept);

    const Verdict total = check_total(u, t, cfg);
    ASSERT_EQ(total.kind, VerdictKind::Reject);
    EXPECT_GE(total.margin, 0.1);
    ASSERT_TRUE(total.witness.has_value());
    // The witness violates the total-correctness inequality by the margin.
    const CMat rho = *total.witness;
    const Evaluation ev = denote(u, t.prog, rho, cfg);
    const double lhs = (t.pre * rho).trace().real();
    const double rhs = (t.post * ev.state).trace().real();
    EXPECT_GE(lhs - rhs, 0.1);
    EXPECT_NEAR(lhs - rhs, total.margin, 1e-8 + ev.stats.residual);
}

TEST(Verdicts, TotalAcceptImpliesPartialAccept) {
    testing::ProgramGen gen(406);
    Rng rng(407);
    EvalConfig cfg;
    int accepted = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const TypedUnit u = gen.generate(2, 2);
        const long d = u.shape.total_dim();
        const CMat post = testing::random_predicate(rng, static_cast<int>(d));
        // Sample pres at and below wp to get plenty of total accepts.
        const TransformerResult w = wp(u, u.unit.main, post, cfg);
        if (!w.stats.converged) continue;
        std::uniform_real_distribution<double> lam(0.0, 1.0);
        const CMat pre = lam(rng) * w.pred;
        Triple t{pre, u.unit.main, post};
        const Verdict total = check_total(u, t, cfg);
        if (total.kind != VerdictKind::Accept) continue;
        ++accepted;
        EXPECT_EQ(check_partial(u, t, cfg).kind, VerdictKind::Accept);
    }
    EXPECT_GE(accepted, 20);
}

TEST(Verdicts, AcceptSatisfiesDefiningInequalityOnRandomStates) {
    testing::ProgramGen gen(408);
    Rng rng(409);
    EvalConfig cfg;
    int checked = 0;
    for (int trial = 0; trial < 10 && checked < 4; ++trial) {
        const TypedUnit u = gen.generate(2, 2);
        const long d = u.shape.total_dim();
        const CMat post = testing::random_predicate(rng, static_cast<int>(d));
        const TransformerResult w = wp(u, u.unit.main, post, cfg);
        if (!w.stats.converged) continue;
        Triple t{CMat(0.9 * w.pred), u.unit.main, post};
        if (check_total(u, t, cfg).kind != VerdictKind::Accept) continue;
        ++checked;
        for (int s = 0; s < 200; ++s) {
            const CMat rho = testing::random_density(rng, static_cast<int>(d), true);
            const Evaluation ev = denote(u, t.prog, rho, cfg);
            EXPECT_LE((t.pre * rho).trace().real(),
                      (t.post * ev.state).trace().real() + 1e-6 + ev.stats.residual);
        }
    }
    EXPECT_GE(checked, 2);
}

TEST(Verdicts, RejectWitnessesViolateTheInequality) {
    testing::ProgramGen gen(410);
    Rng rng(411);
    EvalConfig cfg;
    int rejected = 0;
    for (int trial = 0; trial < 40 && rejected < 10; ++trial) {
        const TypedUnit u = gen.generate(2, 2);
        const long d = u.shape.total_dim();
        const CMat post = testing::random_predicate(rng, static_cast<int>(d));
        const CMat pre = testing::random_predicate(rng, static_cast<int>(d));
        Triple t{pre, u.unit.main, post};
        const Verdict v = check_total(u, t, cfg);
        if (v.kind != VerdictKind::Reject) continue;
        ++rejected;
        ASSERT_TRUE(v.witness.has_value());
        const Evaluation ev = denote(u, t.prog, *v.witness, cfg);
        const double violation =
            (t.pre * *v.witness).trace().real() - (t.post * ev.state).trace().real();
        EXPECT_GT(violation, cfg.tol_psd);
    }
    EXPECT_GE(rejected, 5);
}

TEST(Ranking, AnnihilatingGuardVerifiesImmediately) {
    const TypedUnit u = testing::trivial_guard_unit();  // M1 = 0
    const While* w = std::get_if<While>(&u.unit.main->node);
    const CMat q = u.global_meas_op(w->meas, w->reg, 1);  // zero operator
    const RankingReport rep =
        check_ranking(u, u.unit.main, CMat(q.adjoint() * q), {});
    EXPECT_TRUE(rep.verified());
    EXPECT_LE(rep.iterations, 1);
}

TEST(Ranking, AnnihilatingGuardVerifiesIdentityPredicateInOneStep) {
    const TypedUnit u = testing::trivial_guard_unit();
    const RankingReport rep =
        check_ranking(u, u.unit.main, CMat(CMat::Identity(2, 2)), {});
    EXPECT_TRUE(rep.verified());
    EXPECT_EQ(rep.iterations, 1);
}

TEST(Ranking, BitFlipLoopVerifiesInTwoSteps) {
    const TypedUnit u = testing::flip_loop_unit(/*terminating_body=*/true);
    const While* w = std::get_if<While>(&u.unit.main->node);
    const CMat m1 = u.global_meas_op(w->meas, w->reg, 1);
    const RankingReport rep =
        check_ranking(u, u.unit.main, CMat(m1.adjoint() * m1), {});
    EXPECT_TRUE(rep.verified());
    EXPECT_LE(rep.iterations, 2);
}

TEST(Ranking, SignFlipLoopIsInconclusive) {
    // The branching example's inner loop: guard on q2 never moves, the mass
    // on |1><1| x |2><2| cycles forever.
    const TypedUnit u = testing::branching_unit();
    const StmtPtr loop = resolve_path(u.unit.main, "1.1.1.1.1");
    ASSERT_TRUE(std::holds_alternative<While>(loop->node));
    const While* w = std::get_if<While>(&loop->node);
    const CMat m1 = u.global_meas_op(w->meas, w->reg, 1);
    const RankingReport rep = check_ranking(u, loop, CMat(m1.adjoint() * m1), {});
    EXPECT_FALSE(rep.verified());
    EXPECT_TRUE(rep.stationary);  // detected as an exact fixed point
    EXPECT_GT(rep.max_residual, 0.5);
}

TEST(Ranking, DivergenceWalkWithIdentityPredicateIsInconclusive) {
    const TypedUnit u = testing::divergence_walk_unit(8);
    const RankingReport rep =
        check_ranking(u, u.unit.main, CMat(CMat::Identity(8, 8)), {});
    EXPECT_FALSE(rep.verified());
}

TEST(Ranking, VerifiedImpliesForwardIterationVanishes) {
    // Linearity consistency: a verified report at N means the forward
    // iterate of 100 random density operators has Q-mass below tolerance.
    const TypedUnit u = testing::flip_loop_unit(/*terminating_body=*/true);
    const While* w = std::get_if<While>(&u.unit.main->node);
    const CMat m1 = u.global_meas_op(w->meas, w->reg, 1);
    const CMat q = m1.adjoint() * m1;
    EvalConfig cfg;
    const RankingReport rep = check_ranking(u, u.unit.main, q, cfg);
    ASSERT_TRUE(rep.verified());
    Rng rng(412);
    for (int s = 0; s < 100; ++s) {
        CMat state = testing::random_density(rng, 4, true);
        for (long n = 0; n < rep.iterations; ++n)
            state = denote(u, w->body, CMat(m1 * state * m1.adjoint()), cfg).state;
        EXPECT_LT((q * state).trace().real(), cfg.tol_rank);
    }
}

}  // namespace
}  // namespace qhoare
