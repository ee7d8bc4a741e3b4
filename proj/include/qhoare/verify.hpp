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

#ifndef QHOARE_VERIFY_HPP_
#define QHOARE_VERIFY_HPP_

#include <optional>
#include <string>

#include "qhoare/transformers.hpp"

namespace qhoare {

/// Correctness formula {P} S {Q} with both predicates on the global space.
struct Triple {
    CMat pre;
    StmtPtr prog;
    CMat post;
};

enum class VerdictKind { Accept, Reject, Inconclusive };

inline const char* to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::Accept: return "accept";
        case VerdictKind::Reject: return "reject";
        default: return "inconclusive";
    }
}

struct Verdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    // Accept: smallest eigenvalue of (transformer - pre), >= -tol.
    // Reject: magnitude of the most negative eigenvalue; the violation of
    // the defining trace inequality on the witness state.
    double margin = 0.0;
    std::optional<CMat> witness;  // rank-one density operator vv^dag
    std::string detail;
    TransformerStats stats;
};

namespace detail {

inline Verdict check_against(const CMat& pre, const TransformerResult& bound,
                             const EvalConfig& cfg) {
    Verdict v;
    v.stats = bound.stats;
    if (!bound.stats.converged) {
        v.kind = VerdictKind::Inconclusive;
        v.detail = "precondition transformer did not converge within max_iter (last step " +
                   std::to_string(bound.stats.last_step) + ")";
        return v;
    }
    const auto [lambda, vec] = min_eigenpair(bound.pred - pre);
    if (lambda >= -cfg.tol_psd) {
        v.kind = VerdictKind::Accept;
        v.margin = lambda;
        return v;
    }
    v.kind = VerdictKind::Reject;
    v.margin = -lambda;
    v.witness = CMat(vec * vec.adjoint());
    v.detail = "precondition exceeds the weakest precondition; most negative eigenvalue " +
               std::to_string(lambda);
    return v;
}

}  // namespace detail

/// Total correctness |=_tot {P} S {Q}: tr(P rho) <= tr(Q [|S|](rho)) for all
/// rho. Decided through P <= wp(S, Q) in the Loewner order; a reject comes
/// with a rank-one witness violating the trace inequality by the margin.
inline Verdict check_total(const TypedUnit& u, const Triple& t, const EvalConfig& cfg) {
    return detail::check_against(t.pre, wp(u, t.prog, t.post, cfg), cfg);
}

/// Partial correctness |=_par {P} S {Q}: decided through P <= wlp(S, Q).
inline Verdict check_partial(const TypedUnit& u, const Triple& t, const EvalConfig& cfg) {
    return detail::check_against(t.pre, wlp(u, t.prog, t.post, cfg), cfg);
}

struct RankingReport {
    enum class Outcome { Verified, Inconclusive } outcome = Outcome::Inconclusive;
    long iterations = 0;
    double max_residual = 0.0;  // family max of tr(Q state_n) at stop
    bool stationary = false;    // the iterate hit an exact fixed point
    std::string detail;

    bool verified() const { return outcome == Outcome::Verified; }
};

/// Numeric semidecision of the bound-function premise of the total-
/// correctness loop rule: tr(Q ([|S|] o E_1)^n (rho)) -> 0 for all rho,
/// checked on the Hermitian spanning family (linearity extends the family
/// to every state). Runs the adjoint iterate Q_{n+1} = M1^dag wp(S, Q_n) M1,
/// whose traces against the family equal the forward per-state traces.
/// Verdicts are "verified to tolerance" or "inconclusive" - never refuted.
inline RankingReport check_ranking(const TypedUnit& u, const StmtPtr& loop, const CMat& q,
                                   const EvalConfig& cfg) {
    const While* w = std::get_if<While>(&loop->node);
    if (!w) throw Error("check_ranking expects a while node");
    const CMat m1 = u.global_meas_op(w->meas, w->reg, 1);

    RankingReport rep;
    CMat cur = hermitize(q);
    rep.max_residual = spanning_family_max(cur);
    if (rep.max_residual < cfg.tol_rank) {
        rep.outcome = RankingReport::Outcome::Verified;
        return rep;
    }
    for (long n = 0; n < cfg.max_iter; ++n) {
        TransformerResult body = wp(u, w->body, cur, cfg);
        if (!body.stats.converged) {
            rep.detail = "wp of the loop body did not converge";
            rep.iterations = n;
            return rep;
        }
        CMat next = hermitize(m1.adjoint() * body.pred * m1);
        const double step = max_abs(next - cur);
        cur = std::move(next);
        rep.iterations = n + 1;
        rep.max_residual = spanning_family_max(cur);
        if (rep.max_residual < cfg.tol_rank) {
            rep.outcome = RankingReport::Outcome::Verified;
            return rep;
        }
        if (step == 0.0) {
            // Exact fixed point above tolerance: the sequence is constant,
            // so the limit cannot vanish numerically.
            rep.stationary = true;
            rep.detail = "iterate is stationary with residual " +
                         std::to_string(rep.max_residual);
            return rep;
        }
    }
    rep.detail = "iteration cap reached with residual " + std::to_string(rep.max_residual);
    return rep;
}

}  // namespace qhoare

#endif  // QHOARE_VERIFY_HPP_
