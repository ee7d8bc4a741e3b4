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

#ifndef QHOARE_TRANSFORMERS_HPP_
#define QHOARE_TRANSFORMERS_HPP_

#include "qhoare/config.hpp"
#include "qhoare/semantics.hpp"

namespace qhoare {

struct TransformerStats {
    bool converged = true;     // every loop fixpoint met tol_fix
    long loop_iterations = 0;  // fixpoint iterations, all loops combined
    double last_step = 0.0;    // max-norm of the final iteration step

    void merge(const TransformerStats& o) {
        converged = converged && o.converged;
        loop_iterations += o.loop_iterations;
        last_step = std::max(last_step, o.last_step);
    }
};

struct TransformerResult {
    CMat pred;
    TransformerStats stats;
};

namespace detail {

/// Structural wp/wlp recursion. The two transformers differ only in the
/// seed of the loop iteration: 0 for wp (increasing to the supremum),
/// I for wlp (decreasing to the infimum).
inline TransformerResult precondition(const TypedUnit& u, const StmtPtr& s, const CMat& post,
                                      bool liberal, const EvalConfig& cfg) {
    return std::visit(
        overloaded{
            [&](const Skip&) { return TransformerResult{post, {}}; },
            [&](const Init& n) {
                CMat out = CMat::Zero(post.rows(), post.cols());
                for (const CMat& k : u.init_kraus(n.var)) out += k.adjoint() * post * k;
                return TransformerResult{std::move(out), {}};
            },
            [&](const ApplyUnitary& n) {
                const CMat g = u.global_gate(n);
                return TransformerResult{g.adjoint() * post * g, {}};
            },
            [&](const Seq& n) {
                TransformerResult inner = precondition(u, n.second, post, liberal, cfg);
                TransformerResult outer = precondition(u, n.first, inner.pred, liberal, cfg);
                outer.stats.merge(inner.stats);
                return outer;
            },
            [&](const Measure& n) {
                TransformerResult out{CMat::Zero(post.rows(), post.cols()), {}};
                for (const auto& [outcome, arm] : n.arms) {
                    const CMat m = u.global_meas_op(n.meas, n.reg, outcome);
                    TransformerResult branch = precondition(u, arm, post, liberal, cfg);
                    out.pred += m.adjoint() * branch.pred * m;
                    out.stats.merge(branch.stats);
                }
                return out;
            },
            [&](const While& n) {
                const CMat m0 = u.global_meas_op(n.meas, n.reg, 0);
                const CMat m1 = u.global_meas_op(n.meas, n.reg, 1);
                const long d = post.rows();
                TransformerResult out{liberal ? CMat(CMat::Identity(d, d)) : CMat(CMat::Zero(d, d)),
                                      {}};
                const CMat head = m0.adjoint() * post * m0;
                double step = 0.0;
                bool met = false;
                for (long k = 0; k < cfg.max_iter; ++k) {
                    TransformerResult body = precondition(u, n.body, out.pred, liberal, cfg);
                    out.stats.merge(body.stats);
                    CMat next = hermitize(head + m1.adjoint() * body.pred * m1);
                    step = max_abs(next - out.pred);
                    out.pred = std::move(next);
                    out.stats.loop_iterations += 1;
                    if (step < cfg.tol_fix) {
                        met = true;
                        break;
                    }
                }
                out.stats.converged = out.stats.converged && met;
                out.stats.last_step = std::max(out.stats.last_step, step);
                return out;
            },
        },
        s->node);
}

}  // namespace detail

/// Weakest precondition: tr(wp(S,P) rho) = tr(P [|S|](rho)). A truncated
/// loop iteration under-approximates (the sequence increases to wp).
inline TransformerResult wp(const TypedUnit& u, const StmtPtr& s, const CMat& post,
                            const EvalConfig& cfg) {
    return detail::precondition(u, s, post, /*liberal=*/false, cfg);
}

/// Weakest liberal precondition: tr(wlp(S,P) rho) = tr(P [|S|](rho)) +
/// tr(rho) - tr([|S|](rho)). A truncated iteration over-approximates.
inline TransformerResult wlp(const TypedUnit& u, const StmtPtr& s, const CMat& post,
                             const EvalConfig& cfg) {
    return detail::precondition(u, s, post, /*liberal=*/true, cfg);
}

}  // namespace qhoare

#endif  // QHOARE_TRANSFORMERS_HPP_
