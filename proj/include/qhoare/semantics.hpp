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

#ifndef QHOARE_SEMANTICS_HPP_
#define QHOARE_SEMANTICS_HPP_

#include <deque>
#include <vector>

#include "qhoare/config.hpp"
#include "qhoare/states.hpp"
#include "qhoare/typecheck.hpp"

namespace qhoare {

/// <S, rho> pair; a null remainder is the terminated marker E.
struct Configuration {
    StmtPtr remainder;
    CMat state;

    bool terminated() const { return remainder == nullptr; }
};

/// One transition of the operational semantics. Deterministic constructs
/// yield a single successor; measurements one per outcome with nonzero
/// post-measurement state; loops the terminating and the unrolled branch.
/// Zero-state measurement branches are discarded.
inline std::vector<Configuration> step(const TypedUnit& u, const Configuration& c) {
    if (c.terminated()) throw Error("cannot step a terminated configuration");
    const Stmt& s = *c.remainder;
    return std::visit(
        overloaded{
            [&](const Skip&) { return std::vector<Configuration>{{nullptr, c.state}}; },
            [&](const Init& n) {
                CMat out = CMat::Zero(c.state.rows(), c.state.cols());
                for (const CMat& k : u.init_kraus(n.var)) out += k * c.state * k.adjoint();
                return std::vector<Configuration>{{nullptr, std::move(out)}};
            },
            [&](const ApplyUnitary& n) {
                const CMat g = u.global_gate(n);
                return std::vector<Configuration>{{nullptr, g * c.state * g.adjoint()}};
            },
            [&](const Seq& n) {
                std::vector<Configuration> out;
                for (Configuration& succ : step(u, {n.first, c.state})) {
                    // Convention E; S2 = S2.
                    StmtPtr rem = succ.terminated()
                                      ? n.second
                                      : make_stmt(Seq{succ.remainder, n.second}, s.pos);
                    out.push_back({std::move(rem), std::move(succ.state)});
                }
                return out;
            },
            [&](const Measure& n) {
                std::vector<Configuration> out;
                for (const auto& [outcome, arm] : n.arms) {
                    const CMat m = u.global_meas_op(n.meas, n.reg, outcome);
                    CMat post = m * c.state * m.adjoint();
                    if (trace_re(post) <= kZeroStateTrace) continue;
                    out.push_back({arm, std::move(post)});
                }
                return out;
            },
            [&](const While& n) {
                std::vector<Configuration> out;
                const CMat m0 = u.global_meas_op(n.meas, n.reg, 0);
                const CMat m1 = u.global_meas_op(n.meas, n.reg, 1);
                CMat stop = m0 * c.state * m0.adjoint();
                if (trace_re(stop) > kZeroStateTrace) out.push_back({nullptr, std::move(stop)});
                CMat cont = m1 * c.state * m1.adjoint();
                if (trace_re(cont) > kZeroStateTrace)
                    out.push_back(
                        {make_stmt(Seq{n.body, c.remainder}, s.pos), std::move(cont)});
                return out;
            },
        },
        s.node);
}

struct TreeNode {
    StmtPtr remainder;  // null for terminated leaves
    CMat state;
    int depth = 0;
    int parent = -1;
    std::vector<int> children;
    bool terminated = false;
    bool depth_capped = false;  // live leaf cut off by the depth bound
};

struct ComputationTree {
    std::vector<TreeNode> nodes;
    int max_depth = 0;

    CMat terminated_sum() const {
        CMat acc;
        bool init = false;
        for (const auto& n : nodes) {
            if (!n.terminated) continue;
            if (!init) {
                acc = n.state;
                init = true;
            } else {
                acc += n.state;
            }
        }
        if (!init) throw Error("tree has no terminated leaves");
        return acc;
    }

    bool has_live_leaf_at(int depth) const {
        for (const auto& n : nodes)
            if (!n.terminated && n.depth == depth && (n.children.empty())) return true;
        return false;
    }
};

/// Breadth-first expansion of the transition relation to max_depth.
inline ComputationTree run_tree(const TypedUnit& u, StmtPtr program, const CMat& rho,
                                int max_depth) {
    ComputationTree tree;
    tree.max_depth = max_depth;
    tree.nodes.push_back({std::move(program), rho, 0, -1, {}, false, false});
    std::deque<int> queue{0};
    while (!queue.empty()) {
        const int idx = queue.front();
        queue.pop_front();
        if (tree.nodes[idx].terminated) continue;
        if (tree.nodes[idx].depth >= max_depth) {
            tree.nodes[idx].depth_capped = true;
            continue;
        }
        const auto succs = step(u, {tree.nodes[idx].remainder, tree.nodes[idx].state});
        for (const Configuration& succ : succs) {
            TreeNode node;
            node.remainder = succ.remainder;
            node.state = succ.state;
            node.depth = tree.nodes[idx].depth + 1;
            node.parent = idx;
            node.terminated = succ.terminated();
            const int child = static_cast<int>(tree.nodes.size());
            tree.nodes.push_back(std::move(node));
            tree.nodes[idx].children.push_back(child);
            if (!tree.nodes[child].terminated) queue.push_back(child);
        }
    }
    return tree;
}

struct EvalStats {
    double residual = 0.0;        // truncation mass not provably placed
    double diverged_lower = 0.0;  // plateau-classified divergence mass
    long loop_iterations = 0;     // loop body evaluations, all loops combined
    bool plateaued = false;
    bool hit_cap = false;  // some loop reached max_iter without converging

    void merge(const EvalStats& o) {
        residual += o.residual;
        diverged_lower += o.diverged_lower;
        loop_iterations += o.loop_iterations;
        plateaued = plateaued || o.plateaued;
        hit_cap = hit_cap || o.hit_cap;
    }
};

struct Evaluation {
    CMat state;
    EvalStats stats;
};

/// Denotational semantics [|S|](rho): the summed result of all terminating
/// computations. Loops run the monotone partial sums of (sem-fun); the
/// evaluation stops when the live mass drops below tol_loop, when it
/// plateaus over kPlateauWindow iterations (the live mass is then reported
/// as probable divergence), or at max_iter (the live mass is then counted
/// into the residual and nothing is claimed about it).
inline Evaluation denote(const TypedUnit& u, const StmtPtr& s, const CMat& rho,
                         const EvalConfig& cfg) {
    return std::visit(
        overloaded{
            [&](const Skip&) { return Evaluation{rho, {}}; },
            [&](const Init& n) {
                CMat out = CMat::Zero(rho.rows(), rho.cols());
                for (const CMat& k : u.init_kraus(n.var)) out += k * rho * k.adjoint();
                return Evaluation{std::move(out), {}};
            },
            [&](const ApplyUnitary& n) {
                const CMat g = u.global_gate(n);
                return Evaluation{g * rho * g.adjoint(), {}};
            },
            [&](const Seq& n) {
                Evaluation first = denote(u, n.first, rho, cfg);
                Evaluation second = denote(u, n.second, first.state, cfg);
                second.stats.merge(first.stats);
                return second;
            },
            [&](const Measure& n) {
                Evaluation out{CMat::Zero(rho.rows(), rho.cols()), {}};
                for (const auto& [outcome, arm] : n.arms) {
                    const CMat m = u.global_meas_op(n.meas, n.reg, outcome);
                    CMat post = m * rho * m.adjoint();
                    if (trace_re(post) <= kZeroStateTrace) continue;
                    Evaluation branch = denote(u, arm, post, cfg);
                    out.state += branch.state;
                    out.stats.merge(branch.stats);
                }
                return out;
            },
            [&](const While& n) {
                const CMat m0 = u.global_meas_op(n.meas, n.reg, 0);
                const CMat m1 = u.global_meas_op(n.meas, n.reg, 1);
                Evaluation out{CMat::Zero(rho.rows(), rho.cols()), {}};
                CMat t = rho;
                std::deque<double> window;
                for (long k = 0; k < cfg.max_iter; ++k) {
                    out.state += m0 * t * m0.adjoint();
                    CMat cont = m1 * t * m1.adjoint();
                    if (trace_re(cont) <= kZeroStateTrace) {
                        out.stats.residual += std::max(0.0, trace_re(cont));
                        return out;  // guard annihilated the live mass
                    }
                    Evaluation body = denote(u, n.body, cont, cfg);
                    t = std::move(body.state);
                    out.stats.merge(body.stats);
                    out.stats.loop_iterations += 1;
                    const double live = trace_re(t);
                    if (live < cfg.tol_loop) {
                        out.stats.residual += std::max(0.0, live);
                        return out;
                    }
                    window.push_back(live);
                    if (static_cast<int>(window.size()) > kPlateauWindow) window.pop_front();
                    if (static_cast<int>(window.size()) == kPlateauWindow &&
                        window.front() - live < cfg.tol_loop) {
                        // tr(t_n) is non-increasing, so the in-window drop
                        // bounds the near-term leak; the rest is reported as
                        // probable divergence mass.
                        const double drop = std::max(0.0, window.front() - live);
                        out.stats.residual += drop;
                        out.stats.diverged_lower += std::max(0.0, live - drop);
                        out.stats.plateaued = true;
                        return out;
                    }
                }
                out.stats.hit_cap = true;
                out.stats.residual += std::max(0.0, trace_re(t));
                return out;
            },
        },
        s->node);
}

struct TerminationReport {
    double p_term = 0.0;
    double p_div_lower = 0.0;
    Evaluation eval;
};

/// p_term = tr([|S|](rho)); the divergence lower bound subtracts the
/// unclassified residual, so it is 0 when a loop merely hit the cap.
inline TerminationReport termination_probability(const TypedUnit& u, const StmtPtr& s,
                                                 const CMat& rho, const EvalConfig& cfg) {
    TerminationReport rep;
    rep.eval = denote(u, s, rho, cfg);
    rep.p_term = trace_re(rep.eval.state);
    rep.p_div_lower = std::max(0.0, trace_re(rho) - rep.p_term - rep.eval.stats.residual);
    return rep;
}

}  // namespace qhoare

#endif  // QHOARE_SEMANTICS_HPP_
