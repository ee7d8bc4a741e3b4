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

#ifndef QHOARE_PROOFCHECK_HPP_
#define QHOARE_PROOFCHECK_HPP_

#include <map>
#include <string>
#include <vector>

#include "qhoare/verify.hpp"

namespace qhoare {

enum class Rule { AxSkip, AxInit, AxUnitary, Seq, Measure, LoopPartial, LoopTotal, Order };

inline const char* to_string(Rule r) {
    switch (r) {
        case Rule::AxSkip: return "AxSkip";
        case Rule::AxInit: return "AxInit";
        case Rule::AxUnitary: return "AxUnitary";
        case Rule::Seq: return "Seq";
        case Rule::Measure: return "Measure";
        case Rule::LoopPartial: return "LoopPartial";
        case Rule::LoopTotal: return "LoopTotal";
        default: return "Order";
    }
}

inline Rule rule_from_string(const std::string& s) {
    if (s == "AxSkip") return Rule::AxSkip;
    if (s == "AxInit") return Rule::AxInit;
    if (s == "AxUnitary") return Rule::AxUnitary;
    if (s == "Seq") return Rule::Seq;
    if (s == "Measure") return Rule::Measure;
    if (s == "LoopPartial") return Rule::LoopPartial;
    if (s == "LoopTotal") return Rule::LoopTotal;
    if (s == "Order") return Rule::Order;
    throw Error("unknown proof rule '" + s + "'");
}

enum class ProofMode { Partial, Total };

struct ProofStep {
    std::string id;
    Rule rule = Rule::AxSkip;
    std::string pre;   // predicate name
    std::string path;  // child-index path into the main AST
    std::string post;  // predicate name
    std::vector<std::string> premises;
    std::map<std::string, std::string> params;  // optional: "q" (Seq), "p"/"q" (loops)
    bool flag_nonconverged = false;  // loop annotation truncated at max_iter
};

struct ProofScript {
    ProofMode mode = ProofMode::Partial;
    std::map<std::string, CMat> predicates;  // resolved to the global space
    std::vector<ProofStep> steps;
    std::string goal;
};

struct SideCondition {
    std::string kind;  // "structural" | "matrix-eq" | "loewner" | "ranking"
    std::string what;
    double margin = 0.0;
    bool ok = true;
};

struct StepCheck {
    std::string id;
    std::string rule;
    std::vector<SideCondition> conditions;
};

struct ScriptResult {
    enum class Status { Certified, Violation, Inconclusive } status = Status::Violation;
    std::string failed_step;
    std::string detail;
    std::vector<StepCheck> certificate;  // one entry per step, in script order
};

namespace detail {

struct StepContext {
    const TypedUnit& unit;
    const ProofScript& script;
    const std::map<std::string, const ProofStep*>& by_id;
    const EvalConfig& cfg;

    const CMat& pred(const std::string& name) const {
        auto it = script.predicates.find(name);
        if (it == script.predicates.end()) throw Error("unknown predicate '" + name + "'");
        return it->second;
    }
    const ProofStep& premise(const ProofStep& step, size_t i) const {
        auto it = by_id.find(step.premises[i]);
        if (it == by_id.end())
            throw Error("step " + step.id + ": dangling premise '" + step.premises[i] + "'");
        return *it->second;
    }
};

inline void add_matrix_eq(StepCheck& out, const std::string& what, const CMat& a, const CMat& b) {
    const double dev = max_abs(a - b);
    out.conditions.push_back({"matrix-eq", what, dev, dev <= kProofEqTol});
}

inline void add_loewner(StepCheck& out, const std::string& what, const CMat& a, const CMat& b,
                        double tol) {
    const double lambda = min_eigenvalue(b - a);
    out.conditions.push_back({"loewner", what, lambda, lambda >= -tol});
}

inline void add_structural(StepCheck& out, const std::string& what, bool ok) {
    out.conditions.push_back({"structural", what, 0.0, ok});
}

/// Checks one step against its rule; premises are assumed already checked.
/// Ranking inconclusiveness is marked on the condition with kind "ranking"
/// and ok=false together with detail text, and is telling apart violations.
inline StepCheck check_step(const StepContext& ctx, const ProofStep& step) {
    StepCheck out{step.id, to_string(step.rule), {}};
    const StmtPtr node = resolve_path(ctx.unit.unit.main, step.path);
    const CMat& pre = ctx.pred(step.pre);
    const CMat& post = ctx.pred(step.post);
    const auto expect_premises = [&](size_t n) {
        if (step.premises.size() != n)
            throw Error("step " + step.id + ": rule " + to_string(step.rule) + " takes " +
                        std::to_string(n) + " premise(s)");
    };

    switch (step.rule) {
        case Rule::AxSkip: {
            expect_premises(0);
            add_structural(out, "program fragment is skip",
                           std::holds_alternative<Skip>(node->node));
            if (out.conditions.back().ok) add_matrix_eq(out, "pre = post", pre, post);
            break;
        }
        case Rule::AxInit: {
            expect_premises(0);
            const Init* init = std::get_if<Init>(&node->node);
            add_structural(out, "program fragment is an initialization", init != nullptr);
            if (!init) break;
            CMat expect = CMat::Zero(post.rows(), post.cols());
            for (const CMat& k : ctx.unit.init_kraus(init->var))
                expect += k.adjoint() * post * k;
            add_matrix_eq(out, "pre = sum_n |n><0| post |0><n|", pre, expect);
            break;
        }
        case Rule::AxUnitary: {
            expect_premises(0);
            const ApplyUnitary* app = std::get_if<ApplyUnitary>(&node->node);
            add_structural(out, "program fragment is a unitary application", app != nullptr);
            if (!app) break;
            const CMat g = ctx.unit.global_gate(*app);
            add_matrix_eq(out, "pre = U^dag post U", pre, CMat(g.adjoint() * post * g));
            break;
        }
        case Rule::Seq: {
            expect_premises(2);
            add_structural(out, "program fragment is a sequence",
                           std::holds_alternative<Seq>(node->node));
            const ProofStep& p1 = ctx.premise(step, 0);
            const ProofStep& p2 = ctx.premise(step, 1);
            add_structural(out, "premise paths are the two children",
                           p1.path == (step.path.empty() ? "0" : step.path + ".0") &&
                               p2.path == (step.path.empty() ? "1" : step.path + ".1"));
            add_matrix_eq(out, "premises chain through the midpoint", ctx.pred(p1.post),
                          ctx.pred(p2.pre));
            if (auto it = step.params.find("q"); it != step.params.end())
                add_matrix_eq(out, "params.q matches the midpoint", ctx.pred(it->second),
                              ctx.pred(p1.post));
            add_matrix_eq(out, "pre matches first premise", pre, ctx.pred(p1.pre));
            add_matrix_eq(out, "post matches second premise", post, ctx.pred(p2.post));
            break;
        }
        case Rule::Measure: {
            const Measure* meas = std::get_if<Measure>(&node->node);
            add_structural(out, "program fragment is a measurement", meas != nullptr);
            if (!meas) break;
            expect_premises(meas->arms.size());
            CMat sum = CMat::Zero(pre.rows(), pre.cols());
            bool arms_ok = true;
            for (size_t i = 0; i < meas->arms.size(); ++i) {
                const ProofStep& pm = ctx.premise(step, i);
                const std::string want =
                    step.path.empty() ? std::to_string(i) : step.path + "." + std::to_string(i);
                if (pm.path != want) arms_ok = false;
                add_matrix_eq(out,
                              "arm " + std::to_string(meas->arms[i].first) +
                                  " premise post matches conclusion post",
                              ctx.pred(pm.post), post);
                const CMat m = ctx.unit.global_meas_op(meas->meas, meas->reg,
                                                       meas->arms[i].first);
                sum += m.adjoint() * ctx.pred(pm.pre) * m;
            }
            add_structural(out, "premise paths cover the arms in order", arms_ok);
            add_matrix_eq(out, "pre = sum_m M_m^dag P_m M_m", pre, sum);
            break;
        }
        case Rule::LoopPartial:
        case Rule::LoopTotal: {
            expect_premises(1);
            const While* loop = std::get_if<While>(&node->node);
            add_structural(out, "program fragment is a loop", loop != nullptr);
            if (!loop) break;
            const ProofStep& body = ctx.premise(step, 0);
            add_structural(out, "premise path is the loop body",
                           body.path == (step.path.empty() ? "0" : step.path + ".0"));
            const CMat m0 = ctx.unit.global_meas_op(loop->meas, loop->reg, 0);
            const CMat m1 = ctx.unit.global_meas_op(loop->meas, loop->reg, 1);
            const CMat& q = ctx.pred(body.pre);
            const CMat mix = m0.adjoint() * post * m0 + m1.adjoint() * q * m1;
            add_matrix_eq(out, "premise post = M0^dag P M0 + M1^dag Q M1", ctx.pred(body.post),
                          mix);
            add_matrix_eq(out, "conclusion pre = M0^dag P M0 + M1^dag Q M1", pre, mix);
            if (auto it = step.params.find("p"); it != step.params.end())
                add_matrix_eq(out, "params.p matches conclusion post", ctx.pred(it->second), post);
            if (auto it = step.params.find("q"); it != step.params.end())
                add_matrix_eq(out, "params.q matches premise pre", ctx.pred(it->second), q);
            if (step.rule == Rule::LoopTotal) {
                const RankingReport rank =
                    check_ranking(ctx.unit, node, CMat(m1.adjoint() * q * m1), ctx.cfg);
                SideCondition cond;
                cond.kind = "ranking";
                cond.what = "bound-function premise on M1^dag Q M1 (" +
                            std::to_string(rank.iterations) + " iterations)";
                cond.margin = rank.max_residual;
                cond.ok = rank.verified();
                out.conditions.push_back(cond);
            }
            break;
        }
        case Rule::Order: {
            expect_premises(1);
            const ProofStep& inner = ctx.premise(step, 0);
            add_structural(out, "premise proves the same program fragment",
                           inner.path == step.path);
            add_loewner(out, "pre <= premise pre", pre, ctx.pred(inner.pre), ctx.cfg.tol_psd);
            add_loewner(out, "premise post <= post", ctx.pred(inner.post), post,
                        ctx.cfg.tol_psd);
            break;
        }
    }
    return out;
}

}  // namespace detail

/// Checks a proof script step by step in script order. Returns a certificate
/// listing every discharged side condition with its numeric margin, the
/// first violation, or an inconclusive outcome when a total-correctness
/// ranking premise could not be confirmed (the proof is then neither
/// certified nor rejected as unsound).
inline ScriptResult check_script(const TypedUnit& u, const ProofScript& script,
                                 const EvalConfig& cfg) {
    ScriptResult res;
    std::map<std::string, const ProofStep*> by_id;
    for (const auto& s : script.steps) {
        if (by_id.count(s.id)) throw Error("duplicate step id '" + s.id + "'");
        for (const auto& p : s.premises)
            if (!by_id.count(p))
                throw Error("step " + s.id + ": premise '" + p +
                            "' does not precede it (dangling or cyclic)");
        by_id[s.id] = &s;
    }
    if (!by_id.count(script.goal)) throw Error("goal step '" + script.goal + "' not found");

    detail::StepContext ctx{u, script, by_id, cfg};
    for (const auto& step : script.steps) {
        if (script.mode == ProofMode::Total && step.rule == Rule::LoopPartial) {
            res.status = ScriptResult::Status::Violation;
            res.failed_step = step.id;
            res.detail = "LoopPartial is not a rule of the total-correctness system";
            return res;
        }
        StepCheck check = detail::check_step(ctx, step);
        for (const auto& cond : check.conditions) {
            if (cond.ok) continue;
            if (cond.kind == "ranking") {
                res.status = ScriptResult::Status::Inconclusive;
                res.failed_step = step.id;
                res.detail = "ranking premise not confirmed: " + cond.what + " (residual " +
                             std::to_string(cond.margin) + ")";
                return res;
            }
            if (step.flag_nonconverged && cond.kind == "matrix-eq") {
                res.status = ScriptResult::Status::Inconclusive;
                res.failed_step = step.id;
                res.detail = "loop annotation did not converge; side condition off by " +
                             std::to_string(cond.margin);
                return res;
            }
            res.status = ScriptResult::Status::Violation;
            res.failed_step = step.id;
            res.detail = cond.what + (cond.kind == "matrix-eq"
                                          ? " (max deviation " + std::to_string(cond.margin) + ")"
                                      : cond.kind == "loewner"
                                          ? " (most negative eigenvalue " +
                                                std::to_string(cond.margin) + ")"
                                          : "");
            return res;
        }
        res.certificate.push_back(std::move(check));
    }
    res.status = ScriptResult::Status::Certified;
    return res;
}

/// Emits the canonical proof skeleton from the completeness construction:
/// every node annotated with its wlp (wp in total mode), one step per AST
/// node. If user_pre is given, a final Order step lowers the computed
/// precondition onto it. Loops whose fixpoint hit the iteration cap are
/// flagged; their side conditions are reported as non-convergence rather
/// than violations.
inline ProofScript suggest_wlp_annotations(const TypedUnit& u, const CMat& post, ProofMode mode,
                                           const EvalConfig& cfg,
                                           const CMat* user_pre = nullptr) {
    ProofScript script;
    script.mode = mode;
    int pred_counter = 0, step_counter = 0;
    auto add_pred = [&](const CMat& m) {
        const std::string name = "P" + std::to_string(pred_counter++);
        script.predicates.emplace(name, m);
        return name;
    };
    auto next_id = [&] { return "s" + std::to_string(step_counter++); };
    const bool liberal = mode == ProofMode::Partial;

    // Returns (step id, pre name). Steps are appended bottom-up, so every
    // premise precedes its consumer.
    auto annotate = [&](auto&& self, const StmtPtr& node, const std::string& path,
                        const CMat& post_m, const std::string& post_name)
        -> std::pair<std::string, std::string> {
        auto child = [&](int i) {
            return path.empty() ? std::to_string(i) : path + "." + std::to_string(i);
        };
        return std::visit(
            overloaded{
                [&](const Skip&) {
                    ProofStep st{next_id(), Rule::AxSkip, post_name, path, post_name, {}, {}};
                    script.steps.push_back(st);
                    return std::pair{st.id, post_name};
                },
                [&](const Init& n) {
                    CMat pre = CMat::Zero(post_m.rows(), post_m.cols());
                    for (const CMat& k : u.init_kraus(n.var)) pre += k.adjoint() * post_m * k;
                    const std::string pre_name = add_pred(hermitize(pre));
                    ProofStep st{next_id(), Rule::AxInit, pre_name, path, post_name, {}, {}};
                    script.steps.push_back(st);
                    return std::pair{st.id, pre_name};
                },
                [&](const ApplyUnitary& n) {
                    const CMat g = u.global_gate(n);
                    const std::string pre_name = add_pred(hermitize(g.adjoint() * post_m * g));
                    ProofStep st{next_id(), Rule::AxUnitary, pre_name, path, post_name, {}, {}};
                    script.steps.push_back(st);
                    return std::pair{st.id, pre_name};
                },
                [&](const Seq& n) {
                    auto [id2, mid_name] = self(self, n.second, child(1), post_m, post_name);
                    const CMat& mid = script.predicates.at(mid_name);
                    auto [id1, pre_name] = self(self, n.first, child(0), mid, mid_name);
                    ProofStep st{next_id(), Rule::Seq,      pre_name,
                                 path,      post_name,      {id1, id2},
                                 {{"q", mid_name}}};
                    script.steps.push_back(st);
                    return std::pair{st.id, pre_name};
                },
                [&](const Measure& n) {
                    std::vector<std::string> premises;
                    CMat sum = CMat::Zero(post_m.rows(), post_m.cols());
                    for (size_t i = 0; i < n.arms.size(); ++i) {
                        auto [arm_id, arm_pre] =
                            self(self, n.arms[i].second, child(static_cast<int>(i)), post_m,
                                 post_name);
                        premises.push_back(arm_id);
                        const CMat m = u.global_meas_op(n.meas, n.reg, n.arms[i].first);
                        sum += m.adjoint() * script.predicates.at(arm_pre) * m;
                    }
                    const std::string pre_name = add_pred(hermitize(sum));
                    ProofStep st{next_id(), Rule::Measure, pre_name, path, post_name, premises,
                                 {}};
                    script.steps.push_back(st);
                    return std::pair{st.id, pre_name};
                },
                [&](const While&) {
                    TransformerResult fix = detail::precondition(u, node, post_m, liberal, cfg);
                    const std::string w_name = add_pred(fix.pred);
                    auto [body_id, body_pre] =
                        self(self, std::get<While>(node->node).body, child(0), fix.pred, w_name);
                    ProofStep st{next_id(),
                                 mode == ProofMode::Total ? Rule::LoopTotal : Rule::LoopPartial,
                                 w_name,
                                 path,
                                 post_name,
                                 {body_id},
                                 {{"p", post_name}, {"q", body_pre}}};
                    st.flag_nonconverged = !fix.stats.converged;
                    script.steps.push_back(st);
                    return std::pair{st.id, w_name};
                },
            },
            node->node);
    };

    const std::string post_name = add_pred(post);
    auto [goal_id, pre_name] = annotate(annotate, u.unit.main, "", post, post_name);
    script.goal = goal_id;
    if (user_pre) {
        const std::string user_name = add_pred(*user_pre);
        ProofStep st{next_id(), Rule::Order, user_name, "", post_name, {goal_id}, {}};
        script.steps.push_back(st);
        script.goal = st.id;
    }
    return script;
}

}  // namespace qhoare

#endif  // QHOARE_PROOFCHECK_HPP_
