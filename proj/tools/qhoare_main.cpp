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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qhoare/io.hpp"
#include "qhoare/parser.hpp"
#include "qhoare/pretty.hpp"

namespace {

using namespace qhoare;

// Exit codes: 0 ok, 1 usage/I-O, 2 parse/type, 3 verification reject,
// 4 inconclusive.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFrontend = 2;
constexpr int kExitReject = 3;
constexpr int kExitInconclusive = 4;

struct Options {
    EvalConfig cfg;
    bool json = false;
};

void emit(const Options& opt, const Json& j, const std::string& human) {
    if (opt.json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << human;
}

TypedUnit load_program(const std::string& path, const Options& opt) {
    return typecheck(parse(read_text_file(path)), opt.cfg.dim_cap);
}

int cmd_check(const std::string& program, const std::string& state_path, const Options& opt) {
    const TypedUnit u = load_program(program, opt);
    if (!state_path.empty()) {
        const DensityOperator rho = read_state_file(state_path);
        check_state_shape(rho, u, state_path);
        try {
            rho.validate(opt.cfg.tol_psd);
        } catch (const Error& e) {
            throw IoError(state_path + ": " + e.what());
        }
    }
    Json j;
    j["status"] = "ok";
    Json vars = Json::array();
    for (const auto& v : u.unit.vars)
        vars.push_back(Json{{"name", v.name}, {"type", v.is_bool ? "bool" : "int"},
                            {"dim", v.dim}});
    j["variables"] = vars;
    Json gates = Json::array();
    for (const auto& g : u.unit.gates) gates.push_back(g.name);
    j["gates"] = gates;
    Json meas = Json::array();
    for (const auto& m : u.unit.measurements)
        meas.push_back(Json{{"name", m.name}, {"outcomes", m.outcomes.size()}});
    j["measurements"] = meas;
    j["total_dim"] = u.shape.total_dim();

    std::string human = "ok: " + std::to_string(u.unit.vars.size()) + " variable(s), " +
                        std::to_string(u.unit.gates.size()) + " gate(s), " +
                        std::to_string(u.unit.measurements.size()) +
                        " measurement(s), total dimension " +
                        std::to_string(u.shape.total_dim()) + "\n";
    emit(opt, j, human);
    return kExitOk;
}

int cmd_run(const std::string& program, const std::string& state_path, const std::string& out,
            const Options& opt) {
    const TypedUnit u = load_program(program, opt);
    const DensityOperator rho = read_state_file(state_path);
    check_state_shape(rho, u, state_path);
    try {
        rho.validate(opt.cfg.tol_psd);
    } catch (const Error& e) {
        throw IoError(state_path + ": " + e.what());
    }

    const TerminationReport rep = termination_probability(u, u.unit.main, rho.matrix, opt.cfg);
    write_state_file(out, DensityOperator{rep.eval.state, u.shape});

    Json j;
    j["trace"] = rep.p_term;
    j["residual"] = rep.eval.stats.residual;
    j["divergence_lower_bound"] = rep.p_div_lower;
    j["loop_iterations"] = rep.eval.stats.loop_iterations;
    j["plateaued"] = rep.eval.stats.plateaued;
    j["hit_iteration_cap"] = rep.eval.stats.hit_cap;
    j["output"] = out;
    std::ostringstream human;
    human.precision(12);
    human << "tr(result) = " << rep.p_term << "\nresidual = " << rep.eval.stats.residual
          << "\ndivergence lower bound = " << rep.p_div_lower << "\nresult written to " << out
          << "\n";
    emit(opt, j, human.str());
    return rep.eval.stats.hit_cap ? kExitInconclusive : kExitOk;
}

int cmd_transformer(const std::string& program, const std::string& post_path,
                    const std::string& out, bool liberal, const Options& opt) {
    const TypedUnit u = load_program(program, opt);
    const CMat post = read_predicate_file(post_path, u);
    const TransformerResult res = liberal ? wlp(u, u.unit.main, post, opt.cfg)
                                          : wp(u, u.unit.main, post, opt.cfg);
    write_predicate_file(out, res.pred, u.shape);
    Json j;
    j["transformer"] = liberal ? "wlp" : "wp";
    j["converged"] = res.stats.converged;
    j["loop_iterations"] = res.stats.loop_iterations;
    j["last_step"] = res.stats.last_step;
    j["output"] = out;
    std::ostringstream human;
    human << (liberal ? "wlp" : "wp") << " written to " << out << " ("
          << res.stats.loop_iterations << " fixpoint iteration(s)"
          << (res.stats.converged ? "" : ", NOT converged") << ")\n";
    emit(opt, j, human.str());
    return res.stats.converged ? kExitOk : kExitInconclusive;
}

int cmd_verify(const std::string& program, const std::string& pre_path,
               const std::string& post_path, const std::string& mode,
               const std::string& witness_out, const Options& opt) {
    const TypedUnit u = load_program(program, opt);
    Triple t;
    t.pre = read_predicate_file(pre_path, u);
    t.post = read_predicate_file(post_path, u);
    t.prog = u.unit.main;
    const Verdict v = mode == "total" ? check_total(u, t, opt.cfg)
                                      : check_partial(u, t, opt.cfg);
    std::string witness_path;
    if (v.witness) {
        witness_path = witness_out;
        write_state_file(witness_path, DensityOperator{*v.witness, u.shape});
    }
    emit(opt, verdict_to_json(v, witness_path),
         std::string(to_string(v.kind)) + " (margin " + std::to_string(v.margin) + ")" +
             (v.witness ? ", witness written to " + witness_path : "") + "\n");
    switch (v.kind) {
        case VerdictKind::Accept: return kExitOk;
        case VerdictKind::Reject: return kExitReject;
        default: return kExitInconclusive;
    }
}

int cmd_prove(const std::string& program, const std::string& proof_path, const Options& opt) {
    const TypedUnit u = load_program(program, opt);
    const ProofScript script = read_proof_script(proof_path, u);
    const ScriptResult res = check_script(u, script, opt.cfg);
    std::string human;
    switch (res.status) {
        case ScriptResult::Status::Certified:
            human = "certified: " + std::to_string(res.certificate.size()) + " step(s)\n";
            break;
        case ScriptResult::Status::Violation:
            human = "violation at step " + res.failed_step + ": " + res.detail + "\n";
            break;
        case ScriptResult::Status::Inconclusive:
            human = "inconclusive at step " + res.failed_step + ": " + res.detail + "\n";
            break;
    }
    emit(opt, certificate_to_json(res, script), human);
    switch (res.status) {
        case ScriptResult::Status::Certified: return kExitOk;
        case ScriptResult::Status::Violation: return kExitReject;
        default: return kExitInconclusive;
    }
}

int cmd_suggest(const std::string& program, const std::string& post_path,
                const std::string& mode, const std::string& out, const Options& opt) {
    const TypedUnit u = load_program(program, opt);
    const CMat post = read_predicate_file(post_path, u);
    const ProofScript script = suggest_wlp_annotations(
        u, post, mode == "total" ? ProofMode::Total : ProofMode::Partial, opt.cfg);
    const Json j = script_to_json(script, u.shape);
    if (out.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_json_file(out, j);
    int flagged = 0;
    for (const auto& s : script.steps) flagged += s.flag_nonconverged ? 1 : 0;
    if (!opt.json && !out.empty())
        std::cout << "skeleton with " << script.steps.size() << " step(s) written to " << out
                  << (flagged ? " (" + std::to_string(flagged) + " flagged nonconverged)" : "")
                  << "\n";
    return flagged ? kExitInconclusive : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification toolchain for quantum while-programs"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--tol-psd", opt.cfg.tol_psd, "eigenvalue tolerance for PSD/Loewner tests");
    app.add_option("--tol-fix", opt.cfg.tol_fix, "wp/wlp fixpoint step tolerance");
    app.add_option("--tol-rank", opt.cfg.tol_rank, "ranking trace threshold");
    app.add_option("--tol-loop", opt.cfg.tol_loop, "loop live-mass threshold");
    app.add_option("--max-iter", opt.cfg.max_iter, "iteration cap for loops and fixpoints");
    app.add_option("--dim-cap", opt.cfg.dim_cap, "total-dimension cap");
    app.add_flag("--json", opt.json, "machine-readable JSON output");

    std::string program, state, pre, post, proof, mode = "partial";
    std::string out_state = "result.state.json";
    std::string out_pred;
    std::string out_script;
    std::string witness_out = "witness.json";

    auto* check = app.add_subcommand("check", "parse and typecheck a program");
    check->add_option("program", program, "program file (.qw)")->required();
    check->add_option("state", state, "optional state file to validate against");

    auto* run = app.add_subcommand("run", "evaluate the denotational semantics on a state");
    run->add_option("program", program)->required();
    run->add_option("state", state)->required();
    run->add_option("--out", out_state, "output state file");

    auto* wp_cmd = app.add_subcommand("wp", "weakest precondition of the program");
    wp_cmd->add_option("program", program)->required();
    wp_cmd->add_option("post", post, "postcondition predicate file")->required();
    wp_cmd->add_option("--out", out_pred, "output predicate file");

    auto* wlp_cmd = app.add_subcommand("wlp", "weakest liberal precondition of the program");
    wlp_cmd->add_option("program", program)->required();
    wlp_cmd->add_option("post", post)->required();
    wlp_cmd->add_option("--out", out_pred, "output predicate file");

    auto* verify = app.add_subcommand("verify", "check a Hoare triple semantically");
    verify->add_option("program", program)->required();
    verify->add_option("pre", pre)->required();
    verify->add_option("post", post)->required();
    verify->add_option("--mode", mode, "partial|total")
        ->check(CLI::IsMember({"partial", "total"}));
    verify->add_option("--witness-out", witness_out, "where to write a reject witness");

    auto* prove = app.add_subcommand("prove", "check a proof script");
    prove->add_option("program", program)->required();
    prove->add_option("proof", proof, "proof script (JSON)")->required();

    auto* suggest = app.add_subcommand("suggest", "emit the canonical wlp/wp proof skeleton");
    suggest->add_option("program", program)->required();
    suggest->add_option("post", post)->required();
    suggest->add_option("--mode", mode)->check(CLI::IsMember({"partial", "total"}));
    suggest->add_option("--out", out_script, "output proof script file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    auto diagnose = [&](const char* kind, const std::string& what, int code) {
        if (opt.json) {
            Json j;
            j["status"] = "error";
            j["kind"] = kind;
            j["detail"] = what;
            std::cout << j.dump(2) << "\n";
        }
        std::cerr << kind << " error: " << what << "\n";
        return code;
    };
    try {
        if (check->parsed()) return cmd_check(program, state, opt);
        if (run->parsed()) return cmd_run(program, state, out_state, opt);
        if (wp_cmd->parsed())
            return cmd_transformer(program, post,
                                   out_pred.empty() ? "wp.predicate.json" : out_pred, false, opt);
        if (wlp_cmd->parsed())
            return cmd_transformer(program, post,
                                   out_pred.empty() ? "wlp.predicate.json" : out_pred, true, opt);
        if (verify->parsed()) return cmd_verify(program, pre, post, mode, witness_out, opt);
        if (prove->parsed()) return cmd_prove(program, proof, opt);
        if (suggest->parsed()) return cmd_suggest(program, post, mode, out_script, opt);
    } catch (const ParseError& e) {
        return diagnose("parse", e.what(), kExitFrontend);
    } catch (const TypeError& e) {
        return diagnose("type", e.what(), kExitFrontend);
    } catch (const IoError& e) {
        return diagnose("io", e.what(), kExitUsage);
    } catch (const Error& e) {
        return diagnose("internal", e.what(), kExitUsage);
    }
    return kExitUsage;
}
