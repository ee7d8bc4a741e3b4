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

#ifndef QHOARE_IO_HPP_
#define QHOARE_IO_HPP_

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qhoare/proofcheck.hpp"
#include "qhoare/states.hpp"
#include "qhoare/typecheck.hpp"

namespace qhoare {

using Json = nlohmann::ordered_json;

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
    return j;
}

inline void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << j.dump(2) << "\n";
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// ---------------------------------------------------------------------------
// Matrix format: {"dim": n, "rows": [[[re, im], ...], ...]}

inline Json matrix_to_json(const CMat& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    Json j;
    j["dim"] = m.rows();
    j["rows"] = std::move(rows);
    return j;
}

inline CMat matrix_from_json(const Json& j, const std::string& where) {
    if (!j.contains("dim") || !j["dim"].is_number_integer())
        throw IoError(where + ": missing integer \"dim\"");
    const long dim = j["dim"].get<long>();
    if (dim <= 0) throw IoError(where + ": \"dim\" must be positive");
    if (!j.contains("rows") || !j["rows"].is_array() ||
        j["rows"].size() != static_cast<size_t>(dim))
        throw IoError(where + ": \"rows\" must be an array of " + std::to_string(dim) + " rows");
    CMat m(dim, dim);
    for (long r = 0; r < dim; ++r) {
        const Json& row = j["rows"][r];
        if (!row.is_array() || row.size() != static_cast<size_t>(dim))
            throw IoError(where + ": ragged row " + std::to_string(r));
        for (long c = 0; c < dim; ++c) {
            const Json& e = row[c];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                throw IoError(where + ": entry (" + std::to_string(r) + "," + std::to_string(c) +
                              ") must be [re, im]");
            const double re = e[0].get<double>(), im = e[1].get<double>();
            if (!std::isfinite(re) || !std::isfinite(im))
                throw IoError(where + ": non-finite entry at (" + std::to_string(r) + "," +
                              std::to_string(c) + ")");
            m(r, c) = Complex(re, im);
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// State format: matrix + "shape": [[var, dim], ...]

inline Json state_to_json(const DensityOperator& rho) {
    Json j;
    j["dim"] = rho.matrix.rows();
    Json shape = Json::array();
    for (const auto& [name, dim] : rho.shape.factors())
        shape.push_back(Json::array({name, dim}));
    j["shape"] = std::move(shape);
    j["rows"] = matrix_to_json(rho.matrix)["rows"];
    return j;
}

inline DensityOperator state_from_json(const Json& j, const std::string& where) {
    if (!j.contains("shape") || !j["shape"].is_array())
        throw IoError(where + ": missing \"shape\" array");
    std::vector<std::pair<std::string, int>> factors;
    for (const Json& f : j["shape"]) {
        if (!f.is_array() || f.size() != 2 || !f[0].is_string() || !f[1].is_number_integer())
            throw IoError(where + ": shape entries must be [variable, dimension]");
        factors.emplace_back(f[0].get<std::string>(), f[1].get<int>());
    }
    DensityOperator rho{matrix_from_json(j, where), SpaceShape(std::move(factors))};
    if (rho.matrix.rows() != rho.shape.total_dim())
        throw IoError(where + ": matrix dimension does not match the shape product");
    return rho;
}

inline DensityOperator read_state_file(const std::string& path) {
    return state_from_json(load_json_file(path), path);
}

inline void write_state_file(const std::string& path, const DensityOperator& rho) {
    write_json_file(path, state_to_json(rho));
}

/// States must name the program's declared variables, in declaration order,
/// with matching dimensions.
inline void check_state_shape(const DensityOperator& rho, const TypedUnit& u,
                              const std::string& where) {
    if (rho.shape != u.shape)
        throw IoError(where + ": state shape does not match the program declarations");
}

// ---------------------------------------------------------------------------
// Predicate format: matrix + "register": [vars]; embedded onto the global
// space of the unit it is read against.

inline Json predicate_to_json(const CMat& global, const SpaceShape& shape) {
    Json j;
    j["dim"] = global.rows();
    Json reg = Json::array();
    for (const auto& [name, _] : shape.factors()) reg.push_back(name);
    j["register"] = std::move(reg);
    j["rows"] = matrix_to_json(global)["rows"];
    return j;
}

inline CMat predicate_from_json(const Json& j, const TypedUnit& u, const std::string& where,
                                double tol = kPredicateLoadTol) {
    CMat m = matrix_from_json(j, where);
    std::vector<std::string> reg;
    if (j.contains("register")) {
        if (!j["register"].is_array()) throw IoError(where + ": \"register\" must be an array");
        for (const Json& v : j["register"]) {
            if (!v.is_string()) throw IoError(where + ": register entries must be variable names");
            reg.push_back(v.get<std::string>());
        }
    } else {
        for (const auto& [name, _] : u.shape.factors()) reg.push_back(name);
    }
    if (!is_predicate(m, tol))
        throw IoError(where + ": matrix is not a quantum predicate (needs 0 <= P <= I)");
    try {
        return embed(m, reg, u.shape);
    } catch (const Error& e) {
        throw IoError(where + ": " + e.what());
    }
}

inline CMat read_predicate_file(const std::string& path, const TypedUnit& u,
                                double tol = kPredicateLoadTol) {
    return predicate_from_json(load_json_file(path), u, path, tol);
}

inline void write_predicate_file(const std::string& path, const CMat& global,
                                 const SpaceShape& shape) {
    write_json_file(path, predicate_to_json(global, shape));
}

// ---------------------------------------------------------------------------
// Proof scripts.

inline Json script_to_json(const ProofScript& script, const SpaceShape& shape) {
    Json j;
    j["mode"] = script.mode == ProofMode::Partial ? "partial" : "total";
    Json preds = Json::object();
    for (const auto& [name, m] : script.predicates) preds[name] = predicate_to_json(m, shape);
    j["predicates"] = std::move(preds);
    Json steps = Json::array();
    for (const auto& s : script.steps) {
        Json js;
        js["id"] = s.id;
        js["rule"] = to_string(s.rule);
        js["pre"] = s.pre;
        js["path"] = s.path;
        js["post"] = s.post;
        js["premises"] = s.premises;
        if (!s.params.empty()) js["params"] = s.params;
        if (s.flag_nonconverged) js["flags"] = Json::array({"nonconverged"});
        steps.push_back(std::move(js));
    }
    j["steps"] = std::move(steps);
    j["goal"] = script.goal;
    return j;
}

inline ProofScript script_from_json(const Json& j, const TypedUnit& u,
                                    const std::string& script_dir, const std::string& where,
                                    double tol = kPredicateLoadTol) {
    ProofScript script;
    if (!j.contains("mode") || !j["mode"].is_string())
        throw IoError(where + ": missing \"mode\"");
    const std::string mode = j["mode"].get<std::string>();
    if (mode == "partial")
        script.mode = ProofMode::Partial;
    else if (mode == "total")
        script.mode = ProofMode::Total;
    else
        throw IoError(where + ": mode must be \"partial\" or \"total\"");

    if (!j.contains("predicates") || !j["predicates"].is_object())
        throw IoError(where + ": missing \"predicates\" object");
    for (const auto& [name, val] : j["predicates"].items()) {
        if (val.is_string()) {
            const auto path = std::filesystem::path(script_dir) / val.get<std::string>();
            script.predicates.emplace(name, read_predicate_file(path.string(), u, tol));
        } else {
            script.predicates.emplace(name,
                                      predicate_from_json(val, u, where + ":" + name, tol));
        }
    }

    if (!j.contains("steps") || !j["steps"].is_array())
        throw IoError(where + ": missing \"steps\" array");
    for (const Json& js : j["steps"]) {
        ProofStep s;
        for (const char* field : {"id", "rule", "pre", "path", "post"})
            if (!js.contains(field) || !js[field].is_string())
                throw IoError(where + ": every step needs string \"" + std::string(field) + "\"");
        s.id = js["id"].get<std::string>();
        s.rule = rule_from_string(js["rule"].get<std::string>());
        s.pre = js["pre"].get<std::string>();
        s.path = js["path"].get<std::string>();
        s.post = js["post"].get<std::string>();
        if (js.contains("premises"))
            for (const Json& p : js["premises"]) s.premises.push_back(p.get<std::string>());
        if (js.contains("params"))
            for (const auto& [k, v] : js["params"].items())
                s.params[k] = v.get<std::string>();
        if (js.contains("flags"))
            for (const Json& f : js["flags"])
                if (f.get<std::string>() == "nonconverged") s.flag_nonconverged = true;
        script.steps.push_back(std::move(s));
    }
    if (!j.contains("goal") || !j["goal"].is_string()) throw IoError(where + ": missing \"goal\"");
    script.goal = j["goal"].get<std::string>();

    for (const auto& s : script.steps) {
        for (const auto* name : {&s.pre, &s.post})
            if (!script.predicates.count(*name))
                throw IoError(where + ": step " + s.id + " references unknown predicate '" +
                              *name + "'");
        for (const auto& [_, name] : s.params)
            if (!script.predicates.count(name))
                throw IoError(where + ": step " + s.id + " references unknown predicate '" +
                              name + "'");
    }
    return script;
}

inline ProofScript read_proof_script(const std::string& path, const TypedUnit& u,
                                     double tol = kPredicateLoadTol) {
    const std::string dir = std::filesystem::path(path).parent_path().string();
    return script_from_json(load_json_file(path), u, dir.empty() ? "." : dir, path, tol);
}

// ---------------------------------------------------------------------------
// Reports.

inline Json verdict_to_json(const Verdict& v, const std::string& witness_path) {
    Json j;
    j["verdict"] = to_string(v.kind);
    j["margin"] = v.margin;
    if (v.witness)
        j["witness"] = witness_path;
    else
        j["witness"] = nullptr;
    Json rep;
    rep["detail"] = v.detail;
    rep["converged"] = v.stats.converged;
    rep["loop_iterations"] = v.stats.loop_iterations;
    rep["last_step"] = v.stats.last_step;
    j["report"] = std::move(rep);
    return j;
}

inline Json certificate_to_json(const ScriptResult& res, const ProofScript& script) {
    Json j;
    switch (res.status) {
        case ScriptResult::Status::Certified: j["status"] = "certified"; break;
        case ScriptResult::Status::Violation: j["status"] = "violation"; break;
        case ScriptResult::Status::Inconclusive: j["status"] = "inconclusive"; break;
    }
    j["mode"] = script.mode == ProofMode::Partial ? "partial" : "total";
    j["goal"] = script.goal;
    if (res.status != ScriptResult::Status::Certified) {
        j["step"] = res.failed_step;
        j["detail"] = res.detail;
        return j;
    }
    Json steps = Json::array();
    for (const auto& sc : res.certificate) {
        Json js;
        js["id"] = sc.id;
        js["rule"] = sc.rule;
        Json conds = Json::array();
        for (const auto& c : sc.conditions) {
            Json jc;
            jc["kind"] = c.kind;
            jc["what"] = c.what;
            jc["margin"] = c.margin;
            jc["ok"] = c.ok;
            conds.push_back(std::move(jc));
        }
        js["conditions"] = std::move(conds);
        steps.push_back(std::move(js));
    }
    j["steps"] = std::move(steps);
    return j;
}

}  // namespace qhoare

#endif  // QHOARE_IO_HPP_
