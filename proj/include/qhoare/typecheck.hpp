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

#ifndef QHOARE_TYPECHECK_HPP_
#define QHOARE_TYPECHECK_HPP_

#include <set>
#include <string>
#include <vector>

#include "qhoare/ast.hpp"
#include "qhoare/config.hpp"
#include "qhoare/gates.hpp"
#include "qhoare/linalg.hpp"
#include "qhoare/space.hpp"

namespace qhoare {

/// A checked source unit together with its global space shape. All name
/// references resolve, declared gates are unitary, measurements complete,
/// register dimensions match; evaluators may assume well-formedness.
struct TypedUnit {
    SourceUnit unit;
    SpaceShape shape;

    long reg_dim(const std::vector<std::string>& reg) const {
        long d = 1;
        for (const auto& v : reg) d *= shape.dim(shape.require(v));
        return d;
    }

    /// The gate matrix on its own register space.
    CMat local_gate(const ApplyUnitary& app) const {
        if (app.gate.is_shift) {
            const int d = shape.dim(shape.require(app.reg[0]));
            return gates::shift(app.gate.shift_amount, d);
        }
        if (const GateDecl* g = unit.find_gate(app.gate.name)) return g->matrix;
        if (auto b = gates::builtin(app.gate.name)) return *b;
        throw TypeError("unknown gate: " + app.gate.name);
    }

    CMat global_gate(const ApplyUnitary& app) const {
        return embed(local_gate(app), app.reg, shape);
    }

    const MeasDecl& measurement(const std::string& name) const {
        const MeasDecl* m = unit.find_measurement(name);
        if (!m) throw TypeError("unknown measurement: " + name);
        return *m;
    }

    CMat global_meas_op(const std::string& meas, const std::vector<std::string>& reg,
                        int outcome) const {
        const MeasDecl& m = measurement(meas);
        for (const auto& [o, mat] : m.outcomes)
            if (o == outcome) return embed(mat, reg, shape);
        throw TypeError("measurement " + meas + " has no outcome " + std::to_string(outcome));
    }

    /// Kraus family of q := 0 on the global space: {|0><n| : n = 0..d_q-1}.
    std::vector<CMat> init_kraus(const std::string& var) const {
        const int d = shape.dim(shape.require(var));
        std::vector<CMat> ops;
        ops.reserve(d);
        for (int n = 0; n < d; ++n) ops.push_back(embed(ketbra(d, 0, n), {var}, shape));
        return ops;
    }
};

namespace detail {

inline void check_stmt(const SourceUnit& unit, const SpaceShape& shape, const Stmt& s,
                       std::vector<std::string>& errs) {
    auto reg_ok = [&](const std::vector<std::string>& reg) -> long {
        std::set<std::string> seen;
        long d = 1;
        for (const auto& v : reg) {
            if (!unit.find_var(v)) {
                errs.push_back("undeclared variable '" + v + "'");
                return -1;
            }
            if (!seen.insert(v).second) {
                errs.push_back("register variables must be distinct: '" + v + "'");
                return -1;
            }
            d *= shape.dim(shape.require(v));
        }
        return d;
    };
    std::visit(
        overloaded{
            [&](const Skip&) {},
            [&](const Init& n) {
                if (!unit.find_var(n.var)) errs.push_back("undeclared variable '" + n.var + "'");
            },
            [&](const ApplyUnitary& n) {
                const long d = reg_ok(n.reg);
                if (d < 0) return;
                if (n.gate.is_shift) {
                    if (n.reg.size() != 1)
                        errs.push_back("SHIFT applies to a single variable");
                    return;  // built per-dimension, always unitary
                }
                CMat g;
                if (const GateDecl* gd = unit.find_gate(n.gate.name)) {
                    g = gd->matrix;
                } else if (auto b = gates::builtin(n.gate.name)) {
                    g = *b;
                } else {
                    errs.push_back("unknown gate '" + n.gate.name + "'");
                    return;
                }
                if (g.rows() != d)
                    errs.push_back("gate '" + n.gate.name + "' has dimension " +
                                   std::to_string(g.rows()) + " but register has dimension " +
                                   std::to_string(d));
            },
            [&](const Seq& n) {
                check_stmt(unit, shape, *n.first, errs);
                check_stmt(unit, shape, *n.second, errs);
            },
            [&](const Measure& n) {
                const long d = reg_ok(n.reg);
                const MeasDecl* m = unit.find_measurement(n.meas);
                if (!m) {
                    errs.push_back("unknown measurement '" + n.meas + "'");
                    return;
                }
                if (d > 0 && !m->outcomes.empty() && m->outcomes[0].second.rows() != d)
                    errs.push_back("measurement '" + n.meas + "' has dimension " +
                                   std::to_string(m->outcomes[0].second.rows()) +
                                   " but register has dimension " + std::to_string(d));
                std::set<int> declared, armed;
                for (const auto& [o, _] : m->outcomes) declared.insert(o);
                for (const auto& [o, _] : n.arms) armed.insert(o);
                if (declared != armed)
                    errs.push_back("measure arms must cover exactly the outcomes of '" + n.meas +
                                   "'");
                for (const auto& [_, arm] : n.arms) check_stmt(unit, shape, *arm, errs);
            },
            [&](const While& n) {
                const long d = reg_ok(n.reg);
                const MeasDecl* m = unit.find_measurement(n.meas);
                if (!m) {
                    errs.push_back("unknown measurement '" + n.meas + "'");
                    return;
                }
                if (m->outcomes.size() != 2 || m->outcomes[0].first != 0 ||
                    m->outcomes[1].first != 1)
                    errs.push_back("loop guard '" + n.meas + "' must be a yes-no measurement "
                                   "with outcomes {0, 1}");
                if (d > 0 && !m->outcomes.empty() && m->outcomes[0].second.rows() != d)
                    errs.push_back("measurement '" + n.meas + "' has dimension " +
                                   std::to_string(m->outcomes[0].second.rows()) +
                                   " but register has dimension " + std::to_string(d));
                check_stmt(unit, shape, *n.body, errs);
            },
        },
        s.node);
}

}  // namespace detail

/// Typechecks a parsed unit. Verifies declarations (unitarity within 1e-9,
/// measurement completeness within 1e-9), name resolution, register
/// distinctness and dimension agreement. Throws TypeError listing every
/// diagnostic on failure.
inline TypedUnit typecheck(SourceUnit unit, long dim_cap = EvalConfig{}.dim_cap) {
    std::vector<std::string> errs;

    std::set<std::string> names;
    for (const auto& v : unit.vars)
        if (!names.insert("v:" + v.name).second)
            errs.push_back("duplicate variable declaration '" + v.name + "'");
    for (const auto& g : unit.gates)
        if (!names.insert("g:" + g.name).second)
            errs.push_back("duplicate gate declaration '" + g.name + "'");
    for (const auto& m : unit.measurements)
        if (!names.insert("m:" + m.name).second)
            errs.push_back("duplicate measurement declaration '" + m.name + "'");

    std::vector<std::pair<std::string, int>> factors;
    for (const auto& v : unit.vars) factors.emplace_back(v.name, v.dim);
    SpaceShape shape;
    try {
        shape = SpaceShape(factors);
    } catch (const Error& e) {
        errs.push_back(e.what());
    }
    if (shape.total_dim() > dim_cap)
        errs.push_back("global dimension " + std::to_string(shape.total_dim()) +
                       " exceeds cap " + std::to_string(dim_cap));

    for (const auto& g : unit.gates) {
        if (g.matrix.rows() != g.matrix.cols()) {
            errs.push_back("gate '" + g.name + "' is not square");
            continue;
        }
        if (!all_finite(g.matrix)) {
            errs.push_back("gate '" + g.name + "' has non-finite entries");
            continue;
        }
        const double dev =
            max_abs(g.matrix.adjoint() * g.matrix - CMat::Identity(g.matrix.rows(), g.matrix.cols()));
        if (dev > kDeclTol)
            errs.push_back("gate '" + g.name + "' is not unitary: ||U^dag U - I||_max = " +
                           std::to_string(dev));
    }
    for (const auto& m : unit.measurements) {
        if (m.outcomes.empty()) {
            errs.push_back("measurement '" + m.name + "' declares no outcomes");
            continue;
        }
        const Eigen::Index d = m.outcomes[0].second.rows();
        bool shapes_ok = true;
        for (const auto& [o, mat] : m.outcomes) {
            if (mat.rows() != mat.cols() || mat.rows() != d) {
                errs.push_back("measurement '" + m.name + "' outcome " + std::to_string(o) +
                               " has mismatched dimensions");
                shapes_ok = false;
            }
            if (!all_finite(mat)) {
                errs.push_back("measurement '" + m.name + "' outcome " + std::to_string(o) +
                               " has non-finite entries");
                shapes_ok = false;
            }
        }
        if (!shapes_ok) continue;
        CMat sum = CMat::Zero(d, d);
        for (const auto& [_, mat] : m.outcomes) sum += mat.adjoint() * mat;
        const double dev = max_abs(sum - CMat::Identity(d, d));
        if (dev > kDeclTol)
            errs.push_back("measurement '" + m.name +
                           "' is incomplete: ||sum M^dag M - I||_max = " + std::to_string(dev));
    }

    if (errs.empty()) detail::check_stmt(unit, shape, *unit.main, errs);

    if (!errs.empty()) {
        std::string joined;
        for (const auto& e : errs) joined += (joined.empty() ? "" : "\n") + e;
        throw TypeError(joined);
    }
    return TypedUnit{std::move(unit), std::move(shape)};
}

}  // namespace qhoare

#endif  // QHOARE_TYPECHECK_HPP_
