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

#ifndef QHOARE_PRETTY_HPP_
#define QHOARE_PRETTY_HPP_

#include <sstream>
#include <string>

#include "qhoare/ast.hpp"

namespace qhoare {

namespace detail {

inline std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

inline std::string fmt_complex(const Complex& c) {
    if (c.imag() == 0.0) return fmt_double(c.real());
    const std::string im = fmt_double(std::abs(c.imag())) + "i";
    if (c.real() == 0.0) return (c.imag() < 0 ? "-" : "") + im;
    return fmt_double(c.real()) + (c.imag() < 0 ? " - " : " + ") + im;
}

inline std::string fmt_matrix(const CMat& m) {
    std::string out = "[";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        out += r == 0 ? "[" : " [";
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) out += ", ";
            out += fmt_complex(m(r, c));
        }
        out += "]";
        if (r + 1 < m.rows()) out += ",\n   ";
    }
    return out + "]";
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

inline void pretty_stmt(const Stmt& s, std::string indent, std::string& out) {
    std::visit(overloaded{
                   [&](const Skip&) { out += indent + "skip"; },
                   [&](const Init& n) { out += indent + n.var + " := 0"; },
                   [&](const ApplyUnitary& n) {
                       if (n.gate.sugar_increment) {
                           const int k = n.gate.shift_amount;
                           out += indent + n.reg[0] + " := " + n.reg[0] +
                                  (k < 0 ? " - " : " + ") + std::to_string(std::abs(k));
                           return;
                       }
                       std::string g = n.gate.name;
                       if (n.gate.is_shift)
                           g = "SHIFT(" + std::to_string(n.gate.shift_amount) + ")";
                       out += indent + "[" + join(n.reg, ", ") + "] *= " + g;
                   },
                   [&](const Seq& n) {
                       pretty_stmt(*n.first, indent, out);
                       out += ";\n";
                       pretty_stmt(*n.second, indent, out);
                   },
                   [&](const Measure& n) {
                       out += indent + "measure " + n.meas + "[" + join(n.reg, ", ") + "] {\n";
                       for (const auto& [m, arm] : n.arms) {
                           out += indent + "  " + std::to_string(m) + " -> {\n";
                           pretty_stmt(*arm, indent + "    ", out);
                           out += "\n" + indent + "  }\n";
                       }
                       out += indent + "}";
                   },
                   [&](const While& n) {
                       out += indent + "while " + n.meas + "[" + join(n.reg, ", ") + "] = 1 do {\n";
                       pretty_stmt(*n.body, indent + "  ", out);
                       out += "\n" + indent + "}";
                   },
               },
               s.node);
}

}  // namespace detail

inline std::string pretty(const Stmt& s) {
    std::string out;
    detail::pretty_stmt(s, "", out);
    return out;
}

inline std::string pretty(const SourceUnit& unit) {
    std::string out;
    for (const auto& v : unit.vars)
        out += "var " + v.name + " : " + (v.is_bool ? "bool" : "int[" + std::to_string(v.dim) + "]") +
               ";\n";
    for (const auto& g : unit.gates)
        out += "unitary " + g.name + " = " + detail::fmt_matrix(g.matrix) + ";\n";
    for (const auto& m : unit.measurements) {
        out += "measurement " + m.name + " = {\n";
        for (size_t i = 0; i < m.outcomes.size(); ++i) {
            out += "  " + std::to_string(m.outcomes[i].first) + ": " +
                   detail::fmt_matrix(m.outcomes[i].second);
            out += i + 1 < m.outcomes.size() ? ",\n" : "\n";
        }
        out += "};\n";
    }
    if (!out.empty()) out += "\n";
    detail::pretty_stmt(*unit.main, "", out);
    out += "\n";
    return out;
}

/// Structural equality of statements (used by the parse/print roundtrip tests).
inline bool stmt_equal(const Stmt& a, const Stmt& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        overloaded{
            [&](const Skip&) { return true; },
            [&](const Init& x) { return x.var == std::get<Init>(b.node).var; },
            [&](const ApplyUnitary& x) {
                const auto& y = std::get<ApplyUnitary>(b.node);
                return x.reg == y.reg && x.gate.name == y.gate.name &&
                       x.gate.is_shift == y.gate.is_shift &&
                       x.gate.shift_amount == y.gate.shift_amount;
            },
            [&](const Seq& x) {
                const auto& y = std::get<Seq>(b.node);
                return stmt_equal(*x.first, *y.first) && stmt_equal(*x.second, *y.second);
            },
            [&](const Measure& x) {
                const auto& y = std::get<Measure>(b.node);
                if (x.meas != y.meas || x.reg != y.reg || x.arms.size() != y.arms.size())
                    return false;
                for (size_t i = 0; i < x.arms.size(); ++i)
                    if (x.arms[i].first != y.arms[i].first ||
                        !stmt_equal(*x.arms[i].second, *y.arms[i].second))
                        return false;
                return true;
            },
            [&](const While& x) {
                const auto& y = std::get<While>(b.node);
                return x.meas == y.meas && x.reg == y.reg && stmt_equal(*x.body, *y.body);
            },
        },
        a.node);
}

}  // namespace qhoare

#endif  // QHOARE_PRETTY_HPP_
