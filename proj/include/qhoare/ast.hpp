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

#ifndef QHOARE_AST_HPP_
#define QHOARE_AST_HPP_

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qhoare/matrix.hpp"

namespace qhoare {

struct SourcePos {
    int line = 0;
    int col = 0;
};

class ParseError : public std::runtime_error {
  public:
    ParseError(SourcePos pos, const std::string& msg)
        : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": " +
                             msg),
          pos(pos) {}
    SourcePos pos;
};

class TypeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Reference to a gate: either a declared name or a builtin. SHIFT carries
/// its translation amount; `q := q + k` parses to a SHIFT reference.
struct GateRef {
    std::string name;          // "H", "CNOT", "SHIFT", or a declared name
    bool is_shift = false;
    int shift_amount = 0;
    bool sugar_increment = false;  // written as q := q + k in the source

    bool operator==(const GateRef&) const = default;
};

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct Skip {};

struct Init {
    std::string var;
};

struct ApplyUnitary {
    std::vector<std::string> reg;
    GateRef gate;
};

struct Seq {
    StmtPtr first;
    StmtPtr second;
};

struct Measure {
    std::string meas;
    std::vector<std::string> reg;
    // Arms sorted by outcome; exactly one per declared outcome.
    std::vector<std::pair<int, StmtPtr>> arms;
};

struct While {
    std::string meas;  // must declare outcomes {0, 1}
    std::vector<std::string> reg;
    StmtPtr body;
};

struct Stmt {
    std::variant<Skip, Init, ApplyUnitary, Seq, Measure, While> node;
    SourcePos pos;
};

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline StmtPtr make_stmt(std::variant<Skip, Init, ApplyUnitary, Seq, Measure, While> node,
                         SourcePos pos = {}) {
    return std::make_shared<Stmt>(Stmt{std::move(node), pos});
}

struct VarDecl {
    std::string name;
    bool is_bool = true;
    int dim = 2;  // 2 for bool; truncation dimension for int
    SourcePos pos;
};

struct GateDecl {
    std::string name;
    CMat matrix;
    SourcePos pos;
};

struct MeasDecl {
    std::string name;
    std::vector<std::pair<int, CMat>> outcomes;  // sorted by outcome index
    SourcePos pos;
};

struct SourceUnit {
    std::vector<VarDecl> vars;
    std::vector<GateDecl> gates;
    std::vector<MeasDecl> measurements;
    StmtPtr main;

    const VarDecl* find_var(const std::string& n) const {
        for (const auto& v : vars)
            if (v.name == n) return &v;
        return nullptr;
    }
    const GateDecl* find_gate(const std::string& n) const {
        for (const auto& g : gates)
            if (g.name == n) return &g;
        return nullptr;
    }
    const MeasDecl* find_measurement(const std::string& n) const {
        for (const auto& m : measurements)
            if (m.name == n) return &m;
        return nullptr;
    }
};

/// var(S): the set of quantum variables a statement touches.
inline void collect_vars(const Stmt& s, std::set<std::string>& out) {
    std::visit(overloaded{
                   [&](const Skip&) {},
                   [&](const Init& n) { out.insert(n.var); },
                   [&](const ApplyUnitary& n) { out.insert(n.reg.begin(), n.reg.end()); },
                   [&](const Seq& n) {
                       collect_vars(*n.first, out);
                       collect_vars(*n.second, out);
                   },
                   [&](const Measure& n) {
                       out.insert(n.reg.begin(), n.reg.end());
                       for (const auto& [_, arm] : n.arms) collect_vars(*arm, out);
                   },
                   [&](const While& n) {
                       out.insert(n.reg.begin(), n.reg.end());
                       collect_vars(*n.body, out);
                   },
               },
               s.node);
}

inline std::set<std::string> free_vars(const Stmt& s) {
    std::set<std::string> out;
    collect_vars(s, out);
    return out;
}

/// Resolves a child-index path ("" is the root, "1.0" the first child of the
/// second child, ...) into the statement tree. Measure children are indexed
/// by arm position (outcome-sorted); While has a single child, its body.
inline StmtPtr resolve_path(StmtPtr root, const std::string& path) {
    if (path.empty()) return root;
    StmtPtr cur = std::move(root);
    size_t start = 0;
    while (start <= path.size()) {
        size_t dot = path.find('.', start);
        const std::string part = path.substr(start, dot == std::string::npos ? dot : dot - start);
        int idx = -1;
        try {
            idx = std::stoi(part);
        } catch (const std::exception&) {
            throw Error("bad path component '" + part + "' in '" + path + "'");
        }
        const Stmt& s = *cur;
        cur = std::visit(
            overloaded{
                [&](const Seq& n) -> StmtPtr {
                    if (idx == 0) return n.first;
                    if (idx == 1) return n.second;
                    throw Error("path index out of range in '" + path + "'");
                },
                [&](const Measure& n) -> StmtPtr {
                    if (idx < 0 || idx >= static_cast<int>(n.arms.size()))
                        throw Error("path index out of range in '" + path + "'");
                    return n.arms[idx].second;
                },
                [&](const While& n) -> StmtPtr {
                    if (idx == 0) return n.body;
                    throw Error("path index out of range in '" + path + "'");
                },
                [&](const auto&) -> StmtPtr {
                    throw Error("path descends into a leaf statement: '" + path + "'");
                },
            },
            s.node);
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    return cur;
}

}  // namespace qhoare

#endif  // QHOARE_AST_HPP_
