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

#ifndef QHOARE_PARSER_HPP_
#define QHOARE_PARSER_HPP_

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "qhoare/ast.hpp"

namespace qhoare {

namespace detail {

enum class Tok {
    Ident,
    Number,     // integer or float literal
    ImagNumber, // number immediately followed by 'i'
    Assign,     // :=
    MulAssign,  // *=
    Arrow,      // ->
    Semi,
    Colon,
    Comma,
    Eq,
    Plus,
    Minus,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    LParen,
    RParen,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    SourcePos pos;
};

inline std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto pos = [&] { return SourcePos{line, col}; };
    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        const char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        const SourcePos p = pos();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            out.push_back({Tok::Ident, src.substr(i, j - i), p});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
            size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            if (j < src.size() && src[j] == '.') {
                ++j;
                while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            }
            if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
                size_t k = j + 1;
                if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
                if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
                    ++k;
                    while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
                    j = k;
                }
            }
            std::string text = src.substr(i, j - i);
            // 'i' glued to a numeral makes it imaginary, unless it starts a
            // longer identifier (e.g. 2if is a lex error anyway).
            if (j < src.size() && src[j] == 'i' &&
                (j + 1 >= src.size() ||
                 (!std::isalnum(static_cast<unsigned char>(src[j + 1])) && src[j + 1] != '_'))) {
                ++j;
                out.push_back({Tok::ImagNumber, text, p});
            } else {
                out.push_back({Tok::Number, text, p});
            }
            advance(j - i);
            continue;
        }
        auto two = [&](char a, char b) {
            return c == a && i + 1 < src.size() && src[i + 1] == b;
        };
        if (two(':', '=')) {
            out.push_back({Tok::Assign, ":=", p});
            advance(2);
            continue;
        }
        if (two('*', '=')) {
            out.push_back({Tok::MulAssign, "*=", p});
            advance(2);
            continue;
        }
        if (two('-', '>')) {
            out.push_back({Tok::Arrow, "->", p});
            advance(2);
            continue;
        }
        Tok k;
        switch (c) {
            case ';': k = Tok::Semi; break;
            case ':': k = Tok::Colon; break;
            case ',': k = Tok::Comma; break;
            case '=': k = Tok::Eq; break;
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '[': k = Tok::LBracket; break;
            case ']': k = Tok::RBracket; break;
            case '{': k = Tok::LBrace; break;
            case '}': k = Tok::RBrace; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            default:
                throw ParseError(p, std::string("unexpected character '") + c + "'");
        }
        out.push_back({k, std::string(1, c), p});
        advance(1);
    }
    out.push_back({Tok::End, "", pos()});
    return out;
}

class Parser {
  public:
    explicit Parser(const std::string& src) : toks_(lex(src)) {}

    SourceUnit parse_unit() {
        SourceUnit unit;
        while (peek().kind == Tok::Ident &&
               (peek().text == "var" || peek().text == "unitary" || peek().text == "measurement")) {
            if (peek().text == "var")
                parse_var_decl(unit);
            else if (peek().text == "unitary")
                parse_gate_decl(unit);
            else
                parse_meas_decl(unit);
        }
        unit.main = parse_stmt_seq();
        expect(Tok::End, "end of input");
        return unit;
    }

  private:
    const Token& peek(int ahead = 0) const {
        const size_t i = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[i];
    }
    Token take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
    Token expect(Tok kind, const std::string& what) {
        if (peek().kind != kind)
            throw ParseError(peek().pos, "expected " + what + ", found '" + peek().text + "'");
        return take();
    }
    Token expect_keyword(const std::string& kw) {
        if (peek().kind != Tok::Ident || peek().text != kw)
            throw ParseError(peek().pos, "expected '" + kw + "', found '" + peek().text + "'");
        return take();
    }
    bool at_keyword(const std::string& kw) const {
        return peek().kind == Tok::Ident && peek().text == kw;
    }

    long parse_int() {
        const Token t = expect(Tok::Number, "integer");
        try {
            return std::stol(t.text);
        } catch (const std::exception&) {
            throw ParseError(t.pos, "bad integer literal '" + t.text + "'");
        }
    }

    double to_double(const Token& t) {
        try {
            return std::stod(t.text);
        } catch (const std::exception&) {
            throw ParseError(t.pos, "bad numeric literal '" + t.text + "'");
        }
    }

    // complex := [sign] part [ sign imag-part ]; bare 'i' means 1i.
    Complex parse_complex() {
        double sign = 1.0;
        if (peek().kind == Tok::Minus) {
            take();
            sign = -1.0;
        } else if (peek().kind == Tok::Plus) {
            take();
        }
        double re = 0.0, im = 0.0;
        if (peek().kind == Tok::ImagNumber) {
            im = sign * to_double(take());
            return {re, im};
        }
        if (peek().kind == Tok::Ident && peek().text == "i") {
            take();
            return {0.0, sign};
        }
        const Token first = expect(Tok::Number, "numeric literal");
        const double v = sign * to_double(first);
        if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const double s2 = take().kind == Tok::Minus ? -1.0 : 1.0;
            if (peek().kind == Tok::ImagNumber) {
                im = s2 * to_double(take());
            } else if (peek().kind == Tok::Ident && peek().text == "i") {
                take();
                im = s2;
            } else {
                throw ParseError(peek().pos, "expected imaginary part after sign");
            }
            re = v;
        } else {
            re = v;
        }
        return {re, im};
    }

    CMat parse_matrix() {
        const Token open = expect(Tok::LBracket, "'['");
        std::vector<std::vector<Complex>> rows;
        while (true) {
            expect(Tok::LBracket, "'[' starting a row");
            std::vector<Complex> row;
            if (peek().kind != Tok::RBracket) {
                row.push_back(parse_complex());
                while (peek().kind == Tok::Comma) {
                    take();
                    row.push_back(parse_complex());
                }
            }
            expect(Tok::RBracket, "']' ending a row");
            rows.push_back(std::move(row));
            if (peek().kind == Tok::Comma) {
                take();
                continue;
            }
            break;
        }
        expect(Tok::RBracket, "']' ending the matrix");
        const size_t n = rows.size();
        for (const auto& r : rows)
            if (r.size() != rows[0].size())
                throw ParseError(open.pos, "ragged matrix literal");
        CMat m(n, rows[0].size());
        for (size_t r = 0; r < n; ++r)
            for (size_t c = 0; c < rows[0].size(); ++c) m(r, c) = rows[r][c];
        return m;
    }

    void parse_var_decl(SourceUnit& unit) {
        const Token kw = expect_keyword("var");
        const Token name = expect(Tok::Ident, "variable name");
        expect(Tok::Colon, "':'");
        VarDecl d;
        d.name = name.text;
        d.pos = kw.pos;
        if (at_keyword("bool")) {
            take();
            d.is_bool = true;
            d.dim = 2;
        } else if (at_keyword("int")) {
            take();
            expect(Tok::LBracket, "'['");
            const long dim = parse_int();
            expect(Tok::RBracket, "']'");
            if (dim < 2) throw ParseError(name.pos, "int truncation dimension must be >= 2");
            d.is_bool = false;
            d.dim = static_cast<int>(dim);
        } else {
            throw ParseError(peek().pos, "expected 'bool' or 'int[d]'");
        }
        expect(Tok::Semi, "';'");
        unit.vars.push_back(std::move(d));
    }

    void parse_gate_decl(SourceUnit& unit) {
        const Token kw = expect_keyword("unitary");
        const Token name = expect(Tok::Ident, "gate name");
        expect(Tok::Eq, "'='");
        GateDecl d;
        d.name = name.text;
        d.pos = kw.pos;
        d.matrix = parse_matrix();
        expect(Tok::Semi, "';'");
        unit.gates.push_back(std::move(d));
    }

    void parse_meas_decl(SourceUnit& unit) {
        const Token kw = expect_keyword("measurement");
        const Token name = expect(Tok::Ident, "measurement name");
        expect(Tok::Eq, "'='");
        expect(Tok::LBrace, "'{'");
        MeasDecl d;
        d.name = name.text;
        d.pos = kw.pos;
        while (true) {
            const long outcome = parse_int();
            expect(Tok::Colon, "':'");
            CMat m = parse_matrix();
            for (const auto& [o, _] : d.outcomes)
                if (o == outcome)
                    throw ParseError(kw.pos, "duplicate outcome " + std::to_string(outcome) +
                                                 " in measurement " + d.name);
            d.outcomes.emplace_back(static_cast<int>(outcome), std::move(m));
            if (peek().kind == Tok::Comma) {
                take();
                continue;
            }
            break;
        }
        expect(Tok::RBrace, "'}'");
        expect(Tok::Semi, "';'");
        std::sort(d.outcomes.begin(), d.outcomes.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        unit.measurements.push_back(std::move(d));
    }

    std::vector<std::string> parse_register() {
        std::vector<std::string> reg;
        reg.push_back(expect(Tok::Ident, "variable name").text);
        while (peek().kind == Tok::Comma) {
            take();
            reg.push_back(expect(Tok::Ident, "variable name").text);
        }
        return reg;
    }

    StmtPtr parse_stmt_seq() {
        StmtPtr first = parse_stmt();
        std::vector<StmtPtr> rest;
        while (peek().kind == Tok::Semi) {
            take();
            // Permit a trailing semicolon before a closing brace / end.
            if (peek().kind == Tok::RBrace || peek().kind == Tok::End) break;
            rest.push_back(parse_stmt());
        }
        // Right-fold into Seq nodes.
        StmtPtr out = rest.empty() ? first : nullptr;
        if (!out) {
            out = rest.back();
            for (int i = static_cast<int>(rest.size()) - 2; i >= 0; --i)
                out = make_stmt(Seq{rest[i], out}, rest[i]->pos);
            out = make_stmt(Seq{first, out}, first->pos);
        }
        return out;
    }

    StmtPtr parse_block() {
        expect(Tok::LBrace, "'{'");
        StmtPtr body = parse_stmt_seq();
        expect(Tok::RBrace, "'}'");
        return body;
    }

    StmtPtr parse_stmt() {
        const Token& t = peek();
        if (t.kind == Tok::Ident && t.text == "skip") {
            take();
            return make_stmt(Skip{}, t.pos);
        }
        if (t.kind == Tok::Ident && t.text == "measure") return parse_measure();
        if (t.kind == Tok::Ident && t.text == "while") return parse_while();
        if (t.kind == Tok::LBracket) return parse_apply();
        if (t.kind == Tok::Ident) return parse_assign();
        throw ParseError(t.pos, "expected a statement, found '" + t.text + "'");
    }

    StmtPtr parse_assign() {
        const Token var = expect(Tok::Ident, "variable name");
        expect(Tok::Assign, "':='");
        if (peek().kind == Tok::Number && peek().text == "0" && peek(1).kind != Tok::Plus &&
            peek(1).kind != Tok::Minus) {
            take();
            return make_stmt(Init{var.text}, var.pos);
        }
        // q := q + k  (sugar for [q] *= SHIFT(k))
        const Token rhs = expect(Tok::Ident, "'0' or the variable itself");
        if (rhs.text != var.text)
            throw ParseError(rhs.pos, "increment must reference the assigned variable");
        int sign;
        if (peek().kind == Tok::Plus)
            sign = 1;
        else if (peek().kind == Tok::Minus)
            sign = -1;
        else
            throw ParseError(peek().pos, "expected '+' or '-'");
        take();
        const long k = parse_int();
        GateRef g;
        g.name = "SHIFT";
        g.is_shift = true;
        g.shift_amount = static_cast<int>(sign * k);
        g.sugar_increment = true;
        return make_stmt(ApplyUnitary{{var.text}, g}, var.pos);
    }

    StmtPtr parse_apply() {
        const Token open = expect(Tok::LBracket, "'['");
        std::vector<std::string> reg = parse_register();
        expect(Tok::RBracket, "']'");
        expect(Tok::MulAssign, "'*='");
        const Token gname = expect(Tok::Ident, "gate name");
        GateRef g;
        g.name = gname.text;
        if (gname.text == "SHIFT") {
            g.is_shift = true;
            expect(Tok::LParen, "'('");
            int sign = 1;
            if (peek().kind == Tok::Minus) {
                take();
                sign = -1;
            }
            g.shift_amount = sign * static_cast<int>(parse_int());
            expect(Tok::RParen, "')'");
        }
        return make_stmt(ApplyUnitary{std::move(reg), g}, open.pos);
    }

    StmtPtr parse_measure() {
        const Token kw = expect_keyword("measure");
        const Token mname = expect(Tok::Ident, "measurement name");
        expect(Tok::LBracket, "'['");
        std::vector<std::string> reg = parse_register();
        expect(Tok::RBracket, "']'");
        expect(Tok::LBrace, "'{'");
        std::vector<std::pair<int, StmtPtr>> arms;
        while (peek().kind != Tok::RBrace) {
            const long outcome = parse_int();
            expect(Tok::Arrow, "'->'");
            StmtPtr body = parse_block();
            for (const auto& [o, _] : arms)
                if (o == outcome)
                    throw ParseError(kw.pos, "duplicate arm for outcome " + std::to_string(outcome));
            arms.emplace_back(static_cast<int>(outcome), std::move(body));
        }
        expect(Tok::RBrace, "'}'");
        if (arms.empty()) throw ParseError(kw.pos, "measure statement has no arms");
        std::sort(arms.begin(), arms.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return make_stmt(Measure{mname.text, std::move(reg), std::move(arms)}, kw.pos);
    }

    StmtPtr parse_while() {
        const Token kw = expect_keyword("while");
        const Token mname = expect(Tok::Ident, "measurement name");
        expect(Tok::LBracket, "'['");
        std::vector<std::string> reg = parse_register();
        expect(Tok::RBracket, "']'");
        expect(Tok::Eq, "'='");
        const Token one = expect(Tok::Number, "'1'");
        if (one.text != "1") throw ParseError(one.pos, "loop guard must test outcome 1");
        expect_keyword("do");
        StmtPtr body = parse_block();
        return make_stmt(While{mname.text, std::move(reg), std::move(body)}, kw.pos);
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
};

}  // namespace detail

/// Parses a source unit (header declarations followed by the program).
inline SourceUnit parse(const std::string& source) {
    return detail::Parser(source).parse_unit();
}

}  // namespace qhoare

#endif  // QHOARE_PARSER_HPP_
