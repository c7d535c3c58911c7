#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "feq/abelian.hpp"
#include "feq/equations.hpp"
#include "feq/errors.hpp"
#include "feq/functions.hpp"

namespace feq {

// ---------------------------------------------------------------------------
// Errors and spans
// ---------------------------------------------------------------------------

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, i64 line, i64 column, std::string message,
               std::vector<std::string> expected = {})
        : std::runtime_error(format(line, column, message, expected)),
          offset_(offset),
          line_(line),
          column_(column),
          message_(std::move(message)),
          expected_(std::move(expected)) {}

    std::size_t offset() const noexcept { return offset_; }
    i64 line() const noexcept { return line_; }
    i64 column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    static std::string format(i64 line, i64 column, const std::string& message,
                              const std::vector<std::string>& expected) {
        std::ostringstream os;
        os << line << ":" << column << ": " << message;
        if (!expected.empty()) {
            os << " (expected ";
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (i) os << ", ";
                os << expected[i];
            }
            os << ")";
        }
        return os.str();
    }

    std::size_t offset_;
    i64 line_, column_;
    std::string message_;
    std::vector<std::string> expected_;
};

struct SourceSpan {
    std::size_t offset = 0;
    std::size_t length = 0;
    i64 line = 1;
    i64 column = 1;
};

// ---------------------------------------------------------------------------
// AST (spans live in SpecDocument::spans; equality ignores them)
// ---------------------------------------------------------------------------

struct GroupDecl {
    std::string name;
    std::vector<i64> factors;
    bool operator==(const GroupDecl&) const = default;
};

struct RingDecl {
    std::string name;
    i64 modulus = 0;
    bool operator==(const RingDecl&) const = default;
};

struct HomDecl {
    std::string name;
    std::string domain, codomain;
    std::vector<std::vector<i64>> matrix;
    bool operator==(const HomDecl&) const = default;
};

struct KnownDecl {
    std::string name;
    std::string domain, codomain;
    std::vector<i64> values;  // raw, reduced only when lowering
    bool operator==(const KnownDecl&) const = default;
};

struct UnknownDecl {
    std::string name;
    std::string domain, codomain;
    bool operator==(const UnknownDecl&) const = default;
};

// One additive piece of an argument expression: coeff * h1(h2(...(var))).
struct ArgTerm {
    i64 coeff = 1;
    std::vector<std::string> homs;  // outermost first
    std::string var;
    bool operator==(const ArgTerm&) const = default;
};

struct ArgExpr {
    std::vector<ArgTerm> terms;
    bool operator==(const ArgExpr&) const = default;
};

struct EqTerm {
    i64 coeff = 1;
    std::string unknown;
    ArgExpr arg;
    bool operator==(const EqTerm&) const = default;
};

// coeff * k1(v1) * k2(v2) * ... over declared known tables.
struct RhsTerm {
    i64 coeff = 1;
    std::vector<std::pair<std::string, std::string>> factors;  // (known, variable)
    bool operator==(const RhsTerm&) const = default;
};

struct EquationDecl {
    std::vector<std::string> forall_vars;
    std::vector<EqTerm> lhs;
    std::vector<RhsTerm> rhs;  // empty means 0
    bool operator==(const EquationDecl&) const = default;
};

struct BuilderEquationDecl {
    std::string builder;                            // currently only "knw"
    std::vector<std::pair<std::string, i64>> args;  // key = value, as written
    bool operator==(const BuilderEquationDecl&) const = default;
};

struct ClaimDecl {
    std::string unknown;
    i64 bound = 0;
    bool operator==(const ClaimDecl&) const = default;
};

using Decl = std::variant<GroupDecl, RingDecl, HomDecl, KnownDecl, UnknownDecl, EquationDecl,
                          BuilderEquationDecl, ClaimDecl>;

struct SpecDocument {
    std::vector<Decl> decls;
    std::vector<SourceSpan> spans;  // aligned with decls

    bool operator==(const SpecDocument& o) const { return decls == o.decls; }
};

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace detail {

struct Token {
    enum class Kind { Ident, Int, Punct, End } kind = Kind::End;
    std::string text;
    i64 value = 0;  // for Int
    std::size_t offset = 0;
    i64 line = 1, column = 1;
};

inline std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    std::size_t i = 0;
    i64 line = 1, col = 1;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < text.size()) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (std::isspace(c)) {
            advance(1);
            continue;
        }
        if (c == '#') {  // line comment
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        Token t;
        t.offset = i;
        t.line = line;
        t.column = col;
        if (std::isalpha(c) || c == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            t.kind = Token::Kind::Ident;
            t.text = text.substr(i, j - i);
            advance(j - i);
        } else if (std::isdigit(c)) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            t.kind = Token::Kind::Int;
            t.text = text.substr(i, j - i);
            if (t.text.size() > 18)
                throw ParseError(i, line, col, "integer literal too large");
            t.value = std::stoll(t.text);
            advance(j - i);
        } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            t.kind = Token::Kind::Punct;
            t.text = "->";
            advance(2);
        } else if (c == '<' && i + 1 < text.size() && text[i + 1] == '=') {
            t.kind = Token::Kind::Punct;
            t.text = "<=";
            advance(2);
        } else if (std::string("=;:,.()[]*+-").find(static_cast<char>(c)) != std::string::npos) {
            t.kind = Token::Kind::Punct;
            t.text = std::string(1, static_cast<char>(c));
            advance(1);
        } else {
            throw ParseError(i, line, col,
                             "unexpected byte 0x" + [&] {
                                 std::ostringstream os;
                                 os << std::hex << static_cast<int>(c);
                                 return os.str();
                             }());
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.kind = Token::Kind::End;
    end.text = "<end of input>";
    end.offset = text.size();
    end.line = line;
    end.column = col;
    out.push_back(std::move(end));
    return out;
}

// ---------------------------------------------------------------------------
// Parser (resolution and shape checks happen inline, as parse errors)
// ---------------------------------------------------------------------------

class Parser {
public:
    explicit Parser(const std::string& text) : tokens_(lex(text)) {}

    SpecDocument parse() {
        SpecDocument doc;
        while (!at_end()) {
            const Token& start = peek();
            Decl d = parse_decl();
            SourceSpan span{start.offset, prev_end_ - start.offset, start.line, start.column};
            doc.decls.push_back(std::move(d));
            doc.spans.push_back(span);
        }
        return doc;
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::size_t prev_end_ = 0;

    // symbol tables for resolution
    std::map<std::string, FinAbGroup> groups_;  // includes rings' additive groups
    std::map<std::string, i64> rings_;
    std::map<std::string, std::pair<std::string, std::string>> homs_;      // dom, cod names
    std::map<std::string, std::pair<std::string, std::string>> knowns_;    // dom, cod names
    std::map<std::string, std::pair<std::string, std::string>> unknowns_;  // dom, cod names
    bool saw_equation_ = false;

    bool at_end() const { return tokens_[pos_].kind == Token::Kind::End; }
    const Token& peek(std::size_t ahead = 0) const {
        return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
    }
    const Token& advance() {
        const Token& t = tokens_[pos_];
        if (t.kind != Token::Kind::End) ++pos_;
        prev_end_ = t.offset + t.text.size();
        return t;
    }

    [[noreturn]] void fail(const Token& t, const std::string& msg,
                           std::vector<std::string> expected = {}) const {
        throw ParseError(t.offset, t.line, t.column, msg, std::move(expected));
    }

    const Token& expect_punct(const std::string& p) {
        const Token& t = peek();
        if (t.kind != Token::Kind::Punct || t.text != p)
            fail(t, "unexpected token '" + t.text + "'", {"'" + p + "'"});
        return advance();
    }

    std::string expect_ident(const char* what) {
        const Token& t = peek();
        if (t.kind != Token::Kind::Ident)
            fail(t, "unexpected token '" + t.text + "'", {what});
        return advance().text;
    }

    i64 expect_uint() {
        const Token& t = peek();
        if (t.kind != Token::Kind::Int)
            fail(t, "unexpected token '" + t.text + "'", {"integer"});
        return advance().value;
    }

    // optional leading '-' then unsigned integer
    i64 expect_int() {
        bool neg = false;
        if (peek().kind == Token::Kind::Punct && peek().text == "-") {
            neg = true;
            advance();
        }
        i64 v = expect_uint();
        return neg ? -v : v;
    }

    bool is_punct(const std::string& p, std::size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.kind == Token::Kind::Punct && t.text == p;
    }

    Decl parse_decl() {
        const Token& t = peek();
        if (t.kind != Token::Kind::Ident)
            fail(t, "unexpected token '" + t.text + "'",
                 {"group", "ring", "hom", "known", "unknown", "equation", "claim"});
        if (t.text == "group") return parse_group();
        if (t.text == "ring") return parse_ring();
        if (t.text == "hom") return parse_hom();
        if (t.text == "known") return parse_known();
        if (t.text == "unknown") return parse_unknown();
        if (t.text == "equation") return parse_equation();
        if (t.text == "claim") return parse_claim();
        fail(t, "unknown declaration '" + t.text + "'",
             {"group", "ring", "hom", "known", "unknown", "equation", "claim"});
    }

    void check_fresh(const Token& at, const std::string& name) {
        if (groups_.count(name) || homs_.count(name) || knowns_.count(name) ||
            unknowns_.count(name))
            fail(at, "name '" + name + "' is already declared");
    }

    // group literal: Z4 x Z2 (whitespace-insensitive, so also Z4xZ2)
    std::vector<i64> parse_group_literal() {
        // Concatenate ident/int tokens until ';' and re-split.
        const Token& start = peek();
        std::string s;
        while (!at_end() && !is_punct(";")) {
            const Token& t = peek();
            if (t.kind != Token::Kind::Ident && t.kind != Token::Kind::Int)
                fail(t, "unexpected token '" + t.text + "' in group literal",
                     {"Z<n> [x Z<n> ...]"});
            s += advance().text;
        }
        std::vector<i64> factors;
        std::size_t i = 0;
        while (i < s.size()) {
            if (s[i] != 'Z')
                fail(start, "malformed group literal '" + s + "'", {"Z<n> [x Z<n> ...]"});
            ++i;
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j == i || j - i > 18)
                fail(start, "malformed group literal '" + s + "'", {"Z<n> [x Z<n> ...]"});
            i64 n = std::stoll(s.substr(i, j - i));
            if (n < 1) fail(start, "group factor must be >= 1");
            factors.push_back(n);
            i = j;
            if (i < s.size()) {
                if (s[i] != 'x')
                    fail(start, "malformed group literal '" + s + "'", {"'x' between factors"});
                ++i;
            }
        }
        if (factors.empty())
            fail(start, "empty group literal", {"Z<n> [x Z<n> ...]"});
        return factors;
    }

    Decl parse_group() {
        advance();  // group
        const Token& at = peek();
        std::string name = expect_ident("group name");
        check_fresh(at, name);
        expect_punct("=");
        GroupDecl d;
        d.name = name;
        d.factors = parse_group_literal();
        expect_punct(";");
        try {
            groups_.emplace(name, FinAbGroup(d.factors));
        } catch (const StructuralError& e) {
            fail(at, e.what());
        }
        return d;
    }

    Decl parse_ring() {
        advance();  // ring
        const Token& at = peek();
        std::string name = expect_ident("ring name");
        check_fresh(at, name);
        expect_punct("=");
        std::vector<i64> factors = parse_group_literal();
        expect_punct(";");
        if (factors.size() != 1 || factors[0] < 2)
            fail(at, "a ring must be a single factor Z<m> with m >= 2");
        RingDecl d;
        d.name = name;
        d.modulus = factors[0];
        rings_.emplace(name, d.modulus);
        groups_.emplace(name, FinAbGroup::cyclic(d.modulus));
        return d;
    }

    const FinAbGroup& resolve_group(const Token& at, const std::string& name) {
        auto it = groups_.find(name);
        if (it == groups_.end()) fail(at, "undeclared group '" + name + "'");
        return it->second;
    }

    Decl parse_hom() {
        advance();  // hom
        const Token& at = peek();
        std::string name = expect_ident("hom name");
        check_fresh(at, name);
        expect_punct(":");
        const Token& dom_at = peek();
        std::string dom = expect_ident("group name");
        expect_punct("->");
        const Token& cod_at = peek();
        std::string cod = expect_ident("group name");
        const FinAbGroup& gdom = resolve_group(dom_at, dom);
        const FinAbGroup& gcod = resolve_group(cod_at, cod);
        expect_punct("=");

        HomDecl d;
        d.name = name;
        d.domain = dom;
        d.codomain = cod;
        const Token& mat_at = peek();
        expect_punct("[");
        while (true) {
            expect_punct("[");
            std::vector<i64> row;
            if (!is_punct("]")) {
                row.push_back(expect_int());
                while (is_punct(",")) {
                    advance();
                    row.push_back(expect_int());
                }
            }
            expect_punct("]");
            d.matrix.push_back(std::move(row));
            if (is_punct(",")) {
                advance();
                continue;
            }
            break;
        }
        expect_punct("]");
        expect_punct(";");

        if (d.matrix.size() != gcod.rank())
            fail(mat_at, "hom matrix has " + std::to_string(d.matrix.size()) +
                             " rows; codomain rank is " + std::to_string(gcod.rank()));
        for (const auto& row : d.matrix)
            if (row.size() != gdom.rank())
                fail(mat_at, "hom matrix row has " + std::to_string(row.size()) +
                                 " entries; domain rank is " + std::to_string(gdom.rank()));
        try {
            GroupHom check(gdom, gcod, d.matrix);
            (void)check;
        } catch (const StructuralError& e) {
            fail(mat_at, e.what());
        }
        homs_.emplace(name, std::make_pair(dom, cod));
        return d;
    }

    Decl parse_known() {
        advance();  // known
        const Token& at = peek();
        std::string name = expect_ident("table name");
        check_fresh(at, name);
        expect_punct(":");
        const Token& dom_at = peek();
        std::string dom = expect_ident("group name");
        expect_punct("->");
        const Token& cod_at = peek();
        std::string cod = expect_ident("group name");
        const FinAbGroup& gdom = resolve_group(dom_at, dom);
        const FinAbGroup& gcod = resolve_group(cod_at, cod);
        if (gcod.rank() > 1)
            fail(cod_at, "known tables require a rank-1 codomain (single Z<m> factor)");
        expect_punct("=");
        const Token& kw = peek();
        if (kw.kind != Token::Kind::Ident || kw.text != "table")
            fail(kw, "unexpected token '" + kw.text + "'", {"table"});
        advance();
        const Token& tab_at = peek();
        expect_punct("[");
        KnownDecl d;
        d.name = name;
        d.domain = dom;
        d.codomain = cod;
        if (!is_punct("]")) {
            d.values.push_back(expect_int());
            while (is_punct(",")) {
                advance();
                d.values.push_back(expect_int());
            }
        }
        expect_punct("]");
        expect_punct(";");
        if (static_cast<i64>(d.values.size()) != gdom.order())
            fail(tab_at, "table has " + std::to_string(d.values.size()) +
                             " values; domain order is " + std::to_string(gdom.order()));
        knowns_.emplace(name, std::make_pair(dom, cod));
        return d;
    }

    Decl parse_unknown() {
        advance();  // unknown
        const Token& at = peek();
        std::string name = expect_ident("function name");
        check_fresh(at, name);
        expect_punct(":");
        const Token& dom_at = peek();
        std::string dom = expect_ident("group name");
        expect_punct("->");
        const Token& cod_at = peek();
        std::string cod = expect_ident("group name");
        resolve_group(dom_at, dom);
        resolve_group(cod_at, cod);
        expect_punct(";");
        UnknownDecl d;
        d.name = name;
        d.domain = dom;
        d.codomain = cod;
        unknowns_.emplace(name, std::make_pair(dom, cod));
        return d;
    }

    Decl parse_claim() {
        advance();  // claim
        const Token& kw = peek();
        if (kw.kind != Token::Kind::Ident || kw.text != "degree")
            fail(kw, "unexpected token '" + kw.text + "'", {"degree"});
        advance();
        const Token& at = peek();
        ClaimDecl d;
        d.unknown = expect_ident("unknown name");
        if (!unknowns_.count(d.unknown))
            fail(at, "claim references undeclared unknown '" + d.unknown + "'");
        expect_punct("<=");
        d.bound = expect_int();
        expect_punct(";");
        return d;
    }

    Decl parse_equation() {
        const Token& eq_at = peek();
        advance();  // equation
        if (saw_equation_ && peek().kind == Token::Kind::Ident && peek().text == "knw")
            fail(eq_at, "builder equations cannot be combined with other equations");

        const Token& head = peek();
        if (head.kind == Token::Kind::Ident && head.text == "knw" && is_punct("(", 1))
            return parse_builder();

        if (head.kind != Token::Kind::Ident || head.text != "forall")
            fail(head, "unexpected token '" + head.text + "'", {"forall", "knw"});
        advance();

        EquationDecl d;
        while (peek().kind == Token::Kind::Ident) {
            std::string v = advance().text;
            if (std::find(d.forall_vars.begin(), d.forall_vars.end(), v) != d.forall_vars.end())
                fail(head, "duplicate quantified variable '" + v + "'");
            if (groups_.count(v) || homs_.count(v) || knowns_.count(v) || unknowns_.count(v))
                fail(head, "variable '" + v + "' shadows a declaration");
            d.forall_vars.push_back(std::move(v));
        }
        if (d.forall_vars.empty())
            fail(peek(), "unexpected token '" + peek().text + "'", {"variable name"});
        expect_punct(".");

        d.lhs = parse_eq_terms(d.forall_vars);
        expect_punct("=");
        d.rhs = parse_rhs(d.forall_vars);
        expect_punct(";");
        saw_equation_ = true;
        return d;
    }

    Decl parse_builder() {
        if (saw_equation_)
            fail(peek(), "builder equations cannot be combined with other equations");
        BuilderEquationDecl d;
        d.builder = advance().text;  // knw
        expect_punct("(");
        while (true) {
            std::string key = expect_ident("parameter name");
            expect_punct("=");
            i64 v = expect_int();
            for (const auto& [k, _] : d.args)
                if (k == key) fail(peek(), "duplicate builder parameter '" + key + "'");
            d.args.emplace_back(std::move(key), v);
            if (is_punct(",")) {
                advance();
                continue;
            }
            break;
        }
        expect_punct(")");
        expect_punct(";");
        for (const auto& [k, _] : d.args)
            if (k != "p" && k != "N" && k != "w")
                throw ParseError(0, 1, 1, "knw takes parameters p, N, w; got '" + k + "'");
        for (const char* k : {"p", "N", "w"}) {
            bool found = false;
            for (const auto& [key, _] : d.args) found = found || key == k;
            if (!found) throw ParseError(0, 1, 1, std::string("knw is missing parameter ") + k);
        }
        if (unknowns_.count("f"))
            fail(peek(), "builder equation declares 'f' implicitly; remove the explicit one");
        unknowns_.emplace("f", std::make_pair(std::string(), std::string()));
        saw_equation_ = true;
        return d;
    }

    // coeff * unknown(argexpr) terms joined by +/-
    std::vector<EqTerm> parse_eq_terms(const std::vector<std::string>& vars) {
        std::vector<EqTerm> out;
        i64 sign = 1;
        if (is_punct("-")) {
            sign = -1;
            advance();
        }
        while (true) {
            EqTerm t;
            t.coeff = sign;
            if (peek().kind == Token::Kind::Int) {
                t.coeff = sign * advance().value;
                expect_punct("*");
            }
            const Token& at = peek();
            t.unknown = expect_ident("unknown name");
            if (!unknowns_.count(t.unknown))
                fail(at, "undeclared unknown '" + t.unknown + "'");
            expect_punct("(");
            t.arg = parse_arg_expr(vars, unknowns_.at(t.unknown).first);
            expect_punct(")");
            out.push_back(std::move(t));
            if (is_punct("+")) {
                sign = 1;
                advance();
                continue;
            }
            if (is_punct("-")) {
                sign = -1;
                advance();
                continue;
            }
            break;
        }
        return out;
    }

    ArgExpr parse_arg_expr(const std::vector<std::string>& vars,
                           const std::string& target_group) {
        ArgExpr e;
        i64 sign = 1;
        if (is_punct("-")) {
            sign = -1;
            advance();
        }
        while (true) {
            ArgTerm t;
            t.coeff = sign;
            if (peek().kind == Token::Kind::Int) {
                t.coeff = sign * advance().value;
                expect_punct("*");
            }
            parse_arg_chain(t, vars, target_group);
            e.terms.push_back(std::move(t));
            if (is_punct("+")) {
                sign = 1;
                advance();
                continue;
            }
            if (is_punct("-")) {
                sign = -1;
                advance();
                continue;
            }
            break;
        }
        return e;
    }

    // chain := var | hom '(' [int '*'] chain ')'
    void parse_arg_chain(ArgTerm& t, const std::vector<std::string>& vars,
                         const std::string& expected_cod) {
        const Token& at = peek();
        std::string name = expect_ident("variable or hom name");
        if (std::find(vars.begin(), vars.end(), name) != vars.end()) {
            t.var = name;
            return;
        }
        auto it = homs_.find(name);
        if (it == homs_.end())
            fail(at, "'" + name + "' is neither a quantified variable nor a declared hom");
        if (!expected_cod.empty() && it->second.second != expected_cod)
            fail(at, "hom '" + name + "' maps into " + it->second.second + ", but " +
                         expected_cod + " is required here");
        t.homs.push_back(name);
        expect_punct("(");
        if (peek().kind == Token::Kind::Int) {
            t.coeff *= advance().value;
            expect_punct("*");
        }
        parse_arg_chain(t, vars, it->second.first);
        expect_punct(")");
    }

    std::vector<RhsTerm> parse_rhs(const std::vector<std::string>& vars) {
        if (peek().kind == Token::Kind::Int && peek().value == 0 &&
            !is_punct("*", 1)) {  // literal 0
            advance();
            return {};
        }
        std::vector<RhsTerm> out;
        i64 sign = 1;
        if (is_punct("-")) {
            sign = -1;
            advance();
        }
        while (true) {
            RhsTerm t;
            t.coeff = sign;
            if (peek().kind == Token::Kind::Int) {
                t.coeff = sign * advance().value;
                expect_punct("*");
            }
            while (true) {
                const Token& at = peek();
                std::string k = expect_ident("known table name");
                if (!knowns_.count(k)) fail(at, "undeclared known table '" + k + "'");
                expect_punct("(");
                const Token& vat = peek();
                std::string v = expect_ident("variable name");
                if (std::find(vars.begin(), vars.end(), v) == vars.end())
                    fail(vat, "'" + v + "' is not a quantified variable");
                expect_punct(")");
                t.factors.emplace_back(std::move(k), std::move(v));
                if (is_punct("*")) {
                    advance();
                    continue;
                }
                break;
            }
            out.push_back(std::move(t));
            if (is_punct("+")) {
                sign = 1;
                advance();
                continue;
            }
            if (is_punct("-")) {
                sign = -1;
                advance();
                continue;
            }
            break;
        }
        return out;
    }
};

}  // namespace detail

inline SpecDocument parse(const std::string& text) { return detail::Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Canonical printer (parse ∘ print = identity on SpecDocument)
// ---------------------------------------------------------------------------

namespace detail {

inline void print_signed_terms_prefix(std::ostream& os, bool first, i64 coeff) {
    if (first) {
        if (coeff < 0) os << "-";
    } else {
        os << (coeff < 0 ? " - " : " + ");
    }
    i64 a = coeff < 0 ? -coeff : coeff;
    if (a != 1) os << a << " * ";
}

inline void print_arg_expr(std::ostream& os, const ArgExpr& e) {
    for (std::size_t i = 0; i < e.terms.size(); ++i) {
        const ArgTerm& t = e.terms[i];
        print_signed_terms_prefix(os, i == 0, t.coeff);
        for (const auto& h : t.homs) os << h << "(";
        os << t.var;
        for (std::size_t k = 0; k < t.homs.size(); ++k) os << ")";
    }
}

struct DeclPrinter {
    std::ostream& os;

    static std::string group_literal(const std::vector<i64>& factors) {
        std::string s;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i) s += " x ";
            s += "Z" + std::to_string(factors[i]);
        }
        return s;
    }

    void operator()(const GroupDecl& d) const {
        os << "group " << d.name << " = " << group_literal(d.factors) << ";\n";
    }
    void operator()(const RingDecl& d) const {
        os << "ring " << d.name << " = Z" << d.modulus << ";\n";
    }
    void operator()(const HomDecl& d) const {
        os << "hom " << d.name << " : " << d.domain << " -> " << d.codomain << " = [";
        for (std::size_t i = 0; i < d.matrix.size(); ++i) {
            if (i) os << ", ";
            os << "[";
            for (std::size_t j = 0; j < d.matrix[i].size(); ++j) {
                if (j) os << ", ";
                os << d.matrix[i][j];
            }
            os << "]";
        }
        os << "];\n";
    }
    void operator()(const KnownDecl& d) const {
        os << "known " << d.name << " : " << d.domain << " -> " << d.codomain << " = table [";
        for (std::size_t i = 0; i < d.values.size(); ++i) {
            if (i) os << ", ";
            os << d.values[i];
        }
        os << "];\n";
    }
    void operator()(const UnknownDecl& d) const {
        os << "unknown " << d.name << " : " << d.domain << " -> " << d.codomain << ";\n";
    }
    void operator()(const EquationDecl& d) const {
        os << "equation forall";
        for (const auto& v : d.forall_vars) os << " " << v;
        os << " . ";
        for (std::size_t i = 0; i < d.lhs.size(); ++i) {
            const EqTerm& t = d.lhs[i];
            print_signed_terms_prefix(os, i == 0, t.coeff);
            os << t.unknown << "(";
            print_arg_expr(os, t.arg);
            os << ")";
        }
        os << " = ";
        if (d.rhs.empty()) {
            os << "0";
        } else {
            for (std::size_t i = 0; i < d.rhs.size(); ++i) {
                const RhsTerm& t = d.rhs[i];
                print_signed_terms_prefix(os, i == 0, t.coeff);
                for (std::size_t j = 0; j < t.factors.size(); ++j) {
                    if (j) os << " * ";
                    os << t.factors[j].first << "(" << t.factors[j].second << ")";
                }
            }
        }
        os << ";\n";
    }
    void operator()(const BuilderEquationDecl& d) const {
        os << "equation " << d.builder << "(";
        for (std::size_t i = 0; i < d.args.size(); ++i) {
            if (i) os << ", ";
            os << d.args[i].first << " = " << d.args[i].second;
        }
        os << ");\n";
    }
    void operator()(const ClaimDecl& d) const {
        os << "claim degree " << d.unknown << " <= " << d.bound << ";\n";
    }
};

}  // namespace detail

inline std::string print(const SpecDocument& doc) {
    std::ostringstream os;
    for (const auto& d : doc.decls) std::visit(detail::DeclPrinter{os}, d);
    return os.str();
}

// ---------------------------------------------------------------------------
// Lowering
// ---------------------------------------------------------------------------

struct DegreeClaim {
    std::string unknown;
    i64 bound = 0;
};

struct LoweredDocument {
    LinearFunctionalEquation equation;
    std::vector<DegreeClaim> claims;
    std::map<std::string, FinAbGroup> groups;
    std::map<std::string, FunctionTable> knowns;
};

namespace detail {

struct LowerContext {
    std::map<std::string, FinAbGroup> groups;
    std::map<std::string, i64> rings;
    std::map<std::string, GroupHom> homs;
    std::map<std::string, FunctionTable> knowns;
    std::vector<UnknownDecl> unknown_decls;
    std::vector<const EquationDecl*> equations;
    const BuilderEquationDecl* builder = nullptr;
    std::vector<ClaimDecl> claim_decls;

    const FinAbGroup& group(const std::string& name) const {
        auto it = groups.find(name);
        if (it == groups.end()) throw StructuralError("lower: undeclared group " + name);
        return it->second;
    }
};

inline LowerContext collect(const SpecDocument& doc) {
    LowerContext cx;
    for (const auto& d : doc.decls) {
        if (const auto* g = std::get_if<GroupDecl>(&d)) {
            cx.groups.emplace(g->name, FinAbGroup(g->factors));
        } else if (const auto* r = std::get_if<RingDecl>(&d)) {
            cx.rings.emplace(r->name, r->modulus);
            cx.groups.emplace(r->name, FinAbGroup::cyclic(r->modulus));
        } else if (const auto* h = std::get_if<HomDecl>(&d)) {
            cx.homs.emplace(h->name,
                            GroupHom(cx.group(h->domain), cx.group(h->codomain), h->matrix));
        } else if (const auto* k = std::get_if<KnownDecl>(&d)) {
            cx.knowns.emplace(
                k->name, FunctionTable::from_integers(cx.group(k->domain),
                                                      cx.group(k->codomain), k->values));
        } else if (const auto* u = std::get_if<UnknownDecl>(&d)) {
            cx.unknown_decls.push_back(*u);
        } else if (const auto* e = std::get_if<EquationDecl>(&d)) {
            cx.equations.push_back(e);
        } else if (const auto* b = std::get_if<BuilderEquationDecl>(&d)) {
            cx.builder = b;
        } else if (const auto* c = std::get_if<ClaimDecl>(&d)) {
            cx.claim_decls.push_back(*c);
        }
    }
    return cx;
}

// Infer each quantified variable's group from where it appears.
inline std::map<std::string, FinAbGroup> infer_variable_groups(const LowerContext& cx,
                                                               const EquationDecl& eq) {
    std::map<std::string, FinAbGroup> out;
    auto constrain = [&](const std::string& var, const FinAbGroup& g, const char* where) {
        auto [it, inserted] = out.emplace(var, g);
        if (!inserted && it->second != g)
            throw StructuralError("lower: variable " + var +
                                  " is used with two different groups (" + where + ")");
    };
    for (const auto& t : eq.lhs) {
        std::string unknown_dom;
        for (const auto& u : cx.unknown_decls)
            if (u.name == t.unknown) unknown_dom = u.domain;
        for (const auto& at : t.arg.terms) {
            // the innermost hom's domain constrains the variable; a bare
            // variable sits directly in the unknown's domain
            if (at.homs.empty()) {
                constrain(at.var, cx.group(unknown_dom), "argument");
            } else {
                const GroupHom& inner = cx.homs.at(at.homs.back());
                constrain(at.var, inner.domain(), "hom application");
            }
        }
    }
    for (const auto& t : eq.rhs)
        for (const auto& [k, v] : t.factors) constrain(v, cx.knowns.at(k).domain(), "rhs");
    return out;
}

}  // namespace detail

inline LoweredDocument lower(const SpecDocument& doc) {
    detail::LowerContext cx = detail::collect(doc);
    LoweredDocument out;
    out.groups = cx.groups;
    out.knowns = cx.knowns;

    if (cx.builder) {
        i64 p = 0, n = 0, w = 0;
        for (const auto& [k, v] : cx.builder->args) {
            if (k == "p") p = v;
            if (k == "N") n = v;
            if (k == "w") w = v;
        }
        out.equation = build_knw(p, n, w);
    } else {
        if (cx.equations.empty()) throw StructuralError("lower: document has no equation");
        LinearFunctionalEquation eq;

        // All clauses must quantify over the same variables.
        const auto& vars = cx.equations.front()->forall_vars;
        for (const auto* e : cx.equations)
            if (e->forall_vars != vars)
                throw StructuralError(
                    "lower: all equation clauses must quantify the same variables");

        std::map<std::string, FinAbGroup> var_groups;
        for (const auto* e : cx.equations)
            for (auto& [v, g] : detail::infer_variable_groups(cx, *e)) {
                auto [it, inserted] = var_groups.emplace(v, g);
                if (!inserted && it->second != g)
                    throw StructuralError("lower: variable " + v +
                                          " is used with two different groups across clauses");
            }
        for (const auto& v : vars) {
            auto it = var_groups.find(v);
            if (it == var_groups.end())
                throw StructuralError("lower: cannot infer a group for unused variable " + v);
            eq.variables.push_back({v, it->second});
        }

        std::map<std::string, std::size_t> unknown_index;
        for (const auto& u : cx.unknown_decls) {
            unknown_index.emplace(u.name, eq.unknowns.size());
            eq.unknowns.push_back({u.name, cx.group(u.domain), cx.group(u.codomain), false});
        }

        for (const auto* e : cx.equations) {
            EquationClause clause;
            for (const auto& t : e->lhs) {
                EquationTerm term;
                term.coefficient = t.coeff;
                term.unknown = unknown_index.at(t.unknown);
                const FinAbGroup& udom = eq.unknowns[term.unknown].domain;
                term.argument.parts.assign(eq.variables.size(), std::nullopt);
                for (const auto& at : t.arg.terms) {
                    std::size_t vi = 0;
                    while (eq.variables[vi].name != at.var) ++vi;
                    const FinAbGroup& vg = eq.variables[vi].group;
                    GroupHom h = GroupHom::scalar(vg, at.coeff);
                    for (auto it = at.homs.rbegin(); it != at.homs.rend(); ++it) {
                        const GroupHom& step = cx.homs.at(*it);
                        if (step.domain() != h.codomain())
                            throw StructuralError("lower: hom " + *it +
                                                  " cannot be applied here (domain mismatch)");
                        h = step.compose(h);
                    }
                    if (h.codomain() != udom)
                        throw StructuralError("lower: argument of " + t.unknown +
                                              " does not land in its domain");
                    term.argument.parts[vi] =
                        term.argument.parts[vi] ? (*term.argument.parts[vi] + h) : h;
                }
                clause.terms.push_back(std::move(term));
            }

            if (!e->rhs.empty()) {
                if (eq.unknowns.empty())
                    throw StructuralError("lower: rhs without any unknown");
                const FinAbGroup& cod = eq.unknowns.front().codomain;
                if (cod.rank() != 1)
                    throw StructuralError(
                        "lower: a nonzero rhs requires a rank-1 (ring) codomain");
                const i64 m = cod.moduli()[0];
                RingZm ring(m);
                FinAbGroup vspace = eq.variables.front().group;
                for (std::size_t i = 1; i < eq.variables.size(); ++i)
                    vspace = FinAbGroup::product(vspace, eq.variables[i].group);
                std::vector<i64> values(static_cast<std::size_t>(vspace.order()), 0);
                for (i64 a = 0; a < vspace.order(); ++a) {
                    std::vector<i64> var_idx(eq.variables.size());
                    i64 rest = a;
                    for (std::size_t vi = 0; vi < eq.variables.size(); ++vi) {
                        var_idx[vi] = rest % eq.variables[vi].group.order();
                        rest /= eq.variables[vi].group.order();
                    }
                    i64 acc = 0;
                    for (const auto& t : e->rhs) {
                        i64 prod = mod_reduce(t.coeff, m);
                        for (const auto& [k, v] : t.factors) {
                            const FunctionTable& tab = cx.knowns.at(k);
                            if (tab.codomain() != cod)
                                throw StructuralError("lower: known table " + k +
                                                      " has the wrong codomain for the rhs");
                            std::size_t vi = 0;
                            while (eq.variables[vi].name != v) ++vi;
                            prod = ring.mul(prod, tab.value_index(var_idx[vi]));
                        }
                        acc = ring.add(acc, prod);
                    }
                    values[static_cast<std::size_t>(a)] = acc;
                }
                clause.rhs = FunctionTable(vspace, cod, std::move(values));
            }
            eq.clauses.push_back(std::move(clause));
        }
        out.equation = std::move(eq);
    }

    // Claims: mark claimed unknowns; the equation-level bound is the max claim.
    std::optional<i64> max_bound;
    for (const auto& c : cx.claim_decls) {
        bool found = false;
        for (auto& u : out.equation.unknowns)
            if (u.name == c.unknown) {
                u.degree_claimed = true;
                found = true;
            }
        if (!found)
            throw StructuralError("lower: claim references unknown '" + c.unknown +
                                  "' absent from the equation");
        out.claims.push_back({c.unknown, c.bound});
        max_bound = max_bound ? std::max(*max_bound, c.bound) : c.bound;
    }
    if (!cx.builder) {
        // Without claims there is no bound to verify.
        out.equation.claimed_bound = max_bound;
        if (!max_bound)
            for (auto& u : out.equation.unknowns) u.degree_claimed = false;
    } else if (max_bound) {
        out.equation.claimed_bound = std::max(*out.equation.claimed_bound, *max_bound);
    }

    out.equation.validate();
    return out;
}

}  // namespace feq
