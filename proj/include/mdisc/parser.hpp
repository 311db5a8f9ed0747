#pragma once

// Text <-> MultiPoly.
//
//   expr     := term (('+'|'-') term)*
//   term     := factor ('*' factor)*
//   factor   := ('+'|'-') factor | base ('^' natural)?
//   base     := rational | variable | '(' expr ')'
//   rational := integer ('/' positive-integer)?
//
// Multiplication is always explicit. Variable names start with a letter and
// continue with letters, digits or underscores.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mdisc/poly.hpp"

namespace mdisc {

struct PolySource {
    std::string text;
    /// When absent, the ring is the sorted set of names used in `text`.
    std::optional<std::vector<std::string>> declared_vars;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, std::string what, std::vector<std::string> expected = {})
        : Error(compose(line, column, what, expected)),
          line_(line),
          column_(column),
          expected_(std::move(expected)) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    static std::string compose(std::size_t line, std::size_t column, const std::string& what,
                               const std::vector<std::string>& expected) {
        std::string msg = std::to_string(line) + ":" + std::to_string(column) + ": " + what;
        if (!expected.empty()) {
            msg += " (expected ";
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (i != 0) msg += i + 1 == expected.size() ? " or " : ", ";
                msg += expected[i];
            }
            msg += ")";
        }
        return msg;
    }

    std::size_t line_;
    std::size_t column_;
    std::vector<std::string> expected_;
};

/// The text names a variable outside the declared list.
class UnknownVariable : public ParseError {
public:
    UnknownVariable(std::size_t line, std::size_t column, const std::string& name)
        : ParseError(line, column, "unknown variable '" + name + "'"), name_(name) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

namespace detail {

enum class TokKind { Integer, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    TokKind kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

inline std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    std::size_t line = 1;
    std::size_t col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        const unsigned char ch = static_cast<unsigned char>(src[i]);
        if (std::isspace(ch)) {
            advance(1);
            continue;
        }
        const std::size_t l = line;
        const std::size_t c = col;
        if (std::isdigit(ch)) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({TokKind::Integer, std::string(src.substr(i, j - i)), l, c});
            advance(j - i);
        } else if (std::isalpha(ch)) {
            std::size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            out.push_back({TokKind::Ident, std::string(src.substr(i, j - i)), l, c});
            advance(j - i);
        } else {
            TokKind k;
            switch (ch) {
                case '+': k = TokKind::Plus; break;
                case '-': k = TokKind::Minus; break;
                case '*': k = TokKind::Star; break;
                case '/': k = TokKind::Slash; break;
                case '^': k = TokKind::Caret; break;
                case '(': k = TokKind::LParen; break;
                case ')': k = TokKind::RParen; break;
                default:
                    throw ParseError(l, c, std::string("unexpected character '") + src[i] + "'");
            }
            out.push_back({k, std::string(1, src[i]), l, c});
            advance(1);
        }
    }
    out.push_back({TokKind::End, "", line, col});
    return out;
}

class Parser {
public:
    Parser(std::vector<Token> toks, RingPtr ring) : toks_(std::move(toks)), ring_(std::move(ring)) {}

    MultiPoly parse() {
        MultiPoly p = expr();
        if (peek().kind != TokKind::End)
            fail("unexpected '" + peek().text + "'", {"'+'", "'-'", "'*'", "'^'", "end of input"});
        return p;
    }

private:
    static constexpr std::uint32_t kMaxExponent = 65535;

    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }

    [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected = {}) const {
        throw ParseError(peek().line, peek().column, what, std::move(expected));
    }

    MultiPoly expr() {
        MultiPoly acc = term();
        while (peek().kind == TokKind::Plus || peek().kind == TokKind::Minus) {
            const bool minus = next().kind == TokKind::Minus;
            MultiPoly t = term();
            acc = minus ? acc - t : acc + t;
        }
        return acc;
    }

    MultiPoly term() {
        MultiPoly acc = factor();
        while (peek().kind == TokKind::Star) {
            next();
            acc = acc * factor();
        }
        return acc;
    }

    MultiPoly factor() {
        if (peek().kind == TokKind::Minus) {
            next();
            return -factor();
        }
        if (peek().kind == TokKind::Plus) {
            next();
            return factor();
        }
        MultiPoly b = base();
        if (peek().kind != TokKind::Caret) return b;
        next();
        if (peek().kind != TokKind::Integer) fail("exponent must be a non-negative integer literal", {"integer"});
        const Token& e = next();
        if (peek().kind == TokKind::Slash) fail("exponent must be a non-negative integer literal");
        if (e.text.size() > 5 || std::stoul(e.text) > kMaxExponent)
            throw ParseError(e.line, e.column, "exponent too large");
        return pow(b, static_cast<unsigned>(std::stoul(e.text)));
    }

    MultiPoly base() {
        const Token& t = peek();
        switch (t.kind) {
            case TokKind::Integer: {
                next();
                BigInt num(t.text, 10);
                BigInt den = 1;
                if (peek().kind == TokKind::Slash) {
                    next();
                    if (peek().kind != TokKind::Integer) fail("expected a positive integer denominator", {"integer"});
                    const Token& d = next();
                    den = BigInt(d.text, 10);
                    if (den == 0) throw ParseError(d.line, d.column, "denominator must be positive");
                }
                return MultiPoly::constant(ring_, Rat(num, den));
            }
            case TokKind::Ident: {
                next();
                auto idx = ring_->index_of(t.text);
                if (!idx) throw UnknownVariable(t.line, t.column, t.text);
                return MultiPoly::variable(ring_, *idx);
            }
            case TokKind::LParen: {
                next();
                MultiPoly inner = expr();
                if (peek().kind != TokKind::RParen) fail("unbalanced parenthesis", {"')'"});
                next();
                return inner;
            }
            default:
                fail(t.kind == TokKind::End ? "unexpected end of input" : "unexpected '" + t.text + "'",
                     {"number", "variable", "'('"});
        }
    }

    std::vector<Token> toks_;
    RingPtr ring_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Variable names occurring in the text, sorted lexicographically.
inline std::vector<std::string> collect_variables(std::string_view text) {
    std::set<std::string> names;
    for (const auto& t : detail::tokenize(text))
        if (t.kind == detail::TokKind::Ident) names.insert(t.text);
    return {names.begin(), names.end()};
}

inline MultiPoly parse_poly(const PolySource& src) {
    auto toks = detail::tokenize(src.text);
    std::vector<std::string> vars;
    if (src.declared_vars) {
        vars = *src.declared_vars;
    } else {
        std::set<std::string> names;
        for (const auto& t : toks)
            if (t.kind == detail::TokKind::Ident) names.insert(t.text);
        vars.assign(names.begin(), names.end());
    }
    return detail::Parser(std::move(toks), make_ring(std::move(vars))).parse();
}

inline MultiPoly parse_poly(std::string_view text) { return parse_poly(PolySource{std::string(text), std::nullopt}); }

inline MultiPoly parse_poly(std::string_view text, const RingPtr& ring) {
    return detail::Parser(detail::tokenize(text), ring).parse();
}

/// Canonical rendering: terms in decreasing graded-lex order, "*" between
/// factors, unit coefficients omitted.
inline std::string format_poly(const MultiPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        if (first) {
            if (c.sign() < 0) out += "-";
        } else {
            out += c.sign() < 0 ? " - " : " + ";
        }
        first = false;
        const Rat mag = abs(c);
        std::string mono;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += p.ring()->name(i);
            if (m[i] > 1) mono += "^" + std::to_string(m[i]);
        }
        if (mono.empty()) {
            out += mag.str();
        } else if (mag.is_one()) {
            out += mono;
        } else {
            out += mag.str() + "*" + mono;
        }
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << format_poly(p); }

}  // namespace mdisc
