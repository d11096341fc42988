#include "jetcalc/parser.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "jetcalc/errors.hpp"

namespace jetcalc::cli {
namespace {

constexpr long kMaxExponent = 1000;

enum class Tok { Number, Ident, Op, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < s.size()) {
        const unsigned char c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            advance(1);
            continue;
        }
        std::size_t j = i;
        if (std::isdigit(c)) {
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Tok::Number, std::string(s.substr(i, j - i)), line, col});
        } else if (std::isalpha(c) || c == '_') {
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), line, col});
        } else if (std::string_view("+-*/^()").find(static_cast<char>(c)) != std::string_view::npos) {
            j = i + 1;
            out.push_back({Tok::Op, std::string(1, static_cast<char>(c)), line, col});
        } else {
            throw ParseError(std::string("unexpected character '") + static_cast<char>(c) + "'", line, col);
        }
        advance(j - i);
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    RationalExpr parse() {
        RationalExpr e = expr();
        if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    bool is_op(char c) const { return peek().kind == Tok::Op && peek().text[0] == c; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().column); }

    void expect(char c) {
        if (!is_op(c)) fail(std::string("expected '") + c + "'" + (peek().kind == Tok::End ? " before end of input" : ""));
        ++pos_;
    }

    RationalExpr expr() {
        RationalExpr acc = term();
        while (is_op('+') || is_op('-')) {
            const bool plus = is_op('+');
            ++pos_;
            RationalExpr rhs = term();
            acc = plus ? acc + rhs : acc - rhs;
        }
        return acc;
    }

    RationalExpr term() {
        RationalExpr acc = unary();
        while (is_op('*') || is_op('/')) {
            const bool times = is_op('*');
            const Token at = peek();
            ++pos_;
            RationalExpr rhs = unary();
            if (times) {
                acc = acc * rhs;
            } else {
                if (rhs.is_zero()) throw ParseError("degenerate denominator (divisor is identically zero)", at.line, at.column);
                acc = acc / rhs;
            }
        }
        return acc;
    }

    RationalExpr unary() {
        if (is_op('-')) {
            ++pos_;
            return -unary();
        }
        if (is_op('+')) {
            ++pos_;
            return unary();
        }
        return power();
    }

    RationalExpr power() {
        RationalExpr base = primary();
        if (!is_op('^')) return base;
        ++pos_;
        long e = exponent();
        return base.pow(static_cast<int>(e));
    }

    // Right-associative integer exponent: atom ('^' exponent)?
    long exponent() {
        const Token at = peek();
        if (is_op('-')) throw ParseError("negative exponent", at.line, at.column);
        RationalExpr v = primary();
        if (!v.is_constant()) throw ParseError("exponent must be an integer constant", at.line, at.column);
        Rational r = v.constant_value();
        if (r.get_den() != 1) throw ParseError("exponent must be an integer", at.line, at.column);
        if (sgn(r) < 0) throw ParseError("negative exponent", at.line, at.column);
        if (r > kMaxExponent) throw ParseError("exponent exceeds " + std::to_string(kMaxExponent), at.line, at.column);
        long e = r.get_num().get_si();
        if (is_op('^')) {
            ++pos_;
            long inner = exponent();
            mpz_class big;
            mpz_pow_ui(big.get_mpz_t(), mpz_class(e).get_mpz_t(), static_cast<unsigned long>(inner));
            if (big > kMaxExponent) throw ParseError("exponent exceeds " + std::to_string(kMaxExponent), at.line, at.column);
            e = big.get_si();
        }
        return e;
    }

    RationalExpr primary() {
        const Token t = peek();
        switch (t.kind) {
        case Tok::Number:
            ++pos_;
            return RationalExpr(Rational(mpz_class(t.text)));
        case Tok::Ident: {
            ++pos_;
            auto s = lookup_symbol(t.text);
            if (!s) throw ParseError("unknown identifier '" + t.text + "'", t.line, t.column);
            return RationalExpr::symbol(*s);
        }
        case Tok::Op:
            if (t.text[0] == '(') {
                ++pos_;
                RationalExpr e = expr();
                expect(')');
                return e;
            }
            fail("unexpected '" + t.text + "'");
        case Tok::End:
            fail("unexpected end of input");
        }
        fail("unexpected token");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

} // namespace

RationalExpr parse_expression(std::string_view text) { return Parser(tokenize(text)).parse(); }

} // namespace jetcalc::cli
