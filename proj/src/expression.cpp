#include "drinfeld/expression.hpp"

#include <cctype>
#include <stdexcept>

namespace drinfeld {
namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Expr parse() {
        Expr e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("expression '" + std::string(s_) + "', column " + std::to_string(pos_ + 1) + ": " + what);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    static Expr binary(Expr::Kind k, Expr a, Expr b) {
        Expr e;
        e.kind = k;
        e.lhs = std::make_unique<Expr>(std::move(a));
        e.rhs = std::make_unique<Expr>(std::move(b));
        return e;
    }

    Expr expr() {
        Expr e = term();
        while (true) {
            if (accept('+')) e = binary(Expr::Kind::Add, std::move(e), term());
            else if (accept('-')) e = binary(Expr::Kind::Sub, std::move(e), term());
            else return e;
        }
    }

    Expr term() {
        Expr e = unary();
        while (true) {
            if (accept('*')) e = binary(Expr::Kind::Mul, std::move(e), unary());
            else if (accept('/')) e = binary(Expr::Kind::Div, std::move(e), unary());
            else return e;
        }
    }

    Expr unary() {
        if (accept('-')) {
            Expr e;
            e.kind = Expr::Kind::Neg;
            e.lhs = std::make_unique<Expr>(unary());
            return e;
        }
        if (accept('+')) return unary();
        return power();
    }

    Expr power() {
        Expr base = primary();
        if (!accept('^')) return base;
        bool negative = accept('-');
        skip();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected integer exponent");
        Expr e;
        e.kind = Expr::Kind::Pow;
        e.number = integer() * (negative ? -1 : 1);
        e.lhs = std::make_unique<Expr>(std::move(base));
        return e;
    }

    std::int64_t integer() {
        std::int64_t v = 0;
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            if (pos_ - start > 15) fail("integer literal too long");
            v = v * 10 + (s_[pos_++] - '0');
        }
        return v;
    }

    Expr primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            if (!accept(')')) fail("expected ')'");
            return e;
        }
        Expr e;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            e.kind = Expr::Kind::Number;
            e.number = integer();
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            e.kind = Expr::Kind::Symbol;
            e.symbol = std::string(s_.substr(start, pos_ - start));
            return e;
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expression(std::string_view text) { return Parser(text).parse(); }

RationalFunction parse_rational_function(std::string_view text, const GaloisField& k, const std::string& var) {
    Expr e = parse_expression(text);
    auto leaf = [&](const Expr& n) -> RationalFunction {
        if (n.kind == Expr::Kind::Number) return RationalFunction::constant(k.from_int(n.number));
        if (n.symbol == var) return RationalFunction::variable(k);
        if (n.symbol == "w") {
            if (k.degree() == 1) throw ParseError("'w' is only defined over non-prime constant fields, got " + k.name());
            return RationalFunction::constant(k.generator());
        }
        throw ParseError("unknown symbol '" + n.symbol + "' in '" + std::string(text) + "' (expected " + var + " or w)");
    };
    auto power = [](const RationalFunction& b, std::int64_t n) { return b.pow(n); };
    try {
        return fold<RationalFunction>(e, leaf, power);
    } catch (const std::domain_error& err) {
        throw ParseError("'" + std::string(text) + "': " + err.what());
    }
}

Poly parse_polynomial(std::string_view text, const GaloisField& k, const std::string& var) {
    RationalFunction r = parse_rational_function(text, k, var);
    if (!r.is_polynomial()) throw ParseError("'" + std::string(text) + "' is not a polynomial in " + var);
    return r.numerator();
}

Fq parse_constant(std::string_view text, const GaloisField& k) {
    RationalFunction r = parse_rational_function(text, k, "\x01");
    if (!r.is_constant()) throw ParseError("'" + std::string(text) + "' is not a constant");
    return r.numerator()[0];
}

}  // namespace drinfeld
