#pragma once

#include "drinfeld/errors.hpp"
#include "drinfeld/rational_function.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace drinfeld {

/// Parsed arithmetic expression over integers and named symbols with
/// + - * / and integer powers (possibly negative).
struct Expr {
    enum class Kind { Number, Symbol, Neg, Add, Sub, Mul, Div, Pow };
    Kind kind = Kind::Number;
    std::int64_t number = 0;  // Number value, or exponent for Pow
    std::string symbol;
    std::unique_ptr<Expr> lhs, rhs;
};

/// Throws ParseError naming the offending column.
Expr parse_expression(std::string_view text);

/// Folds an expression tree. `leaf(const Expr&)` maps Number/Symbol nodes to
/// values; `power(const V&, int64)` handles Pow.
template <class V, class Leaf, class Power>
V fold(const Expr& e, Leaf&& leaf, Power&& power) {
    switch (e.kind) {
        case Expr::Kind::Number:
        case Expr::Kind::Symbol: return leaf(e);
        case Expr::Kind::Neg: return -fold<V>(*e.lhs, leaf, power);
        case Expr::Kind::Add: return fold<V>(*e.lhs, leaf, power) + fold<V>(*e.rhs, leaf, power);
        case Expr::Kind::Sub: return fold<V>(*e.lhs, leaf, power) - fold<V>(*e.rhs, leaf, power);
        case Expr::Kind::Mul: return fold<V>(*e.lhs, leaf, power) * fold<V>(*e.rhs, leaf, power);
        case Expr::Kind::Div: return fold<V>(*e.lhs, leaf, power) / fold<V>(*e.rhs, leaf, power);
        case Expr::Kind::Pow: return power(fold<V>(*e.lhs, leaf, power), e.number);
    }
    throw ParseError("corrupt expression tree");
}

/// Element of k(var). Integers are read mod p; `w` names the generator of k
/// when k is not a prime field.
RationalFunction parse_rational_function(std::string_view text, const GaloisField& k, const std::string& var = "T");
/// Element of k[var]; rejects proper fractions.
Poly parse_polynomial(std::string_view text, const GaloisField& k, const std::string& var = "T");
/// Element of k itself.
Fq parse_constant(std::string_view text, const GaloisField& k);

}  // namespace drinfeld
