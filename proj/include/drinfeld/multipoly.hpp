#pragma once

#include "drinfeld/rational_function.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace drinfeld {

/// Polynomial in X_1..X_g with coefficients in a rational function field.
class MultiPoly {
public:
    using Exponents = std::vector<unsigned>;

    MultiPoly(const GaloisField& k, std::size_t nvars) : k_(&k), nvars_(nvars) {}
    static MultiPoly constant(const RationalFunction& c, std::size_t nvars);
    /// X_{index+1}.
    static MultiPoly variable(const GaloisField& k, std::size_t nvars, std::size_t index);

    const GaloisField& field() const { return *k_; }
    std::size_t variables() const { return nvars_; }
    const std::map<Exponents, RationalFunction>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Constant value; requires every term to have degree 0.
    std::optional<RationalFunction> as_constant() const;

    MultiPoly operator-() const;
    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    /// Division by a nonzero constant only.
    friend MultiPoly operator/(const MultiPoly& a, const MultiPoly& b);
    MultiPoly pow(std::int64_t n) const;

    RationalFunction evaluate(const std::vector<RationalFunction>& point) const;
    /// Coefficients mapped through fn (e.g. a tower inclusion).
    template <class Fn>
    MultiPoly map_coefficients(const GaloisField& to, Fn&& fn) const {
        MultiPoly out(to, nvars_);
        for (const auto& [e, c] : terms_) out.add_term(e, fn(c));
        return out;
    }

    std::string to_string(const std::string& var = "T") const;

private:
    void add_term(const Exponents& e, const RationalFunction& c);

    const GaloisField* k_;
    std::size_t nvars_;
    std::map<Exponents, RationalFunction> terms_;
};

/// Parses a polynomial in X1..Xg whose coefficients are rational functions in
/// `var` over k (`w` names the generator of k). Throws ParseError.
MultiPoly parse_multipoly(std::string_view text, const GaloisField& k, std::size_t nvars, const std::string& var = "T");

}  // namespace drinfeld
