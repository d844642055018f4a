#pragma once

#include "drinfeld/polynomial.hpp"
#include "drinfeld/rational.hpp"

#include <ostream>
#include <string>

namespace drinfeld {

/// An element of k(T) for a finite field k, kept reduced with monic denominator.
class RationalFunction {
public:
    explicit RationalFunction(const GaloisField& field);
    RationalFunction(const Poly& numerator);  // NOLINT(google-explicit-constructor)
    RationalFunction(const Poly& numerator, const Poly& denominator);

    static RationalFunction constant(const Fq& c) { return RationalFunction(Poly::constant(c)); }
    static RationalFunction variable(const GaloisField& field) { return RationalFunction(Poly::variable(field)); }

    const GaloisField& field() const { return num_.field(); }
    const Poly& numerator() const { return num_; }
    const Poly& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    /// True for elements of k (no dependence on T).
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

    RationalFunction operator-() const { return RationalFunction(-num_, den_, Reduced{}); }
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    RationalFunction inverse() const;
    RationalFunction pow(std::int64_t n) const;
    /// x^(p^k), computed coefficient-wise.
    RationalFunction frobenius(unsigned k = 1) const;
    /// Substitute T -> g(λ) and map constants into g's field.
    RationalFunction substitute(const RationalFunction& g) const;
    RationalFunction embed(const GaloisField& to) const;

    std::string to_string(const std::string& var = "T", const std::string& gen = "w") const;
    friend std::ostream& operator<<(std::ostream& os, const RationalFunction& x) { return os << x.to_string(); }

private:
    struct Reduced {};
    RationalFunction(Poly num, Poly den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}

    Poly num_;
    Poly den_;
};

/// Order of vanishing at the monic irreducible pi; +∞ for zero.
IntValuation valuation_at(const RationalFunction& x, const Poly& pi);
/// deg(denominator) - deg(numerator); +∞ for zero.
IntValuation valuation_at_infinity(const RationalFunction& x);

}  // namespace drinfeld
