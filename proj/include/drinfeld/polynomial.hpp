#pragma once

#include "drinfeld/galois_field.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace drinfeld {

/// Dense univariate polynomial over an interned GaloisField, lowest
/// coefficient first, never carrying trailing zeros.
class Poly {
public:
    explicit Poly(const GaloisField& field) : field_(&field) {}
    Poly(const GaloisField& field, std::vector<Fq> coeffs);

    static Poly constant(const Fq& c);
    static Poly monomial(const Fq& c, std::size_t degree);
    /// The polynomial x.
    static Poly variable(const GaloisField& field);

    const GaloisField& field() const { return *field_; }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    bool is_one() const { return coeffs_.size() == 1 && coeffs_[0].is_one(); }
    Fq operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : field_->zero(); }
    Fq leading() const { return coeffs_.empty() ? field_->zero() : coeffs_.back(); }
    const std::vector<Fq>& coefficients() const { return coeffs_; }
    /// Exponent of the largest power of x dividing this (0 for the zero polynomial).
    std::size_t low_order() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Fq& c);
    friend Poly operator*(const Fq& c, const Poly& a) { return a * c; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    /// Degree first, then coefficients from the top; deterministic sorting only.
    friend bool operator<(const Poly& a, const Poly& b);

    /// Quotient and remainder; throws std::domain_error on division by zero.
    std::pair<Poly, Poly> divmod(const Poly& divisor) const;
    Poly operator/(const Poly& d) const { return divmod(d).first; }
    Poly operator%(const Poly& d) const { return divmod(d).second; }

    Poly monic() const;
    Poly derivative() const;
    Poly pow(std::uint64_t n) const;
    /// Coefficient-wise c -> c^(p^k) together with x -> x^(p^k): the p^k-th power.
    Poly frobenius(unsigned k = 1) const;
    /// Inverse of frobenius(1); requires all exponents divisible by p.
    Poly frobenius_root() const;
    /// this(g).
    Poly compose(const Poly& g) const;
    /// Value at x, which may lie in an extension of field().
    Fq evaluate(const Fq& x) const;
    /// Coefficients mapped into `to` (must contain field()).
    Poly embed(const GaloisField& to) const;

    std::string to_string(const std::string& var = "T", const std::string& gen = "w") const;
    friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

private:
    void normalize();

    const GaloisField* field_;
    std::vector<Fq> coeffs_;
};

/// Monic greatest common divisor (zero if both are zero).
Poly gcd(const Poly& a, const Poly& b);
/// base^n mod m.
Poly pow_mod(const Poly& base, std::uint64_t n, const Poly& m);

struct PolyFactor {
    Poly factor;  // monic irreducible
    int multiplicity;
};

struct Factorization {
    Fq unit;
    std::vector<PolyFactor> factors;  // sorted by (degree, coefficients)
};

/// Complete factorization over field() by square-free, distinct-degree and
/// Cantor-Zassenhaus equal-degree splitting. Deterministic.
Factorization factor(const Poly& f);
bool is_irreducible(const Poly& f);
/// Multiplicity of the irreducible `pi` in f (f nonzero).
int multiplicity(const Poly& f, const Poly& pi);
/// Roots of f lying in `in` (an extension of f's field), by exhaustion, in code order.
std::vector<Fq> roots(const Poly& f, const GaloisField& in);
/// Minimal polynomial of x over `base` (a subfield of x's field), with coefficients in `base`.
Poly minimal_polynomial(const Fq& x, const GaloisField& base);
/// Coefficients of f pulled back into `base`; throws if some coefficient is not in it.
Poly restrict_coefficients(const Poly& f, const GaloisField& base);

}  // namespace drinfeld
