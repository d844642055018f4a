#include "drinfeld/rational_function.hpp"

#include <stdexcept>

namespace drinfeld {

RationalFunction::RationalFunction(const GaloisField& field)
    : num_(field), den_(Poly::constant(field.one())) {}

RationalFunction::RationalFunction(const Poly& numerator)
    : num_(numerator), den_(Poly::constant(numerator.field().one())) {}

RationalFunction::RationalFunction(const Poly& numerator, const Poly& denominator)
    : num_(numerator), den_(denominator) {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = Poly::constant(field().one());
        return;
    }
    Poly g = gcd(num_, den_);
    if (!g.is_one()) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
    const Fq lead = den_.leading();
    if (!lead.is_one()) {
        const Fq inv = lead.inverse();
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return RationalFunction(a.field());
    if (a.is_polynomial() && b.is_polynomial())
        return RationalFunction(a.num_ * b.num_, Poly::constant(a.field().one()), RationalFunction::Reduced{});
    // Cross-cancel before multiplying to keep degrees small.
    Poly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
    Poly n = (a.num_ / g1) * (b.num_ / g2);
    Poly d = (a.den_ / g2) * (b.den_ / g1);
    return RationalFunction(n, d);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }

RationalFunction RationalFunction::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero rational function");
    return RationalFunction(den_, num_);
}

RationalFunction RationalFunction::pow(std::int64_t n) const {
    if (n < 0) return inverse().pow(-n);
    RationalFunction result = constant(field().one());
    RationalFunction base = *this;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

RationalFunction RationalFunction::frobenius(unsigned k) const {
    // Frobenius is a field automorphism of k(T) onto its image: reduction and monicity survive.
    return RationalFunction(num_.frobenius(k), den_.frobenius(k), Reduced{});
}

RationalFunction RationalFunction::substitute(const RationalFunction& g) const {
    const GaloisField& to = g.field();
    auto eval = [&](const Poly& p) {
        RationalFunction acc(to);
        for (std::size_t i = p.coefficients().size(); i-- > 0;)
            acc = acc * g + RationalFunction::constant(drinfeld::embed(p.coefficients()[i], to));
        return acc;
    };
    return eval(num_) / eval(den_);
}

RationalFunction RationalFunction::embed(const GaloisField& to) const {
    return RationalFunction(num_.embed(to), den_.embed(to), Reduced{});
}

std::string RationalFunction::to_string(const std::string& var, const std::string& gen) const {
    if (is_polynomial()) return num_.to_string(var, gen);
    auto wrap = [&](const Poly& p) {
        const std::string s = p.to_string(var, gen);
        return p.coefficients().size() > 1 && s.find(' ') != std::string::npos ? "(" + s + ")" : s;
    };
    return wrap(num_) + "/" + wrap(den_);
}

IntValuation valuation_at(const RationalFunction& x, const Poly& pi) {
    if (x.is_zero()) return IntValuation::infinity();
    return IntValuation(multiplicity(x.numerator(), pi) - multiplicity(x.denominator(), pi));
}

IntValuation valuation_at_infinity(const RationalFunction& x) {
    if (x.is_zero()) return IntValuation::infinity();
    return IntValuation(x.denominator().degree() - x.numerator().degree());
}

}  // namespace drinfeld
