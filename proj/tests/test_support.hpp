#pragma once

#include "drinfeld/drinfeld_module.hpp"
#include "drinfeld/expression.hpp"
#include "drinfeld/galois_field.hpp"
#include "drinfeld/places.hpp"
#include "drinfeld/rational.hpp"
#include "drinfeld/rational_function.hpp"
#include "drinfeld/sampling.hpp"

#include <string>

namespace drinfeld::test {

inline const GaloisField& F2() { return GaloisField::get(2, 1); }
inline const GaloisField& F3() { return GaloisField::get(3, 1); }
inline const GaloisField& F4() { return GaloisField::get(2, 2); }
inline const GaloisField& F9() { return GaloisField::get(3, 2); }

inline RationalFunction rf(const std::string& s, const GaloisField& k = F3(), const std::string& var = "T") {
    return parse_rational_function(s, k, var);
}

inline Poly poly(const std::string& s, const GaloisField& k = F3(), const std::string& var = "T") {
    return parse_polynomial(s, k, var);
}

inline Rational Q(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

/// L = F_3(λ) with T = 2λ^2, so λ^2 = -T and λ is T-torsion for Carlitz q = 3.
inline RationalTower lambda_tower() { return RationalTower(F3(), poly("2*L^2", F3(), "L")); }

inline DrinfeldModule carlitz3() { return DrinfeldModule::carlitz(F3()); }

/// φ_T = i(T) + Σ c_i τ^i from coefficient strings over F_{q^m}.
inline DrinfeldModule module(const GaloisField& fq, unsigned m, const std::vector<std::string>& coeffs) {
    const GaloisField& k = GaloisField::get(fq.characteristic(), fq.degree() * m);
    std::vector<RationalFunction> cs;
    for (const auto& c : coeffs) cs.push_back(rf(c, k));
    return DrinfeldModule(fq, m, OrePolynomial(fq.degree(), cs));
}

}  // namespace drinfeld::test
