#pragma once

#include "drinfeld/rational_function.hpp"

#include <random>

namespace drinfeld {

using Rng = std::mt19937_64;

inline Fq random_element(const GaloisField& k, Rng& rng) {
    std::uniform_int_distribution<std::uint32_t> d(0, k.order() - 1);
    return k.element(d(rng));
}

inline Fq random_nonzero(const GaloisField& k, Rng& rng) {
    std::uniform_int_distribution<std::uint32_t> d(1, k.order() - 1);
    return k.element(d(rng));
}

/// Uniform coefficients, degree <= max_degree.
inline Poly random_poly(const GaloisField& k, int max_degree, Rng& rng) {
    std::vector<Fq> cs;
    for (int i = 0; i <= max_degree; ++i) cs.push_back(random_element(k, rng));
    return Poly(k, std::move(cs));
}

inline RationalFunction random_rational_function(const GaloisField& k, int max_degree, Rng& rng) {
    Poly den = random_poly(k, max_degree, rng);
    while (den.is_zero()) den = random_poly(k, max_degree, rng);
    return RationalFunction(random_poly(k, max_degree, rng), den);
}

inline RationalFunction random_nonzero_rational_function(const GaloisField& k, int max_degree, Rng& rng) {
    RationalFunction x = random_rational_function(k, max_degree, rng);
    while (x.is_zero()) x = random_rational_function(k, max_degree, rng);
    return x;
}

}  // namespace drinfeld
