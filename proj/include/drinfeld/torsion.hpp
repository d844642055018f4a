#pragma once

#include "drinfeld/drinfeld_module.hpp"
#include "drinfeld/local_field.hpp"
#include "drinfeld/newton_polygon.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace drinfeld {

/// The nonzero element t of the prime below v used for the ball argument:
/// in generic characteristic the monic generator of the prime of F_q[T]
/// contained in the maximal ideal at v, otherwise the generator of the
/// characteristic ideal. Throws HypothesisError when φ has generic
/// characteristic and some element of F_q[T] is not integral at v.
Poly choose_t(const DrinfeldModule& phi, const Place& v);

struct BallConstant {
    Place v;
    Poly t;
    bool generic = true;
    std::size_t r0 = 0;
    std::size_t r = 0;
    /// v(a_i) for i = r0..r (index i - r0); +∞ for vanishing coefficients.
    std::vector<IntValuation> coefficient_valuations{};
    /// Finite members of S, in the order they are formed.
    std::vector<Rational> S{};
    bool first_fraction_discarded = false;
    std::int64_t C_v = 1;

    std::string to_string() const;
};

/// C_v: the smallest positive integer exceeding every finite member of S.
BallConstant ball_constant(const DrinfeldModule& phi, const Place& v);

/// φ_a as an additive polynomial over the local field, coefficients embedded
/// with the given relative precision.
AdditivePolynomial<LocalElement> local_additive_form(const OrePolynomial& f, const LocalField& F,
                                                     std::optional<std::int64_t> relative_precision = std::nullopt);

/// v(φ_t(x)) for v(x) ≥ C_v, checked against v(a_{r0}) + q^{r0}·v(x) and
/// v(x). Throws std::invalid_argument if v(x) < C_v or x is zero to working
/// precision, and InvariantViolation if the identity fails.
Rational decisive_step(const AdditivePolynomial<LocalElement>& phi_t, const LocalElement& x, const BallConstant& ball);

/// The roots of φ_a inside a local field, to a fixed absolute precision.
struct TorsionSet {
    Poly a;
    const GaloisField* fq = nullptr;
    std::shared_ptr<const LocalField> field{};
    std::int64_t precision = 0;  // every point is known modulo u^precision
    /// u-order certified for φ_a(x) on every listed point.
    std::int64_t certified_order = 0;
    NewtonPolygon polygon{};
    std::vector<LocalElement> points{};  // sorted, 0 first
    std::vector<LocalElement> basis{};   // an F_q-basis
    std::size_t expected_size = 1;     // q^(r·deg a)

    bool complete() const { return points.size() == expected_size; }
    /// Index of a point congruent to x, if any.
    std::optional<std::size_t> find(const LocalElement& x) const;
};

/// All roots of φ_a in F to absolute precision N (default F.precision()),
/// by Newton polygon and digit-by-digit lifting. Throws CapabilityError when
/// φ_a is inseparable or some root does not lie in F (the message names the
/// ramification and residue degree that would be needed).
TorsionSet locate_torsion(const DrinfeldModule& phi, const Poly& a, std::shared_ptr<const LocalField> F,
                          std::optional<std::int64_t> N = std::nullopt);

/// Closure of the point set under addition and F_q-scaling within precision.
bool is_fq_subspace(const TorsionSet& set);

}  // namespace drinfeld
