#pragma once

#include "drinfeld/rational_function.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace drinfeld {

/// A place of k(T): the zero of a monic irreducible π(T), or infinity,
/// together with its assigned degree d(v).
class Place {
public:
    static Place finite(const Poly& pi, Rational degree);
    static Place infinity(const GaloisField& k, Rational degree);

    bool is_infinite() const { return infinite_; }
    /// π_v; requires !is_infinite().
    const Poly& prime() const { return pi_; }
    const GaloisField& constant_field() const { return pi_.field(); }
    Rational degree() const { return degree_; }
    /// Degree of the residue field over the constant field.
    unsigned residue_degree() const { return infinite_ ? 1u : static_cast<unsigned>(pi_.degree()); }

    /// The place with a different degree assignment.
    Place with_degree(Rational d) const;

    std::string to_string(const std::string& var = "T") const;

    /// Identity ignores the degree assignment.
    friend bool operator==(const Place& a, const Place& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.pi_ == b.pi_) && &a.constant_field() == &b.constant_field();
    }
    friend bool operator!=(const Place& a, const Place& b) { return !(a == b); }
    /// Finite places by prime, infinity last.
    friend bool operator<(const Place& a, const Place& b);

private:
    Place(bool infinite, Poly pi, Rational degree) : infinite_(infinite), pi_(std::move(pi)), degree_(degree) {}

    bool infinite_;
    Poly pi_;  // for infinity: the polynomial 1 (kept to carry the field)
    Rational degree_;
};

/// Normalized valuation with value group Z; +∞ at zero.
IntValuation valuation(const RationalFunction& x, const Place& v);

/// The standard set of places of k(T) with d(v_π) = s·deg π and d(∞) = s for
/// a scale s (s = 1 for the base field; rational towers use s = 1/deg g).
class ValuationSet {
public:
    explicit ValuationSet(const GaloisField& k, Rational scale = 1) : k_(&k), scale_(scale) {}

    const GaloisField& constant_field() const { return *k_; }
    Rational scale() const { return scale_; }

    /// Throws std::invalid_argument unless pi is monic irreducible over k.
    Place at(const Poly& pi) const;
    Place infinity() const { return Place::infinity(*k_, scale_); }
    Rational degree_of(const Place& v) const { return scale_ * Rational(v.residue_degree()); }

    /// Places with v(x) != 0, sorted; x nonzero.
    std::vector<std::pair<Place, std::int64_t>> support(const RationalFunction& x) const;
    /// Places with v(x) < 0, sorted.
    std::vector<Place> poles(const RationalFunction& x) const;

private:
    const GaloisField* k_;
    Rational scale_;
};

struct SumFormulaReport {
    std::vector<std::pair<Place, std::int64_t>> support;
    Rational weighted_sum;  // Σ d(v)·v(x)
    bool holds() const { return weighted_sum == Rational(0); }
};

/// Σ_v d(v)·v(x) over the finite support. Throws std::invalid_argument for x = 0.
SumFormulaReport check_sum_formula(const RationalFunction& x, const ValuationSet& places);

/// L = k'(λ) over K = k(T) with T = g(λ), k ⊆ k', g nonconstant.
class RationalTower {
public:
    RationalTower(const GaloisField& base_constants, const Poly& g);
    /// L = K.
    static RationalTower trivial(const GaloisField& k);

    const GaloisField& base_constants() const { return *k_; }
    const GaloisField& extension_constants() const { return g_.field(); }
    const Poly& structure() const { return g_; }
    /// [k' : k].
    unsigned constant_degree() const { return g_.field().degree() / k_->degree(); }
    /// [L : K] = [k' : k]·deg g.
    unsigned degree() const { return constant_degree() * static_cast<unsigned>(g_.degree()); }

    /// The inclusion K -> L.
    RationalFunction map(const RationalFunction& x) const;

    ValuationSet base_places() const { return ValuationSet(*k_); }
    /// U_L with d(w) = f(w|v)·d(v)/[L:K]; for rational towers this is the
    /// standard set of L scaled by 1/deg g.
    ValuationSet extension_places() const { return ValuationSet(g_.field(), Rational(1, g_.degree())); }

private:
    const GaloisField* k_;
    Poly g_;
};

struct PlaceLift {
    Place w;  // place of L, degree d(w)
    Place v;  // place of K below
    int e;    // ramification index
    int f;    // residue degree
};

/// All places of L above v with e, f, d(w). Throws InvariantViolation if
/// Σ e·f != [L:K] or a residue-field check fails.
std::vector<PlaceLift> lift_places(const RationalTower& tower, const Place& v);

/// The place of K below the place w of L.
Place place_below(const RationalTower& tower, const Place& w);

struct CoherenceReport {
    std::vector<PlaceLift> lifts;
    int sum_ef = 0;
    unsigned extension_degree = 0;
    bool degrees_match = true;        // d(w) = f·d(v)/[L:K] agrees with U_L's assignment
    bool valuations_scale = true;     // w(x) = e·v(x) on sampled x ∈ K
    bool sum_formula_on_L = true;     // Σ d(w)w(y) = 0 on sampled y ∈ L
    std::size_t samples = 0;
    bool holds() const {
        return sum_ef == static_cast<int>(extension_degree) && degrees_match && valuations_scale && sum_formula_on_L;
    }
};

CoherenceReport check_coherence(const RationalTower& tower, const Place& v, std::size_t samples = 20,
                                std::uint64_t seed = 1);

}  // namespace drinfeld
