#pragma once

#include "drinfeld/drinfeld_module.hpp"
#include "drinfeld/multipoly.hpp"
#include "drinfeld/places.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace drinfeld {

/// h_w(x) = -d(w)·min(w(x), 0).
Rational local_height(const RationalFunction& x, const Place& w);
/// Σ_w h_w(x) over the places of `places` (the field of x).
Rational global_height(const RationalFunction& x, const ValuationSet& places);
/// Σ_w max_i h_w(x_i).
Rational global_height(const std::vector<RationalFunction>& point, const ValuationSet& places);

/// Valuation data of φ_a at one place: c_i = w(a_i) and the derived thresholds.
struct PlaceDynamics {
    Place w;
    std::vector<IntValuation> c{};  // c_0..c_R
    std::uint64_t q_R = 1;        // q^R, the degree of φ_a
    /// D = min_{i<R} (c_R - c_i)/(q^i - q^R): below it the top term dominates.
    RatValuation dominance{};
    /// E = min(D, -c_R/(q^R - 1)): below it valuations strictly decrease.
    Rational escape{};
    /// G = max_{i>=1} -c_i/(q^i - 1) when c_0 >= 0: a forward-invariant floor.
    std::optional<Rational> trap{};
    /// Bound on |V_w(x) - min(w(x), 0)| over all x.
    Rational gap{};
    bool bad = false;  // some c_i < 0 or c_R != 0
};

/// φ_a data at w; the coefficients are taken through the tower inclusion.
PlaceDynamics place_dynamics(const OrePolynomial& phi_a, const RationalTower& tower, const Place& w);

struct LocalCanonicalHeight {
    /// Escape: closed form after w(y_n) < E. Trap: y_n lies in a forward-invariant
    /// ball. Zero: some y_n = 0. Periodic: y_n = c·y_m with c in F_q^*, m < n.
    enum class Decision { Escape, Trap, Zero, Periodic };
    Place w;
    Rational V{};       // lim min(w(y_n), 0)/q^(Rn)
    Rational height{};  // -d(w)·V
    Decision decision = Decision::Zero;
    std::size_t step = 0;
    /// k when the trap is the invariant ball {w >= k} rather than the threshold G.
    std::optional<std::int64_t> invariant_ball{};
    std::vector<IntValuation> trace{};  // w(y_0), ..., w(y_step)
    PlaceDynamics dynamics{.w = w};
};

struct CanonicalHeight {
    Rational value;
    Poly a;
    std::vector<LocalCanonicalHeight> local{};  // candidate places, sorted
    Rational C0{};
    /// (n, h(φ_{a^n}(x))/q^(Rn)) for the iterations run.
    std::vector<std::pair<std::size_t, Rational>> iterates{};
    bool cross_check = true;  // |ĥ - h(y_n)/q^(Rn)| <= C_0/q^(Rn) for each n
};

/// V_w and ĥ_w for x in L = tower's extension field. Throws
/// IndeterminateError (with the valuation trace) if undecided after max_iter.
LocalCanonicalHeight canonical_local_height(const DrinfeldModule& phi, const RationalFunction& x, const Place& w,
                                            const RationalTower& tower, const Poly& a, std::size_t max_iter = 64);
LocalCanonicalHeight canonical_local_height(const DrinfeldModule& phi, const RationalFunction& x, const Place& w,
                                            std::size_t max_iter = 64);

/// ĥ(x) = Σ_w ĥ_w(x) over poles of x and bad places of φ_a, cross-checked
/// against h(φ_{a^n}(x))/q^(Rn) for n = 1..cross_iterations.
CanonicalHeight canonical_global_height(const DrinfeldModule& phi, const RationalFunction& x, const RationalTower& tower,
                                        const Poly& a, std::size_t max_iter = 64, std::size_t cross_iterations = 2);
CanonicalHeight canonical_global_height(const DrinfeldModule& phi, const RationalFunction& x,
                                        std::size_t max_iter = 64, std::size_t cross_iterations = 2);
/// Σ_w max_i ĥ_w(x_i).
Rational canonical_global_height(const DrinfeldModule& phi, const std::vector<RationalFunction>& point,
                                 const RationalTower& tower, std::size_t max_iter = 64);

struct HeightGapBound {
    Rational C0;
    Poly a;
    std::vector<PlaceDynamics> bad_places{};  // each contributes d(v)·gap
};

/// |h(x) - ĥ(x)| <= C_0 for every x in every rational tower over K.
HeightGapBound height_gap_bound(const DrinfeldModule& phi, const std::optional<Poly>& a = std::nullopt);

/// C(f) = Σ_monomials (h(c) + |α|·C_0), heights over `places`.
Rational poly_height_bound(const MultiPoly& f, const Rational& C0, const ValuationSet& places);

struct TorsionFloor {
    Place v;
    Poly t;
    PlaceDynamics dynamics{.w = v};  // of φ_t at v
    Rational M_v{};            // min(0, E)
};

/// M_v <= 0 with v(x) >= M_v for every torsion x. Throws HypothesisError in
/// generic characteristic when v lies over the infinite place.
TorsionFloor torsion_valuation_floor(const DrinfeldModule& phi, const Place& v);

}  // namespace drinfeld
