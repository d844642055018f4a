#pragma once

#include "drinfeld/heights.hpp"
#include "drinfeld/multipoly.hpp"
#include "drinfeld/sampling.hpp"
#include "drinfeld/torsion.hpp"

#include <optional>
#include <string>
#include <vector>

namespace drinfeld {

/// X ⊆ G_a^g given by generators of its vanishing ideal, coefficients in L.
struct AffineVariety {
    std::size_t g = 1;
    std::vector<MultiPoly> generators{};

    std::string to_string(const std::string& var = "T") const;
};

/// λ_w(P, X) = min_i w(f_i(P)) over the stored generators; +∞ iff P ∈ X.
/// Throws std::invalid_argument if a generator coefficient is not w-integral.
IntValuation distance(const std::vector<RationalFunction>& P, const AffineVariety& X, const Place& w);

/// max_i C(f_i)/d(v), heights of coefficients taken over `places`.
Rational tv_constant(const AffineVariety& X, const Place& v, const Rational& C0, const ValuationSet& places);

struct PointVerdict {
    std::string point;
    bool on_variety = false;
    bool pass = false;
    std::optional<Place> witness{};
    RatValuation lambda{};  // at the witness (or the closest place)
    Rational bound{};       // the right-hand side the witness is compared with
    std::vector<std::string> notes{};
};

struct TheoremReport {
    std::string theorem;
    std::vector<std::pair<std::string, Rational>> constants{};
    std::vector<PointVerdict> verdicts{};
    std::vector<std::string> notes{};
    bool pass = true;
};

/// Finds a ∈ F_q[T] (from `candidates`, else monic of degree <= 3) with
/// φ_a(x) = 0 exactly in L.
std::optional<Poly> torsion_annihilator(const DrinfeldModule& phi, const RationalFunction& x, const RationalTower& tower,
                                        const std::vector<Poly>& candidates = {});

/// Either P ∈ X or some w | v has λ_w(P, X) <= C·e(w|v). Every coordinate of
/// every point must be certified torsion; otherwise std::invalid_argument.
TheoremReport verify_tv(const DrinfeldModule& phi, const AffineVariety& X, const Place& v,
                        const std::vector<std::vector<RationalFunction>>& points, const RationalTower& tower,
                        const std::vector<Poly>& annihilators = {});

/// Q = (y_1..y_g) in a local field with β_i = max(0, -v(y_i)).
struct TargetPoint {
    std::vector<LocalElement> y;
    std::vector<Rational> beta{};

    explicit TargetPoint(std::vector<LocalElement> coords);
};

/// λ_v(P, Q) = min_i (β_i + v(x_i - y_i)); +∞ when P and Q agree to precision.
RatValuation mattuck_distance(const std::vector<LocalElement>& P, const TargetPoint& Q);

struct MattuckBound {
    enum class Case { BelowFloor, Generic, Exceptional };
    Case which = Case::Generic;
    Rational M_v{};
    std::int64_t C_v = 1;
    Rational C{};
    std::optional<std::vector<LocalElement>> exceptional{};  // P*
    RatValuation exceptional_distance{};
    std::string trace;
};

/// The constant C with: every torsion P either equals Q or has λ_v(P, Q) < C.
/// `torsion` lists the located torsion used to search the balls around Q.
MattuckBound mattuck_bound(const DrinfeldModule& phi, const Place& v, const TargetPoint& Q,
                           const std::vector<TorsionSet>& torsion);

/// Enumerates (∪ levels)^g and checks the Mattuck disjunction and the ball count.
TheoremReport verify_mattuck(const DrinfeldModule& phi, const Place& v, const TargetPoint& Q,
                             const std::vector<Poly>& levels, std::shared_ptr<const LocalField> F,
                             std::optional<std::int64_t> N = std::nullopt);

struct AccumulationRow {
    unsigned n;
    Rational max_valuation;  // max v_∞ over nonzero φ[T^n]
    std::string polygon;
};

struct AccumulationReport {
    std::vector<AccumulationRow> rows{};
    bool strictly_increasing = true;
};

/// Newton polygons of φ_{T^n} at ∞ for n = 1..n_max. Throws
/// std::invalid_argument for modules of finite characteristic.
AccumulationReport infinity_accumulation(const DrinfeldModule& phi, unsigned n_max);

/// A rank-1 module over F_q(T) with explicit torsion in a Kummer tower:
/// T = κλ^(q-1) - α, φ_T = T + γτ, φ[T + α] = F_q·x.
struct KummerInstance {
    DrinfeldModule phi;
    RationalTower tower;
    Poly level;
    RationalFunction generator;             // x
    std::vector<RationalFunction> torsion;  // F_q·x
    Place v;                                 // the ramified place T + α
};

KummerInstance random_kummer_instance(const GaloisField& fq, Rng& rng);

struct TvSuiteResult {
    std::size_t instances = 0;
    std::size_t points = 0;
    std::size_t on_variety = 0;
    std::vector<std::string> failures{};
};

/// Runs verify_tv on random varieties (1 to 3 generators in G_a^g, g <= 2)
/// against every tuple of explicit torsion: Kummer instances for q in {2, 3}
/// and the Carlitz module with T = 2λ^2.
TvSuiteResult random_tv_suite(std::size_t instances, Rng& rng);

}  // namespace drinfeld
