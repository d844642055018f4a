#include "drinfeld/places.hpp"

#include "drinfeld/errors.hpp"
#include "drinfeld/sampling.hpp"

#include <algorithm>
#include <stdexcept>

namespace drinfeld {

Place Place::finite(const Poly& pi, Rational degree) {
    if (pi.degree() < 1 || !pi.leading().is_one()) throw std::invalid_argument("place needs a monic nonconstant prime");
    return Place(false, pi, degree);
}

Place Place::infinity(const GaloisField& k, Rational degree) {
    return Place(true, Poly::constant(k.one()), degree);
}

Place Place::with_degree(Rational d) const { return Place(infinite_, pi_, d); }

std::string Place::to_string(const std::string& var) const {
    if (infinite_) return "inf";
    return pi_.to_string(var);
}

bool operator<(const Place& a, const Place& b) {
    if (a.infinite_ != b.infinite_) return b.infinite_;
    if (a.infinite_) return false;
    return a.pi_ < b.pi_;
}

IntValuation valuation(const RationalFunction& x, const Place& v) {
    if (&x.field() != &v.constant_field())
        throw std::invalid_argument("valuation: element and place over different constant fields");
    return v.is_infinite() ? valuation_at_infinity(x) : valuation_at(x, v.prime());
}

Place ValuationSet::at(const Poly& pi) const {
    if (&pi.field() != k_) throw std::invalid_argument("place prime over the wrong constant field");
    if (!pi.leading().is_one() || !is_irreducible(pi))
        throw std::invalid_argument("place prime must be monic irreducible: " + pi.to_string());
    return Place::finite(pi, scale_ * Rational(pi.degree()));
}

std::vector<std::pair<Place, std::int64_t>> ValuationSet::support(const RationalFunction& x) const {
    if (x.is_zero()) throw std::invalid_argument("support of zero is not finite");
    std::vector<std::pair<Place, std::int64_t>> out;
    for (const auto& pf : factor(x.numerator()).factors)
        out.emplace_back(Place::finite(pf.factor, scale_ * Rational(pf.factor.degree())), pf.multiplicity);
    for (const auto& pf : factor(x.denominator()).factors)
        out.emplace_back(Place::finite(pf.factor, scale_ * Rational(pf.factor.degree())), -pf.multiplicity);
    const std::int64_t at_inf = valuation_at_infinity(x).value();
    if (at_inf != 0) out.emplace_back(infinity(), at_inf);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

std::vector<Place> ValuationSet::poles(const RationalFunction& x) const {
    std::vector<Place> out;
    if (x.is_zero()) return out;
    for (const auto& pf : factor(x.denominator()).factors)
        out.push_back(Place::finite(pf.factor, scale_ * Rational(pf.factor.degree())));
    if (x.numerator().degree() > x.denominator().degree()) out.push_back(infinity());
    std::sort(out.begin(), out.end());
    return out;
}

SumFormulaReport check_sum_formula(const RationalFunction& x, const ValuationSet& places) {
    if (x.is_zero()) throw std::invalid_argument("the sum formula is stated for nonzero elements");
    SumFormulaReport r;
    r.support = places.support(x);
    r.weighted_sum = 0;
    for (const auto& [v, n] : r.support) r.weighted_sum += v.degree() * Rational(n);
    return r;
}

RationalTower::RationalTower(const GaloisField& base_constants, const Poly& g) : k_(&base_constants), g_(g) {
    if (g_.degree() < 1) throw std::invalid_argument("tower structure polynomial must be nonconstant");
    const GaloisField& ext = g_.field();
    if (ext.characteristic() != k_->characteristic() || ext.degree() % k_->degree() != 0)
        throw std::invalid_argument(ext.name() + " does not contain " + k_->name());
}

RationalTower RationalTower::trivial(const GaloisField& k) { return RationalTower(k, Poly::variable(k)); }

RationalFunction RationalTower::map(const RationalFunction& x) const {
    if (&x.field() != k_) throw std::invalid_argument("tower map: element not in the base field");
    return x.substitute(RationalFunction(g_));
}

namespace {

// The largest residue field we build explicitly to cross-check f(w|v).
constexpr std::uint64_t kResidueFieldLimit = 1u << 16;

std::uint64_t field_size(std::uint32_t p, unsigned n) {
    std::uint64_t s = 1;
    for (unsigned i = 0; i < n; ++i) {
        s *= p;
        if (s > (1ull << 40)) break;
    }
    return s;
}

// Image of T in the residue field of w = (r) and its minimal polynomial over k.
std::optional<Poly> residue_prime_below(const RationalTower& tower, const Poly& r) {
    const GaloisField& ext = tower.extension_constants();
    const unsigned n = ext.degree() * static_cast<unsigned>(r.degree());
    if (field_size(ext.characteristic(), n) > kResidueFieldLimit) return std::nullopt;
    const GaloisField& residue = GaloisField::get(ext.characteristic(), n);
    auto rs = roots(r, residue);
    if (rs.empty()) throw InvariantViolation("irreducible factor has no root in its residue field");
    const Fq t_bar = tower.structure().evaluate(rs.front());
    return minimal_polynomial(t_bar, tower.base_constants());
}

}  // namespace

std::vector<PlaceLift> lift_places(const RationalTower& tower, const Place& v) {
    const GaloisField& k = tower.base_constants();
    const GaloisField& ext = tower.extension_constants();
    if (&v.constant_field() != &k) throw std::invalid_argument("lift_places: place not of the base field");
    const ValuationSet upstairs = tower.extension_places();
    const Rational big = Rational(static_cast<std::int64_t>(tower.degree()));
    std::vector<PlaceLift> out;
    if (v.is_infinite()) {
        const int e = tower.structure().degree();
        const int f = static_cast<int>(tower.constant_degree());
        out.push_back({upstairs.infinity().with_degree(Rational(f) * v.degree() / big), v, e, f});
    } else {
        const Poly lifted = v.prime().embed(ext).compose(tower.structure());
        for (const auto& pf : factor(lifted).factors) {
            const std::int64_t num = static_cast<std::int64_t>(ext.degree()) * pf.factor.degree();
            const std::int64_t den = static_cast<std::int64_t>(k.degree()) * v.prime().degree();
            if (num % den != 0) throw InvariantViolation("residue degree is not an integer for " + pf.factor.to_string("L"));
            const int f = static_cast<int>(num / den);
            if (auto below = residue_prime_below(tower, pf.factor); below && *below != v.prime())
                throw InvariantViolation("residue field of " + pf.factor.to_string("L") + " does not contain that of " +
                                         v.to_string());
            out.push_back({Place::finite(pf.factor, Rational(f) * v.degree() / big), v, pf.multiplicity, f});
        }
    }
    int sum = 0;
    for (const auto& l : out) sum += l.e * l.f;
    if (sum != static_cast<int>(tower.degree()))
        throw InvariantViolation("sum of e*f = " + std::to_string(sum) + " != [L:K] = " + std::to_string(tower.degree()) +
                                 " over " + v.to_string());
    return out;
}

Place place_below(const RationalTower& tower, const Place& w) {
    const ValuationSet down = tower.base_places();
    if (w.is_infinite()) return down.infinity();
    auto below = residue_prime_below(tower, w.prime());
    if (!below) throw CapabilityError("residue field of " + w.to_string("L") + " too large to construct");
    return down.at(*below);
}

CoherenceReport check_coherence(const RationalTower& tower, const Place& v, std::size_t samples, std::uint64_t seed) {
    CoherenceReport r;
    r.lifts = lift_places(tower, v);
    r.extension_degree = tower.degree();
    r.samples = samples;
    const ValuationSet upstairs = tower.extension_places();
    for (const auto& l : r.lifts) {
        r.sum_ef += l.e * l.f;
        if (l.w.degree() != upstairs.degree_of(l.w)) r.degrees_match = false;
    }
    Rng rng(seed);
    const GaloisField& k = tower.base_constants();
    const GaloisField& ext = tower.extension_constants();
    for (std::size_t s = 0; s < samples; ++s) {
        const RationalFunction x = random_nonzero_rational_function(k, 3, rng);
        const RationalFunction xl = tower.map(x);
        const IntValuation vx = valuation(x, v);
        for (const auto& l : r.lifts)
            if (valuation(xl, l.w) != IntValuation(l.e * vx.value())) r.valuations_scale = false;

        // U_L degrees recomputed independently through the place below each w.
        const RationalFunction y = random_nonzero_rational_function(ext, 3, rng);
        Rational sum = 0;
        for (const auto& [w, n] : upstairs.support(y)) {
            const Place below = place_below(tower, w);
            const auto lifts = lift_places(tower, below);
            auto it = std::find_if(lifts.begin(), lifts.end(), [&](const PlaceLift& pl) { return pl.w == w; });
            if (it == lifts.end()) throw InvariantViolation("place " + w.to_string("L") + " missing from its lifts");
            sum += it->w.degree() * Rational(n);
        }
        if (sum != Rational(0)) r.sum_formula_on_L = false;
    }
    return r;
}

}  // namespace drinfeld
