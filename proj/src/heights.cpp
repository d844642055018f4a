#include "drinfeld/heights.hpp"

#include "drinfeld/torsion.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

namespace drinfeld {
namespace {

std::uint64_t ipow(std::uint64_t q, std::size_t i) {
    std::uint64_t r = 1;
    for (std::size_t k = 0; k < i; ++k) r *= q;
    return r;
}

// Exact iteration stops once numerator plus denominator degree passes this.
constexpr int kDegreeCap = 6000;
constexpr std::int64_t kLocalDigits = 64;
// Iterates up to this degree stay exact so the periodic certificate can fire.
constexpr int kExactDegree = 500;

Rational R(std::uint64_t x) { return Rational(static_cast<std::int64_t>(x)); }

OrePolynomial lift_to(const OrePolynomial& f, const RationalTower& tower) {
    std::vector<RationalFunction> cs;
    for (const auto& c : f.coefficients()) cs.push_back(tower.map(c));
    return OrePolynomial(f.q_log(), std::move(cs));
}

std::string trace_string(const std::vector<IntValuation>& trace) {
    std::ostringstream os;
    for (std::size_t i = 0; i < trace.size(); ++i) os << (i ? ", " : "") << to_string(to_rational(trace[i]));
    return os.str();
}

void add_unique(std::vector<Place>& out, const std::vector<Place>& more) {
    for (const auto& p : more)
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
}

// Places where φ_a may have a nonzero gap: poles of a coefficient, zeros or poles of the top one.
std::vector<Place> bad_candidates(const OrePolynomial& phi_a, const ValuationSet& places) {
    std::vector<Place> out;
    for (const auto& c : phi_a.coefficients())
        if (!c.is_zero()) add_unique(out, places.poles(c));
    for (const auto& [p, val] : places.support(phi_a.coefficients().back())) add_unique(out, {p});
    std::sort(out.begin(), out.end());
    return out;
}

// Uniformizer of w as an element of L.
RationalFunction uniformizer(const Place& w, const GaloisField& k) {
    if (w.is_infinite()) return RationalFunction(Poly::variable(k)).inverse();
    return RationalFunction(w.prime());
}

// F_q-basis of a set of representatives of the residue field at w.
std::vector<RationalFunction> residue_basis(const Place& w, const GaloisField& k, const GaloisField& fq) {
    const unsigned m = k.degree() / fq.degree();
    std::vector<RationalFunction> out;
    for (unsigned s = 0; s < m; ++s)
        for (unsigned t = 0; t < w.residue_degree(); ++t)
            out.emplace_back(Poly::monomial(k.primitive().pow(s), t));
    return out;
}

// Whether φ_a maps the ball {w >= k} into itself. The ball is the sum of the
// layers c·π^j (c a residue representative, k <= j < K) and the ball {w >= K},
// where K is chosen so that every term of φ_a already lands in {w >= k}. By
// F_q-linearity it suffices to test an F_q-basis of each layer.
bool ball_is_invariant(const OrePolynomial& phi_L, const PlaceDynamics& d, const GaloisField& fq, std::int64_t k) {
    const std::uint64_t q = fq.order();
    auto deep_enough = [&](std::int64_t K) {
        std::uint64_t qi = 1;
        for (std::size_t i = 0; i < d.c.size(); ++i, qi *= q) {
            if (d.c[i].is_infinite()) continue;
            if (d.c[i].value() + static_cast<std::int64_t>(qi) * K < k) return false;
        }
        return true;
    };
    std::int64_t K = k;
    while (!deep_enough(K)) {
        if (++K > k + 64) return false;
    }
    const GaloisField& kL = phi_L.field();
    const RationalFunction pi = uniformizer(d.w, kL);
    const std::vector<RationalFunction> basis = residue_basis(d.w, kL, fq);
    for (std::int64_t j = k; j < K; ++j) {
        const RationalFunction layer = pi.pow(j);
        for (const auto& b : basis) {
            const RationalFunction image = phi_L.apply(b * layer);
            if (!image.is_zero() && valuation(image, d.w).value() < k) return false;
        }
    }
    return true;
}

// Whether y = c·z for some earlier iterate z and c in F_q^*, so the orbit is finite.
// w(φ_a(y)) when a single term c_i + q^i·w(y) attains the minimum.
std::optional<std::int64_t> dominant_valuation(const PlaceDynamics& d, std::uint64_t q, std::int64_t wy) {
    std::optional<std::int64_t> best;
    bool unique = false;
    std::int64_t qi = 1;
    for (const auto& c : d.c) {
        if (!c.is_infinite()) {
            const std::int64_t t = c.value() + qi * wy;
            if (!best || t < *best) {
                best = t;
                unique = true;
            } else if (t == *best) {
                unique = false;
            }
        }
        qi *= static_cast<std::int64_t>(q);
    }
    return unique ? best : std::nullopt;
}

bool repeats(const std::vector<RationalFunction>& seen, const RationalFunction& y, const GaloisField& fq) {
    for (const auto& z : seen)
        for (const Fq& c : fq.elements())
            if (!c.is_zero() && RationalFunction::constant(embed(c, y.field())) * z == y) return true;
    return false;
}

}  // namespace

Rational local_height(const RationalFunction& x, const Place& w) {
    const IntValuation v = valuation(x, w);
    if (v.is_infinite() || v.value() >= 0) return Rational(0);
    return -w.degree() * Rational(v.value());
}

Rational global_height(const RationalFunction& x, const ValuationSet& places) {
    if (x.is_zero()) return Rational(0);
    Rational h(0);
    for (const auto& w : places.poles(x)) h += local_height(x, w);
    return h;
}

Rational global_height(const std::vector<RationalFunction>& point, const ValuationSet& places) {
    std::vector<Place> candidates;
    for (const auto& x : point)
        if (!x.is_zero()) add_unique(candidates, places.poles(x));
    std::sort(candidates.begin(), candidates.end());
    Rational h(0);
    for (const auto& w : candidates) {
        Rational best(0);
        for (const auto& x : point) best = std::max(best, local_height(x, w));
        h += best;
    }
    return h;
}

PlaceDynamics place_dynamics(const OrePolynomial& phi_a, const RationalTower& tower, const Place& w) {
    PlaceDynamics d{.w = w};
    const std::size_t Rk = static_cast<std::size_t>(phi_a.degree());
    const std::uint64_t q = ipow(phi_a.field().characteristic(), phi_a.q_log());
    d.q_R = ipow(q, Rk);
    for (std::size_t i = 0; i <= Rk; ++i)
        d.c.push_back(phi_a[i].is_zero() ? IntValuation::infinity() : valuation(tower.map(phi_a[i]), w));
    const Rational cR(d.c[Rk].value());
    d.dominance = RatValuation::infinity();
    for (std::size_t i = 0; i < Rk; ++i) {
        if (d.c[i].is_infinite()) continue;
        const Rational di = (cR - Rational(d.c[i].value())) / (R(ipow(q, i)) - R(d.q_R));
        if (d.dominance.is_infinite() || di < d.dominance.value()) d.dominance = di;
    }
    const Rational stable = -cR / R(d.q_R - 1);
    d.escape = d.dominance.is_infinite() ? stable : std::min(d.dominance.value(), stable);
    if (d.c[0].is_infinite() || d.c[0].value() >= 0) {
        std::optional<Rational> g;
        for (std::size_t i = 1; i <= Rk; ++i) {
            if (d.c[i].is_infinite()) continue;
            const Rational gi = -Rational(d.c[i].value()) / R(ipow(q, i) - 1);
            g = g ? std::max(*g, gi) : gi;
        }
        d.trap = g;
    }
    d.bad = cR != Rational(0);
    for (const auto& ci : d.c)
        if (!ci.is_infinite() && ci.value() < 0) d.bad = true;
    if (d.bad) {
        std::optional<Rational> B;
        for (std::size_t i = 0; i <= Rk; ++i) {
            if (d.c[i].is_infinite()) continue;
            const Rational bi = Rational(d.c[i].value()) + R(ipow(q, i)) * d.escape;
            B = B ? std::min(*B, bi) : bi;
        }
        const Rational beta = (*B - stable) / R(d.q_R);
        d.gap = std::max({abs(stable), -std::min(d.escape, Rational(0)), -std::min(Rational(0), beta)});
    }
    return d;
}

LocalCanonicalHeight canonical_local_height(const DrinfeldModule& phi, const RationalFunction& x, const Place& w,
                                            const RationalTower& tower, const Poly& a, std::size_t max_iter) {
    const OrePolynomial phi_a = phi.image(a);
    if (phi_a.degree() < 1) throw std::invalid_argument("canonical height needs a non-constant a");
    LocalCanonicalHeight out{.w = w, .dynamics = place_dynamics(phi_a, tower, w)};
    const PlaceDynamics& d = out.dynamics;
    const OrePolynomial phi_L = lift_to(phi_a, tower);
    const Rational stable = -Rational(d.c.back().value()) / R(d.q_R - 1);
    const std::int64_t lowest_ball = ceil(d.escape);
    std::map<std::int64_t, bool> invariant;
    std::vector<RationalFunction> seen;
    // y_n is kept exact only when needed: while one term of φ_a strictly
    // dominates, w(y_{n+1}) follows from w(y_n) alone.
    std::optional<RationalFunction> y = x;
    RationalFunction exact = x;
    std::size_t exact_step = 0;
    std::int64_t wy = 0;
    Rational scale(1);
    // Shadow of y_n in the completion at w, used to read off w(y_{n+1}) at ties.
    std::shared_ptr<const LocalField> F;
    std::vector<LocalElement> local_coeffs;
    std::optional<LocalElement> loc;
    auto materialize = [&](std::size_t n) {
        while (exact_step < n) {
            if (exact.numerator().degree() + exact.denominator().degree() > kDegreeCap) {
                throw IndeterminateError("canonical local height at " + w.to_string() +
                                             " undecided: iterate degree exceeds " + std::to_string(kDegreeCap) +
                                             " after " + std::to_string(exact_step) + " steps",
                                         "w(y_n) = " + trace_string(out.trace));
            }
            exact = phi_L.apply(exact);
            ++exact_step;
        }
        return exact;
    };
    for (std::size_t n = 0; n <= max_iter; ++n) {
        out.step = n;
        if (y) {
            if (y->is_zero()) {
                out.trace.push_back(IntValuation::infinity());
                out.decision = LocalCanonicalHeight::Decision::Zero;
                out.V = 0;
                out.height = 0;
                return out;
            }
            wy = valuation(*y, w).value();
        }
        out.trace.push_back(wy);
        if (Rational(wy) < d.escape) {
            out.decision = LocalCanonicalHeight::Decision::Escape;
            out.V = (Rational(wy) - stable) / scale;
            out.height = -w.degree() * out.V;
            return out;
        }
        if (d.trap && Rational(wy) >= *d.trap) {
            out.decision = LocalCanonicalHeight::Decision::Trap;
            out.V = 0;
            out.height = 0;
            return out;
        }
        for (std::int64_t k = lowest_ball; k <= std::min(wy, lowest_ball + 3); ++k) {
            auto it = invariant.find(k);
            if (it == invariant.end()) it = invariant.emplace(k, ball_is_invariant(phi_L, d, phi.fq(), k)).first;
            if (it->second) {
                out.decision = LocalCanonicalHeight::Decision::Trap;
                out.invariant_ball = k;
                out.V = 0;
                out.height = 0;
                return out;
            }
        }
        if (y) {
            if (repeats(seen, *y, phi.fq())) {
                out.decision = LocalCanonicalHeight::Decision::Periodic;
                out.V = 0;
                out.height = 0;
                return out;
            }
            seen.push_back(*y);
        }
        if (n == max_iter) break;
        if (y && y->numerator().degree() + y->denominator().degree() <= kExactDegree) {
            y = materialize(n + 1);
            scale *= R(d.q_R);
            continue;
        }
        const auto next = dominant_valuation(d, phi.q(), wy);
        if (!F) {
            F = LocalField::create(w, tower.extension_constants(), w.residue_degree(), 1, std::nullopt, kLocalDigits);
            for (const auto& c : phi_L.coefficients()) local_coeffs.push_back(F->embed(c, kLocalDigits));
        }
        if (y || loc) {
            try {
                const LocalElement base = y ? F->embed(*y, kLocalDigits) : *loc;
                LocalElement acc = F->zero();
                std::uint64_t qi = 1;
                for (const auto& c : local_coeffs) {
                    if (!c.is_zero()) acc = acc + c * base.pow(qi);
                    qi *= phi.q();
                }
                loc = acc;
            } catch (const PrecisionError&) {
                loc.reset();
            }
        }
        if (next) {
            y.reset();
            wy = *next;
        } else if (loc && !loc->indistinguishable_from_zero()) {
            y.reset();
            wy = loc->valuation().value().numerator();
        } else {
            y = materialize(n + 1);
            loc.reset();
        }
        scale *= R(d.q_R);
    }
    throw IndeterminateError("canonical local height at " + w.to_string() + " undecided after " +
                                 std::to_string(out.step) + " iterations",
                             "w(y_n) = " + trace_string(out.trace));
}

LocalCanonicalHeight canonical_local_height(const DrinfeldModule& phi, const RationalFunction& x, const Place& w,
                                            std::size_t max_iter) {
    return canonical_local_height(phi, x, w, RationalTower::trivial(phi.constant_field()), Poly::variable(phi.fq()),
                                  max_iter);
}

CanonicalHeight canonical_global_height(const DrinfeldModule& phi, const RationalFunction& x, const RationalTower& tower,
                                        const Poly& a, std::size_t max_iter, std::size_t cross_iterations) {
    CanonicalHeight out{.value = 0, .a = a};
    out.C0 = height_gap_bound(phi, a).C0;
    if (x.is_zero()) return out;
    const OrePolynomial phi_a = phi.image(a);
    const OrePolynomial phi_L = lift_to(phi_a, tower);
    const ValuationSet places = tower.extension_places();
    std::vector<Place> candidates = places.poles(x);
    add_unique(candidates, bad_candidates(phi_L, places));
    std::sort(candidates.begin(), candidates.end());
    for (const auto& w : candidates) {
        out.local.push_back(canonical_local_height(phi, x, w, tower, a, max_iter));
        out.value += out.local.back().height;
    }
    const Rational qR = R(ipow(ipow(phi.fq().characteristic(), phi.q_log()), static_cast<std::size_t>(phi_a.degree())));
    RationalFunction y = x;
    Rational scale(1);
    for (std::size_t n = 1; n <= cross_iterations; ++n) {
        y = phi_L.apply(y);
        scale *= qR;
        const Rational est = global_height(y, places) / scale;
        out.iterates.emplace_back(n, est);
        if (abs(out.value - est) > out.C0 / scale) out.cross_check = false;
    }
    return out;
}

CanonicalHeight canonical_global_height(const DrinfeldModule& phi, const RationalFunction& x, std::size_t max_iter,
                                        std::size_t cross_iterations) {
    return canonical_global_height(phi, x, RationalTower::trivial(phi.constant_field()), Poly::variable(phi.fq()),
                                   max_iter, cross_iterations);
}

Rational canonical_global_height(const DrinfeldModule& phi, const std::vector<RationalFunction>& point,
                                 const RationalTower& tower, std::size_t max_iter) {
    const Poly a = Poly::variable(phi.fq());
    const ValuationSet places = tower.extension_places();
    std::vector<Place> candidates = bad_candidates(lift_to(phi.image(a), tower), places);
    for (const auto& x : point)
        if (!x.is_zero()) add_unique(candidates, places.poles(x));
    std::sort(candidates.begin(), candidates.end());
    Rational total(0);
    for (const auto& w : candidates) {
        Rational best(0);
        for (const auto& x : point) best = std::max(best, canonical_local_height(phi, x, w, tower, a, max_iter).height);
        total += best;
    }
    return total;
}

HeightGapBound height_gap_bound(const DrinfeldModule& phi, const std::optional<Poly>& a_opt) {
    HeightGapBound out{.C0 = 0, .a = a_opt.value_or(Poly::variable(phi.fq()))};
    const OrePolynomial phi_a = phi.image(out.a);
    if (phi_a.degree() < 1) throw std::invalid_argument("height gap bound needs a non-constant a");
    const RationalTower trivial = RationalTower::trivial(phi.constant_field());
    const ValuationSet places(phi.constant_field());
    for (const auto& v : bad_candidates(phi_a, places)) {
        PlaceDynamics d = place_dynamics(phi_a, trivial, v);
        if (!d.bad) continue;
        out.C0 += v.degree() * d.gap;
        out.bad_places.push_back(std::move(d));
    }
    return out;
}

Rational poly_height_bound(const MultiPoly& f, const Rational& C0, const ValuationSet& places) {
    Rational total(0);
    for (const auto& [e, c] : f.terms()) {
        std::int64_t deg = 0;
        for (auto x : e) deg += x;
        total += global_height(c, places) + Rational(deg) * C0;
    }
    return total;
}

TorsionFloor torsion_valuation_floor(const DrinfeldModule& phi, const Place& v) {
    const Poly t = choose_t(phi, v);
    PlaceDynamics d = place_dynamics(phi.image(t), RationalTower::trivial(phi.constant_field()), v);
    const Rational M = std::min(Rational(0), d.escape);
    return TorsionFloor{.v = v, .t = t, .dynamics = std::move(d), .M_v = M};
}

}  // namespace drinfeld
