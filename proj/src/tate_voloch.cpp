#include "drinfeld/tate_voloch.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace drinfeld {
namespace {

const char* kLambda = "λ";

std::string point_string(const std::vector<RationalFunction>& P) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < P.size(); ++i) os << (i ? ", " : "") << P[i].to_string(kLambda);
    os << ")";
    return os.str();
}

std::string point_string(const std::vector<LocalElement>& P) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < P.size(); ++i) os << (i ? ", " : "") << P[i].to_string(4);
    os << ")";
    return os.str();
}

bool in_ball(const LocalElement& z, const LocalElement& center, std::int64_t radius) {
    const LocalElement d = z - center;
    return d.indistinguishable_from_zero() || d.valuation().value() >= Rational(radius);
}

// Distinct points of all sets, in order of first appearance.
std::vector<LocalElement> merge_points(const std::vector<TorsionSet>& sets) {
    std::vector<LocalElement> out;
    for (const auto& s : sets)
        for (const auto& x : s.points)
            if (std::none_of(out.begin(), out.end(), [&](const LocalElement& y) { return y.congruent(x); }))
                out.push_back(x);
    return out;
}

template <class Fn>
void for_each_tuple(const std::vector<LocalElement>& pts, std::size_t g, Fn&& fn) {
    if (pts.empty()) return;
    std::vector<std::size_t> idx(g, 0);
    std::vector<LocalElement> P(g, pts.front());
    while (true) {
        for (std::size_t i = 0; i < g; ++i) P[i] = pts[idx[i]];
        fn(P);
        std::size_t i = 0;
        while (i < g && ++idx[i] == pts.size()) idx[i++] = 0;
        if (i == g) return;
    }
}

}  // namespace

std::string AffineVariety::to_string(const std::string& var) const {
    std::ostringstream os;
    os << "V(";
    for (std::size_t i = 0; i < generators.size(); ++i) os << (i ? ", " : "") << generators[i].to_string(var);
    os << ") in G_a^" << g;
    return os.str();
}

IntValuation distance(const std::vector<RationalFunction>& P, const AffineVariety& X, const Place& w) {
    IntValuation best = IntValuation::infinity();
    for (const auto& f : X.generators) {
        for (const auto& [e, c] : f.terms()) {
            if (valuation(c, w) < IntValuation(0))
                throw std::invalid_argument("generator coefficient " + c.to_string(kLambda) + " is not integral at " +
                                            w.to_string(kLambda));
        }
        best = std::min(best, valuation(f.evaluate(P), w));
    }
    return best;
}

Rational tv_constant(const AffineVariety& X, const Place& v, const Rational& C0, const ValuationSet& places) {
    Rational best(0);
    for (const auto& f : X.generators) best = std::max(best, poly_height_bound(f, C0, places));
    return best / v.degree();
}

std::optional<Poly> torsion_annihilator(const DrinfeldModule& phi, const RationalFunction& x, const RationalTower& tower,
                                        const std::vector<Poly>& candidates) {
    const GaloisField& fq = phi.fq();
    if (x.is_zero()) return Poly::constant(fq.one());
    std::vector<RationalFunction> coeffs;
    for (const auto& c : phi.phi_T().coefficients()) coeffs.push_back(tower.map(c));
    const OrePolynomial phi_T(phi.q_log(), std::move(coeffs));
    auto annihilates = [&](const Poly& a, std::vector<RationalFunction>& iterates) {
        while (iterates.size() <= static_cast<std::size_t>(a.degree())) iterates.push_back(phi_T.apply(iterates.back()));
        RationalFunction acc(x.field());
        for (int j = 0; j <= a.degree(); ++j)
            if (!a[j].is_zero()) acc = acc + RationalFunction::constant(embed(a[j], x.field())) * iterates[j];
        return acc.is_zero();
    };
    std::vector<RationalFunction> iterates{x};
    for (const auto& a : candidates)
        if (!a.is_zero() && annihilates(a, iterates)) return a;
    for (int d = 1; d <= 2; ++d) {
        std::uint64_t count = 1;
        for (int i = 0; i < d; ++i) count *= fq.order();
        for (std::uint64_t code = 0; code < count; ++code) {
            std::vector<Fq> cs;
            std::uint64_t c = code;
            for (int i = 0; i < d; ++i, c /= fq.order()) cs.push_back(fq.element(static_cast<std::uint32_t>(c % fq.order())));
            cs.push_back(fq.one());
            const Poly a(fq, cs);
            if (annihilates(a, iterates)) return a;
        }
    }
    return std::nullopt;
}

TheoremReport verify_tv(const DrinfeldModule& phi, const AffineVariety& X, const Place& v,
                        const std::vector<std::vector<RationalFunction>>& points, const RationalTower& tower,
                        const std::vector<Poly>& annihilators) {
    TheoremReport rep{.theorem = "tate-voloch"};
    if (X.generators.empty()) throw std::invalid_argument("variety needs at least one generator");
    const ValuationSet places = tower.extension_places();
    const Rational C0 = height_gap_bound(phi).C0;
    const Rational C = tv_constant(X, v, C0, places);
    rep.constants.emplace_back("C_0", C0);
    std::vector<Rational> Cf;
    for (std::size_t i = 0; i < X.generators.size(); ++i) {
        Cf.push_back(poly_height_bound(X.generators[i], C0, places));
        rep.constants.emplace_back("C(f_" + std::to_string(i + 1) + ")", Cf.back());
    }
    rep.constants.emplace_back("C", C);
    rep.notes.push_back("λ_w is computed over the stored generators, an upper bound for the minimum over the ideal");
    const std::vector<PlaceLift> lifts = lift_places(tower, v);

    for (const auto& P : points) {
        if (P.size() != X.g) throw std::invalid_argument("point dimension does not match the variety");
        PointVerdict pv{.point = point_string(P)};
        for (const auto& x : P) {
            const auto a = torsion_annihilator(phi, x, tower, annihilators);
            if (!a) throw std::invalid_argument("coordinate " + x.to_string(kLambda) + " is not certified torsion");
            pv.notes.push_back("φ_{" + a->to_string() + "} kills " + x.to_string(kLambda));
        }
        std::vector<RationalFunction> values;
        for (const auto& f : X.generators) values.push_back(f.evaluate(P));
        pv.on_variety = std::all_of(values.begin(), values.end(), [](const RationalFunction& y) { return y.is_zero(); });
        if (pv.on_variety) {
            pv.pass = true;
            pv.lambda = RatValuation::infinity();
            rep.verdicts.push_back(std::move(pv));
            continue;
        }
        std::optional<Rational> best_margin;
        for (const auto& lift : lifts) {
            const IntValuation lam = distance(P, X, lift.w);
            const Rational bound = C * Rational(lift.e);
            const Rational margin = bound - Rational(lam.value());
            if (!best_margin || margin > *best_margin) {
                best_margin = margin;
                pv.witness = lift.w;
                pv.lambda = Rational(lam.value());
                pv.bound = bound;
            }
        }
        pv.pass = best_margin && *best_margin >= Rational(0);
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i].is_zero()) continue;
            const Rational h = global_height(values[i], places);
            if (h > Cf[i]) {
                pv.pass = false;
                pv.notes.push_back("h(f_" + std::to_string(i + 1) + "(P)) = " + to_string(h) + " exceeds C(f_" +
                                   std::to_string(i + 1) + ") = " + to_string(Cf[i]));
            }
            Rational over_v(0);
            for (const auto& lift : lifts) over_v += lift.w.degree() * Rational(valuation(values[i], lift.w).value());
            if (over_v > h) {
                pv.pass = false;
                pv.notes.push_back("sum formula violated for f_" + std::to_string(i + 1) + "(P)");
            }
        }
        rep.verdicts.push_back(std::move(pv));
    }
    rep.pass = std::all_of(rep.verdicts.begin(), rep.verdicts.end(), [](const PointVerdict& p) { return p.pass; });
    return rep;
}

TargetPoint::TargetPoint(std::vector<LocalElement> coords) : y(std::move(coords)) {
    for (const auto& c : y) {
        const RatValuation val = c.valuation();
        beta.push_back(val.is_infinite() ? Rational(0) : std::max(Rational(0), -val.value()));
    }
}

RatValuation mattuck_distance(const std::vector<LocalElement>& P, const TargetPoint& Q) {
    if (P.size() != Q.y.size()) throw std::invalid_argument("point dimension mismatch");
    RatValuation best = RatValuation::infinity();
    for (std::size_t i = 0; i < P.size(); ++i) {
        const LocalElement d = P[i] - Q.y[i];
        if (d.indistinguishable_from_zero()) continue;
        best = std::min(best, RatValuation(Q.beta[i] + d.valuation().value()));
    }
    return best;
}

namespace {

Rational mattuck_floor(const DrinfeldModule& phi, const Place& v) {
    try {
        return torsion_valuation_floor(phi, v).M_v;
    } catch (const HypothesisError& e) {
        throw HypothesisError(std::string(e.what()) +
                              " (torsion accumulates at the infinite place; see the infinity subcommand)");
    }
}

}  // namespace

MattuckBound mattuck_bound(const DrinfeldModule& phi, const Place& v, const TargetPoint& Q,
                           const std::vector<TorsionSet>& torsion) {
    MattuckBound out;
    out.M_v = mattuck_floor(phi, v);
    out.C_v = ball_constant(phi, v).C_v;
    std::ostringstream tr;
    tr << "M_v = " << to_string(out.M_v) << ", C_v = " << out.C_v;
    for (std::size_t i = 0; i < Q.y.size(); ++i) {
        const RatValuation vy = Q.y[i].valuation();
        if (!vy.is_infinite() && vy.value() < out.M_v) {
            out.which = MattuckBound::Case::BelowFloor;
            out.C = 1;
            tr << "; v(y_" << i + 1 << ") = " << to_string(vy.value()) << " < M_v, so λ_v(P, Q) <= 0 for all torsion P";
            out.trace = tr.str();
            return out;
        }
    }
    const Rational generic = -out.M_v + Rational(out.C_v);
    out.C = generic;
    out.which = MattuckBound::Case::Generic;
    tr << "; generic bound -M_v + C_v = " << to_string(generic);
    const std::vector<LocalElement> pts = merge_points(torsion);
    std::vector<LocalElement> star;
    for (std::size_t i = 0; i < Q.y.size(); ++i) {
        std::vector<LocalElement> inside;
        for (const auto& z : pts)
            if (in_ball(z, Q.y[i], out.C_v)) inside.push_back(z);
        if (inside.size() > 1)
            throw InvariantViolation("two torsion points lie in the ball of radius C_v around y_" + std::to_string(i + 1));
        if (inside.empty()) break;
        star.push_back(inside.front());
    }
    if (!pts.empty() && star.size() == Q.y.size()) {
        const RatValuation d = mattuck_distance(star, Q);
        if (d.is_infinite()) {
            tr << "; the torsion point in the balls is Q itself";
        } else {
            out.which = MattuckBound::Case::Exceptional;
            out.exceptional = star;
            out.exceptional_distance = d;
            out.C = std::max(generic, d.value()) + Rational(1);
            tr << "; exceptional P* = " << point_string(star) << " at distance " << to_string(d.value());
        }
    } else {
        tr << "; no located torsion point in the balls around Q";
    }
    out.trace = tr.str();
    return out;
}

TheoremReport verify_mattuck(const DrinfeldModule& phi, const Place& v, const TargetPoint& Q,
                             const std::vector<Poly>& levels, std::shared_ptr<const LocalField> F,
                             std::optional<std::int64_t> N) {
    TheoremReport rep{.theorem = "mattuck"};
    mattuck_floor(phi, v);
    std::vector<TorsionSet> sets;
    for (const auto& a : levels) sets.push_back(locate_torsion(phi, a, F, N));
    const MattuckBound bound = mattuck_bound(phi, v, Q, sets);
    rep.constants = {{"M_v", bound.M_v}, {"C_v", Rational(bound.C_v)}, {"C", bound.C}};
    rep.notes.push_back(bound.trace);
    const std::size_t g = Q.y.size();

    auto check = [&](const std::string& label, const std::vector<LocalElement>& pts) {
        PointVerdict pv{.point = label, .pass = true};
        std::size_t count = 0, equal = 0;
        std::optional<Rational> worst;
        for_each_tuple(pts, g, [&](const std::vector<LocalElement>& P) {
            ++count;
            const RatValuation d = mattuck_distance(P, Q);
            if (d.is_infinite()) {
                ++equal;
                return;
            }
            if (!worst || d.value() > *worst) worst = d.value();
            if (!(d.value() < bound.C)) {
                pv.pass = false;
                pv.notes.push_back("λ_v(P, Q) = " + to_string(d.value()) + " >= C for P = " + point_string(P));
            }
        });
        pv.lambda = worst ? RatValuation(*worst) : RatValuation::infinity();
        pv.bound = bound.C;
        pv.notes.push_back(std::to_string(count) + " points, " + std::to_string(equal) + " equal to Q");
        rep.verdicts.push_back(std::move(pv));
    };
    for (const auto& s : sets) {
        check("phi[" + s.a.to_string() + "]^" + std::to_string(g), s.points);
        rep.notes.push_back("level " + s.a.to_string() + ": " + std::to_string(s.points.size()) + " of " +
                            std::to_string(s.expected_size) + " roots located in " + F->residue_field().name() +
                            "((u)), e = " + std::to_string(F->ramification()));
    }
    const std::vector<LocalElement> all = merge_points(sets);
    if (sets.size() > 1) check("mixed levels^" + std::to_string(g), all);

    PointVerdict balls{.point = "balls of radius C_v", .pass = true};
    for (std::size_t i = 0; i < g; ++i) {
        std::vector<LocalElement> centers = all;
        centers.push_back(Q.y[i]);
        for (const auto& c : centers) {
            const auto n = std::count_if(all.begin(), all.end(), [&](const LocalElement& z) { return in_ball(z, c, bound.C_v); });
            if (n > 1) {
                balls.pass = false;
                balls.notes.push_back(std::to_string(n) + " torsion points in the ball around " + c.to_string(4));
            }
        }
    }
    rep.verdicts.push_back(std::move(balls));
    rep.pass = std::all_of(rep.verdicts.begin(), rep.verdicts.end(), [](const PointVerdict& p) { return p.pass; });
    return rep;
}

AccumulationReport infinity_accumulation(const DrinfeldModule& phi, unsigned n_max) {
    if (!phi.characteristic().generic) throw std::invalid_argument("infinity accumulation needs generic characteristic");
    AccumulationReport rep;
    const Place inf = ValuationSet(phi.constant_field()).infinity();
    const Poly T = Poly::variable(phi.fq());
    for (unsigned n = 1; n <= n_max; ++n) {
        const NewtonPolygon np = newton_polygon(additive_form(phi.image(T.pow(n))), inf);
        rep.rows.push_back({n, np.max_root_valuation(), np.to_string()});
        if (n > 1 && !(rep.rows[n - 1].max_valuation > rep.rows[n - 2].max_valuation)) rep.strictly_increasing = false;
    }
    return rep;
}

KummerInstance random_kummer_instance(const GaloisField& fq, Rng& rng) {
    const std::uint32_t q = fq.order();
    const Fq alpha = random_element(fq, rng);
    const Fq kappa = random_nonzero(fq, rng);
    Poly h = random_poly(fq, 1, rng);
    while (h.is_zero()) h = random_poly(fq, 1, rng);
    // T = κλ^(q-1) - α.
    std::vector<Fq> gs(q, fq.zero());
    gs[0] = -alpha;
    gs[q - 1] = gs[q - 1] + kappa;
    const RationalTower tower(fq, Poly(fq, gs));
    const RationalFunction T = RationalFunction::variable(fq);
    const RationalFunction gamma = -RationalFunction::constant(kappa) / RationalFunction(h).pow(q - 1);
    DrinfeldModule phi(fq, 1, OrePolynomial(fq.degree(), {T, gamma}));
    const Poly level = Poly::variable(fq) + Poly::constant(alpha);
    const RationalFunction lambda = RationalFunction::variable(fq);
    const RationalFunction x = lambda * tower.map(RationalFunction(h));
    std::vector<RationalFunction> torsion;
    for (const auto& c : fq.elements()) torsion.push_back(RationalFunction::constant(c) * x);
    const Place v = ValuationSet(fq).at(level);
    return KummerInstance{std::move(phi), tower, level, x, std::move(torsion), v};
}

namespace {

MultiPoly random_generator(const GaloisField& fq, std::size_t g, const std::vector<RationalFunction>& anchor, Rng& rng) {
    std::uniform_int_distribution<int> pick(0, 2);
    std::uniform_int_distribution<std::size_t> coord(0, g - 1);
    if (pick(rng) == 0) {
        // Vanishes at the anchor point.
        const std::size_t j = coord(rng);
        return MultiPoly::variable(fq, g, j) - MultiPoly::constant(anchor[j], g);
    }
    MultiPoly f(fq, g);
    const int terms = 1 + pick(rng);
    for (int t = 0; t < terms; ++t) {
        MultiPoly m = MultiPoly::constant(RationalFunction(random_poly(fq, 1, rng)), g);
        for (std::size_t i = 0; i < g; ++i) m = m * MultiPoly::variable(fq, g, i).pow(pick(rng));
        f = f + m;
    }
    if (f.is_zero()) f = MultiPoly::variable(fq, g, 0);
    return f;
}

}  // namespace

TvSuiteResult random_tv_suite(std::size_t instances, Rng& rng) {
    TvSuiteResult out;
    const GaloisField& F2 = GaloisField::get(2, 1);
    const GaloisField& F3 = GaloisField::get(3, 1);
    std::uniform_int_distribution<std::size_t> dim(1, 2), gens(1, 3);
    for (std::size_t n = 0; n < instances; ++n) {
        std::optional<KummerInstance> k;
        if (n % 4 == 3) {
            const RationalTower tw(F3, Poly(F3, {F3.zero(), F3.zero(), F3.from_int(2)}));
            const RationalFunction lambda = RationalFunction::variable(F3);
            std::vector<RationalFunction> torsion;
            for (const auto& c : F3.elements()) torsion.push_back(RationalFunction::constant(c) * lambda);
            const Poly T = Poly::variable(F3);
            k = KummerInstance{DrinfeldModule::carlitz(F3), tw, T, lambda, std::move(torsion), ValuationSet(F3).at(T)};
        } else {
            k = random_kummer_instance(n % 2 == 0 ? F2 : F3, rng);
        }
        const GaloisField& fq = k->phi.fq();
        AffineVariety X{.g = dim(rng)};
        std::vector<RationalFunction> anchor;
        std::uniform_int_distribution<std::size_t> which(0, k->torsion.size() - 1);
        for (std::size_t i = 0; i < X.g; ++i) anchor.push_back(k->torsion[which(rng)]);
        const std::size_t ngen = gens(rng);
        for (std::size_t i = 0; i < ngen; ++i) X.generators.push_back(random_generator(fq, X.g, anchor, rng));
        std::vector<std::vector<RationalFunction>> points;
        std::vector<std::size_t> idx(X.g, 0);
        while (true) {
            std::vector<RationalFunction> P;
            for (std::size_t i = 0; i < X.g; ++i) P.push_back(k->torsion[idx[i]]);
            points.push_back(std::move(P));
            std::size_t i = 0;
            while (i < X.g && ++idx[i] == k->torsion.size()) idx[i++] = 0;
            if (i == X.g) break;
        }
        const TheoremReport rep = verify_tv(k->phi, X, k->v, points, k->tower, {k->level});
        ++out.instances;
        for (const auto& pv : rep.verdicts) {
            ++out.points;
            if (pv.on_variety) ++out.on_variety;
            if (!pv.pass) out.failures.push_back(k->phi.to_string() + " " + X.to_string(kLambda) + " at " + pv.point);
        }
    }
    return out;
}

}  // namespace drinfeld
