#include "drinfeld/errors.hpp"
#include "drinfeld/heights.hpp"
#include "drinfeld/multipoly.hpp"
#include "drinfeld/tate_voloch.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace drinfeld;
using namespace drinfeld::test;

namespace {

const ValuationSet& K3() {
    static const ValuationSet U(F3());
    return U;
}

// h(φ_{a^n}(x)) / q^(r·n·deg a) computed by direct iteration.
Rational iterate_estimate(const DrinfeldModule& phi, const RationalFunction& x, const Poly& a, int n,
                          const ValuationSet& places) {
    const OrePolynomial f = phi.image(a);
    RationalFunction y = x;
    Rational scale = 1;
    for (int i = 0; i < n; ++i) {
        y = f.apply(y);
        scale *= Rational(static_cast<std::int64_t>(std::pow(phi.q(), phi.rank() * a.degree())));
    }
    return global_height(y, places) / scale;
}

std::vector<DrinfeldModule> sample_modules() {
    return {carlitz3(), module(F3(), 1, {"T", "T + 1"}), module(F2(), 1, {"T", "1/T"}),
            module(F3(), 1, {"T", "T", "1"}), module(F2(), 2, {"w*T", "1"})};
}

}  // namespace

TEST(LocalHeight, Examples) {
    EXPECT_EQ(local_height(rf("1/T"), K3().at(poly("T"))), Q(1));
    EXPECT_EQ(local_height(rf("T"), K3().at(poly("T"))), Q(0));
    const ValuationSet UL = lambda_tower().extension_places();
    EXPECT_EQ(local_height(rf("L", F3(), "L"), UL.infinity()), Q(1, 2));
}

TEST(GlobalHeight, Examples) {
    EXPECT_EQ(global_height(rf("T"), K3()), Q(1));
    EXPECT_EQ(global_height(rf("L", F3(), "L"), lambda_tower().extension_places()), Q(1, 2));
    EXPECT_EQ(global_height(rf("2"), K3()), Q(0));
    EXPECT_EQ(global_height(RationalFunction::constant(F9().generator()), ValuationSet(F9())), Q(0));
    EXPECT_EQ(global_height(rf("(T^2 + 1)/(T + 1)"), K3()), Q(2));
    // Per-place max: (1/T, T) has max(1, 0) at v_T and max(0, 1) at ∞.
    EXPECT_EQ(global_height(std::vector<RationalFunction>{rf("1/T"), rf("T")}, K3()), Q(2));
}

TEST(GlobalHeight, Inequalities) {
    Rng rng(41);
    int pairs = 0;
    for (const GaloisField* k : {&F3(), &F4()}) {
        const ValuationSet U(*k);
        for (int i = 0; i < 250; ++i, ++pairs) {
            const RationalFunction x = random_rational_function(*k, 4, rng);
            const RationalFunction y = random_rational_function(*k, 4, rng);
            const Rational hx = global_height(x, U), hy = global_height(y, U);
            EXPECT_GE(hx, Rational(0));
            EXPECT_LE(global_height(x * y, U), hx + hy);
            EXPECT_LE(global_height(x + y, U), hx + hy);
        }
    }
    EXPECT_EQ(pairs, 500);
}

TEST(CanonicalLocalHeight, Examples) {
    const DrinfeldModule C = carlitz3();
    const LocalCanonicalHeight inf = canonical_local_height(C, rf("1"), K3().infinity());
    EXPECT_EQ(inf.decision, LocalCanonicalHeight::Decision::Escape);
    EXPECT_EQ(inf.step, 1u);
    EXPECT_EQ(inf.V, Q(-1, 3));
    EXPECT_EQ(inf.height, Q(1, 3));
    EXPECT_EQ(inf.dynamics.dominance, RatValuation(Q(-1, 2)));

    const LocalCanonicalHeight at0 = canonical_local_height(C, rf("1"), K3().at(poly("T")));
    EXPECT_EQ(at0.decision, LocalCanonicalHeight::Decision::Trap);
    EXPECT_EQ(at0.height, Q(0));

    const RationalTower tw = lambda_tower();
    const RationalFunction lambda = rf("L", F3(), "L");
    for (const Place& w : {tw.extension_places().infinity(), tw.extension_places().at(poly("L", F3(), "L"))}) {
        const LocalCanonicalHeight h = canonical_local_height(C, lambda, w, tw, poly("T"));
        EXPECT_EQ(h.height, Q(0));
        EXPECT_EQ(h.V, Q(0));
    }
}

TEST(CanonicalLocalHeight, UndecidedOrbitIsIndeterminate) {
    const RationalTower tw = lambda_tower();
    try {
        canonical_local_height(carlitz3(), rf("1/L", F3(), "L"), tw.extension_places().infinity(), tw, poly("T"), 6);
        FAIL() << "expected IndeterminateError";
    } catch (const IndeterminateError& e) {
        EXPECT_NE(e.trace().find("w(y_n)"), std::string::npos);
    }
}

TEST(CanonicalGlobalHeight, Examples) {
    const DrinfeldModule C = carlitz3();
    const CanonicalHeight one = canonical_global_height(C, rf("1"));
    EXPECT_EQ(one.value, Q(1, 3));
    EXPECT_TRUE(one.cross_check);
    ASSERT_FALSE(one.iterates.empty());
    EXPECT_EQ(one.iterates[0].second, Q(1, 3));
    EXPECT_EQ(iterate_estimate(C, rf("1"), poly("T"), 1, K3()), Q(1, 3));

    const RationalTower tw = lambda_tower();
    EXPECT_EQ(canonical_global_height(C, rf("L", F3(), "L"), tw, poly("T")).value, Q(0));
    EXPECT_EQ(canonical_global_height(C, rf("0")).value, Q(0));
}

TEST(CanonicalGlobalHeight, AgreesWithIteration) {
    Rng rng(42);
    for (const auto& phi : sample_modules()) {
        const ValuationSet U(phi.constant_field());
        const Rational C0 = height_gap_bound(phi).C0;
        for (int i = 0; i < 8; ++i) {
            const RationalFunction x = random_rational_function(phi.constant_field(), 2, rng);
            const CanonicalHeight h = canonical_global_height(phi, x);
            EXPECT_TRUE(h.cross_check);
            for (int n = 1; n <= 3; ++n) {
                const Rational est = iterate_estimate(phi, x, poly("T", phi.fq()), n, U);
                const Rational band = C0 / Rational(static_cast<std::int64_t>(std::pow(phi.q(), phi.rank() * n)));
                EXPECT_LE(abs(h.value - est), band) << phi.to_string() << " x = " << x << " n = " << n;
            }
        }
    }
}

TEST(CanonicalGlobalHeight, GapBoundIsSound) {
    Rng rng(43);
    int samples = 0;
    for (const auto& phi : sample_modules()) {
        const ValuationSet U(phi.constant_field());
        const HeightGapBound gap = height_gap_bound(phi);
        EXPECT_GE(gap.C0, Rational(0));
        for (int i = 0; i < 20; ++i, ++samples) {
            const RationalFunction x = random_rational_function(phi.constant_field(), 4, rng);
            const Rational h = global_height(x, U);
            const Rational hh = canonical_global_height(phi, x).value;
            EXPECT_GE(hh, Rational(0));
            EXPECT_LE(abs(h - hh), gap.C0) << phi.to_string() << " x = " << x;
            if (h > gap.C0) {
                EXPECT_GT(hh, Rational(0));
            }
        }
    }
    EXPECT_EQ(samples, 100);
}

TEST(CanonicalGlobalHeight, IndependentOfReferenceElement) {
    Rng rng(44);
    const DrinfeldModule C = carlitz3();
    const RationalTower tw = RationalTower::trivial(F3());
    for (int i = 0; i < 50; ++i) {
        const RationalFunction x = random_rational_function(F3(), 3, rng);
        EXPECT_EQ(canonical_global_height(C, x, tw, poly("T")).value,
                  canonical_global_height(C, x, tw, poly("T + 1")).value)
            << x;
    }
}

TEST(CanonicalGlobalHeight, TransformationLaw) {
    Rng rng(45);
    for (const auto& phi : {carlitz3(), module(F3(), 1, {"T", "T + 1"}), module(F2(), 1, {"T", "T", "1"})}) {
        for (int i = 0; i < 8; ++i) {
            const RationalFunction x = random_rational_function(phi.constant_field(), 2, rng);
            Poly b = random_poly(phi.fq(), 2, rng);
            if (b.is_zero()) b = poly("T", phi.fq());
            const Rational hx = canonical_global_height(phi, x).value;
            const Rational hb = canonical_global_height(phi, phi.image(b).apply(x)).value;
            const auto factor = static_cast<std::int64_t>(std::pow(phi.q(), phi.rank() * b.degree()));
            EXPECT_EQ(hb, Rational(factor) * hx) << phi.to_string() << " b = " << b << " x = " << x;
        }
    }
}

TEST(CanonicalGlobalHeight, TieAtLargeDegreeIsResolvedLocally) {
    // At ∞ the orbit of x reaches w(y_3) = 0, where the τ^0 and τ^1 terms tie,
    // while y_4 has degree about 26000.
    const DrinfeldModule phi = module(F3(), 1, {"T", "T", "1"});
    const RationalFunction x = rf("(T + 2)/T^4");
    const CanonicalHeight h = canonical_global_height(phi, x);
    EXPECT_EQ(h.value, Q(26245, 6561));
    EXPECT_TRUE(h.cross_check);
    EXPECT_EQ(canonical_global_height(phi, x, RationalTower::trivial(F3()), poly("T + 1")).value, h.value);
}

TEST(CanonicalGlobalHeight, TorsionHasHeightZero) {
    Rng rng(46);
    for (int i = 0; i < 12; ++i) {
        const GaloisField& fq = i % 2 == 0 ? F2() : F3();
        const KummerInstance k = random_kummer_instance(fq, rng);
        for (const auto& x : k.torsion) {
            if (!x.is_zero()) {
                EXPECT_TRUE(torsion_annihilator(k.phi, x, k.tower, {k.level}).has_value()) << x;
            }
            EXPECT_EQ(canonical_global_height(k.phi, x, k.tower, poly("T", fq)).value, Q(0)) << x;
        }
    }
    const RationalTower tw = lambda_tower();
    EXPECT_EQ(canonical_global_height(carlitz3(), rf("2*L", F3(), "L"), tw, poly("T")).value, Q(0));
}

TEST(HeightGapBound, Carlitz) {
    const HeightGapBound g = height_gap_bound(carlitz3());
    ASSERT_EQ(g.bad_places.size(), 1u);
    EXPECT_TRUE(g.bad_places[0].w.is_infinite());
    EXPECT_GE(g.C0, Q(1, 2));
    EXPECT_EQ(g.a, poly("T"));
}

TEST(HeightGapBound, SingleBadPlace) {
    // φ_T = T + T^{-1}τ over F_3: coefficients of φ_T are non-integral only at v_T and ∞.
    const DrinfeldModule phi = module(F3(), 1, {"T", "1/T"});
    const HeightGapBound g = height_gap_bound(phi);
    Rational sum = 0;
    for (const auto& d : g.bad_places) sum += K3().degree_of(d.w) * d.gap;
    EXPECT_EQ(sum, g.C0);
}

TEST(PolyHeightBound, Examples) {
    const Rational C0 = height_gap_bound(carlitz3()).C0;
    EXPECT_EQ(poly_height_bound(parse_multipoly("X1", F3(), 1), C0, K3()), C0);
    EXPECT_EQ(poly_height_bound(parse_multipoly("T*X1*X2 + X2^2", F3(), 2), C0, K3()), Rational(1) + Rational(4) * C0);
    EXPECT_EQ(poly_height_bound(parse_multipoly("T^2 + 1", F3(), 1), C0, K3()), Q(2));
}

TEST(PolyHeightBound, BoundsTorsionValues) {
    const RationalTower tw = lambda_tower();
    const ValuationSet UL = tw.extension_places();
    const Rational C0 = height_gap_bound(carlitz3()).C0;
    const MultiPoly f = parse_multipoly("2*L^2*X1*X2 + X2^2 + X1^3", F3(), 2, "L");
    const std::vector<RationalFunction> pts = {rf("0", F3(), "L"), rf("L", F3(), "L"), rf("2*L", F3(), "L")};
    for (const auto& a : pts)
        for (const auto& b : pts) EXPECT_LE(global_height(f.evaluate({a, b}), UL), poly_height_bound(f, C0, UL));
}
