#include "drinfeld/errors.hpp"
#include "drinfeld/heights.hpp"
#include "drinfeld/newton_polygon.hpp"
#include "drinfeld/torsion.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace drinfeld;
using namespace drinfeld::test;

namespace {

std::shared_ptr<const LocalField> field(const Place& v, const GaloisField& fq, unsigned residue, unsigned e = 1,
                                        std::optional<Fq> c = std::nullopt, std::int64_t N = 32) {
    return LocalField::create(v, fq, residue, e, c, N);
}

// Random generic-characteristic module φ_T = T + g_1 τ + ... + g_r τ^r, g_r != 0.
DrinfeldModule random_module(const GaloisField& fq, unsigned rank, Rng& rng) {
    std::vector<RationalFunction> cs = {RationalFunction::variable(fq)};
    for (unsigned i = 1; i <= rank; ++i) {
        Poly g = random_poly(fq, 1, rng);
        while (i == rank && g.is_zero()) g = random_poly(fq, 1, rng);
        cs.emplace_back(g);
    }
    return DrinfeldModule(fq, 1, OrePolynomial(fq.degree(), cs));
}

// Tries tame fields of growing size until every root of φ_a lies in one.
std::optional<TorsionSet> locate_somewhere(const DrinfeldModule& phi, const Poly& a, const Place& v) {
    const std::uint32_t p = phi.fq().characteristic();
    for (unsigned e : {1u, 2u, 3u, 4u, 6u})
        for (unsigned m : {1u, 2u, 3u}) {
            if (e % p == 0) continue;
            if (phi.fq().order() > 4 && m > 2) continue;
            try {
                const auto F = field(v, phi.fq(), m * v.residue_degree(), e, std::nullopt, 24);
                TorsionSet s = locate_torsion(phi, a, F);
                if (s.complete()) return s;
            } catch (const CapabilityError&) {
            }
        }
    return std::nullopt;
}

std::vector<Rational> located_valuations(const TorsionSet& s) {
    std::vector<Rational> out;
    for (const auto& x : s.points)
        if (!x.indistinguishable_from_zero()) out.push_back(x.valuation().value());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST(ChooseT, Examples) {
    const DrinfeldModule C = carlitz3();
    EXPECT_EQ(choose_t(C, Place::finite(poly("T"), 1)), poly("T"));
    EXPECT_EQ(choose_t(C, Place::finite(poly("T + 1"), 1)), poly("T + 1"));
    EXPECT_EQ(choose_t(C, Place::finite(poly("T^2 + 1"), 2)), poly("T^2 + 1"));
    EXPECT_EQ(choose_t(module(F2(), 2, {"w", "1"}), Place::finite(poly("T", F4()), 1)), poly("T^2 + T + 1", F2()));
}

TEST(ChooseT, HypothesisViolations) {
    EXPECT_THROW(choose_t(carlitz3(), Place::infinity(F3(), 1)), HypothesisError);
    EXPECT_THROW(choose_t(module(F3(), 1, {"1/T", "1"}), Place::finite(poly("T"), 1)), HypothesisError);
    EXPECT_NO_THROW(choose_t(module(F2(), 2, {"w", "1"}), Place::infinity(F4(), 1)));
}

TEST(BallConstant, Examples) {
    const BallConstant c1 = ball_constant(carlitz3(), Place::finite(poly("T"), 1));
    EXPECT_EQ(c1.C_v, 1);
    EXPECT_TRUE(c1.first_fraction_discarded);
    ASSERT_EQ(c1.S.size(), 1u);
    EXPECT_EQ(c1.S[0], Q(1, 2));

    const BallConstant c2 = ball_constant(module(F3(), 1, {"T", "T"}), Place::finite(poly("T"), 1));
    EXPECT_EQ(c2.C_v, 1);
    ASSERT_EQ(c2.S.size(), 1u);
    EXPECT_EQ(c2.S[0], Q(0));

    // q = 2, i(T) = 0, φ_T = τ: t = T and φ_t = τ, so r_0 = r = 1 and S = {0}.
    const BallConstant c3 = ball_constant(module(F2(), 1, {"0", "1"}), Place::finite(poly("T + 1", F2()), 1));
    EXPECT_FALSE(c3.generic);
    EXPECT_EQ(c3.r0, 1u);
    EXPECT_EQ(c3.r, 1u);
    ASSERT_EQ(c3.S.size(), 1u);
    EXPECT_EQ(c3.S[0], Q(0));
    EXPECT_EQ(c3.C_v, 1);
}

TEST(BallConstant, IsSmallestIntegerAboveS) {
    Rng rng(31);
    for (const GaloisField* fq : {&F2(), &F3(), &F4()}) {
        for (int i = 0; i < 15; ++i) {
            const DrinfeldModule phi = random_module(*fq, 1 + static_cast<unsigned>(i % 2), rng);
            for (const char* p : {"T", "T + 1"}) {
                const BallConstant b = ball_constant(phi, Place::finite(poly(p, *fq), 1));
                EXPECT_GE(b.C_v, 1);
                for (const Rational& s : b.S) EXPECT_GT(Rational(b.C_v), s);
                const bool tight = b.C_v == 1 || std::any_of(b.S.begin(), b.S.end(), [&](const Rational& s) {
                                       return Rational(b.C_v - 1) <= s;
                                   });
                EXPECT_TRUE(tight) << b.to_string();
            }
        }
    }
}

TEST(DecisiveStep, Examples) {
    const DrinfeldModule C = carlitz3();
    const Place vT = Place::finite(poly("T"), 1);
    const auto F = field(vT, F3(), 1);
    const BallConstant ball = ball_constant(C, vT);
    const auto phi_t = local_additive_form(C.image(ball.t), *F);
    EXPECT_EQ(decisive_step(phi_t, F->embed(rf("T")), ball), Q(2));
    EXPECT_EQ(decisive_step(phi_t, F->uniformizer().pow(3), ball), Q(4));
    EXPECT_GT(decisive_step(phi_t, F->uniformizer(), ball), Rational(ball.C_v));
    EXPECT_THROW(decisive_step(phi_t, F->one(), ball), std::invalid_argument);
}

TEST(DecisiveStep, StrictIncreaseOverTenSteps) {
    Rng rng(32);
    const DrinfeldModule C = carlitz3();
    for (const char* p : {"T", "T + 1"}) {
        const Place v = Place::finite(poly(p), 1);
        const auto F = field(v, F3(), 1, 1, std::nullopt, 64);
        const BallConstant ball = ball_constant(C, v);
        const auto phi_t = local_additive_form(C.image(ball.t), *F);
        std::uniform_int_distribution<int> shift(0, 3);
        for (int i = 0; i < 20; ++i) {
            LocalElement x = F->embed(random_nonzero_rational_function(F3(), 3, rng), 40);
            const std::int64_t o = *x.order();
            x = x.shifted(ball.C_v - o + shift(rng));
            Rational prev = x.valuation().value();
            for (int n = 1; n <= 10; ++n) {
                const Rational next = decisive_step(phi_t, x, ball);
                EXPECT_GT(next, prev);
                x = phi_t.evaluate(x);
                EXPECT_EQ(x.valuation().value(), next);
                prev = next;
            }
        }
    }
}

TEST(LocateTorsion, CarlitzTInRamifiedField) {
    const DrinfeldModule C = carlitz3();
    const auto F = field(Place::finite(poly("T"), 1), F3(), 2, 2, F3().one());
    const TorsionSet s = locate_torsion(C, poly("T"), F);
    ASSERT_TRUE(s.complete());
    ASSERT_EQ(s.points.size(), 3u);
    EXPECT_TRUE(s.points[0].indistinguishable_from_zero());
    for (std::size_t i = 1; i < 3; ++i) {
        const LocalElement& x = s.points[i];
        EXPECT_EQ(x.order(), 1);
        const Fq c = x.leading_coefficient();
        EXPECT_TRUE((c * c + F9().one()).is_zero());
        EXPECT_TRUE(x.congruent(F->uniformizer().scaled(c)));
    }
}

TEST(LocateTorsion, CarlitzTUnramifiedAtTPlusOne) {
    const DrinfeldModule C = carlitz3();
    const auto F = field(Place::finite(poly("T + 1"), 1), F3(), 1);
    const TorsionSet s = locate_torsion(C, poly("T"), F);
    ASSERT_TRUE(s.complete());
    const LocalElement minus_t = -F->embed(rf("T"));
    for (std::size_t i = 1; i < 3; ++i) {
        const LocalElement& x = s.points[i];
        EXPECT_EQ(x.valuation(), RatValuation(Q(0)));
        EXPECT_TRUE((x * x).congruent(minus_t));
    }
    // 1 - 2π - ... = 1 + π + ... in characteristic 3.
    const auto it = std::find_if(s.points.begin(), s.points.end(),
                                 [](const LocalElement& x) { return !x.indistinguishable_from_zero() && x.coefficient(0).is_one(); });
    ASSERT_NE(it, s.points.end());
    EXPECT_TRUE(it->coefficient(1).is_one());
}

TEST(LocateTorsion, TrivialLevel) {
    const auto F = field(Place::finite(poly("T"), 1), F3(), 1);
    const TorsionSet s = locate_torsion(carlitz3(), poly("1"), F);
    ASSERT_EQ(s.points.size(), 1u);
    EXPECT_TRUE(s.points[0].indistinguishable_from_zero());
    EXPECT_TRUE(s.complete());
}

TEST(LocateTorsion, CapabilityErrors) {
    const DrinfeldModule C = carlitz3();
    // Slope -1/2 needs e = 2.
    EXPECT_THROW(locate_torsion(C, poly("T"), field(Place::finite(poly("T"), 1), F3(), 1)), CapabilityError);
    // Finite characteristic: φ_t is inseparable.
    const DrinfeldModule fin = module(F3(), 1, {"0", "1"});
    EXPECT_THROW(locate_torsion(fin, poly("T"), field(Place::finite(poly("T + 1"), 1), F3(), 1)), CapabilityError);
    // Too little precision to separate the roots.
    EXPECT_THROW(locate_torsion(C, poly("T"), field(Place::finite(poly("T"), 1), F3(), 2, 2, F3().one(), 2)),
                 PrecisionError);
    // Level T^2 at T + 1 needs the cubic residue extension.
    try {
        locate_torsion(C, poly("T^2"), field(Place::finite(poly("T + 1"), 1), F3(), 2));
        FAIL() << "expected CapabilityError";
    } catch (const CapabilityError& e) {
        EXPECT_NE(std::string(e.what()).find("3 of 9"), std::string::npos) << e.what();
    }
}

TEST(LocateTorsion, VectorSpaceLawAndCertification) {
    const DrinfeldModule C = carlitz3();
    const std::vector<std::pair<Poly, std::shared_ptr<const LocalField>>> cases = {
        {poly("T"), field(Place::finite(poly("T"), 1), F3(), 2, 2, F3().one())},
        {poly("T"), field(Place::finite(poly("T + 1"), 1), F3(), 1)},
        {poly("T^2"), field(Place::finite(poly("T + 1"), 1), F3(), 3)},
        {poly("T^2 + T"), field(Place::finite(poly("T + 1"), 1), F3(), 2, 2)},
        {poly("T + 2"), field(Place::finite(poly("T"), 1), F3(), 1)},
    };
    for (const auto& [a, F] : cases) {
        const TorsionSet s = locate_torsion(C, a, F);
        EXPECT_TRUE(s.complete()) << a << " " << F->to_string();
        EXPECT_EQ(s.expected_size, static_cast<std::size_t>(std::pow(3, a.degree())));
        EXPECT_TRUE(is_fq_subspace(s));
        for (const auto& x : s.points) {
            for (const Fq& c : F3().elements()) EXPECT_TRUE(s.find(x.scaled(embed(c, F->residue_field()))));
            for (const auto& y : s.points) EXPECT_TRUE(s.find(x + y).has_value());
        }
        const auto phi_a = local_additive_form(C.image(a), *F, 48);
        for (const auto& x : s.points) {
            if (x.indistinguishable_from_zero()) continue;
            const LocalElement r = phi_a.evaluate(x);
            if (r.indistinguishable_from_zero())
                EXPECT_GE(r.absolute_precision(), s.certified_order);
            else
                EXPECT_GE(*r.order(), s.certified_order);
        }
    }
}

TEST(LocateTorsion, PolygonAgreesWithLiftingOnRandomModules) {
    Rng rng(33);
    int instances = 0;
    for (const GaloisField* fq : {&F2(), &F3(), &F4()}) {
        for (int i = 0; i < 8; ++i) {
            const DrinfeldModule phi = random_module(*fq, 1 + static_cast<unsigned>(i % 2), rng);
            for (const char* p : {"T", "T + 1"}) {
                const Place v = Place::finite(poly(p, *fq), 1);
                const Poly t = choose_t(phi, v);
                const auto s = locate_somewhere(phi, t, v);
                if (!s) continue;
                ++instances;
                EXPECT_EQ(located_valuations(*s), s->polygon.root_valuation_multiset()) << phi.to_string();
                EXPECT_EQ(s->polygon.root_valuation_multiset(),
                          newton_polygon(additive_form(phi.image(t)), v).root_valuation_multiset());
            }
        }
    }
    EXPECT_GE(instances, 20);
}

TEST(BallEmptiness, LocatedTorsionLiesOutsideTheBall) {
    Rng rng(34);
    int points = 0;
    std::vector<std::pair<DrinfeldModule, Place>> cases = {
        {carlitz3(), Place::finite(poly("T"), 1)},
        {carlitz3(), Place::finite(poly("T + 1"), 1)},
        {module(F3(), 1, {"T", "T"}), Place::finite(poly("T"), 1)},
    };
    for (const GaloisField* fq : {&F2(), &F3(), &F4()})
        for (int i = 0; i < 12; ++i)
            cases.emplace_back(random_module(*fq, 1 + static_cast<unsigned>(i % 2), rng),
                               Place::finite(poly(i % 3 == 0 ? "T" : "T + 1", *fq), 1));
    for (const auto& [phi, v] : cases) {
        const BallConstant ball = ball_constant(phi, v);
        const TorsionFloor floor = torsion_valuation_floor(phi, v);
        for (const Poly& a : {ball.t, ball.t * ball.t}) {
            if (phi.rank() * static_cast<unsigned>(a.degree()) > 2 && phi.q() > 2) continue;
            const auto s = locate_somewhere(phi, a, v);
            if (!s) continue;
            for (const auto& x : s->points) {
                if (x.indistinguishable_from_zero()) continue;
                ++points;
                EXPECT_LT(x.valuation().value(), Rational(ball.C_v)) << phi.to_string() << " " << x.to_string();
                EXPECT_GE(x.valuation().value(), floor.M_v);
            }
        }
    }
    EXPECT_GE(points, 50);
}

TEST(TorsionFloor, Examples) {
    EXPECT_EQ(torsion_valuation_floor(carlitz3(), Place::finite(poly("T"), 1)).M_v, Q(0));
    const TorsionFloor f = torsion_valuation_floor(carlitz3(), Place::finite(poly("T"), 1));
    EXPECT_EQ(f.dynamics.dominance, RatValuation(Q(1, 2)));
    EXPECT_EQ(torsion_valuation_floor(carlitz3(), Place::finite(poly("T + 1"), 1)).M_v, Q(0));
    EXPECT_THROW(torsion_valuation_floor(carlitz3(), Place::infinity(F3(), 1)), HypothesisError);
    const TorsionFloor g = torsion_valuation_floor(module(F3(), 1, {"T", "1/T"}), Place::finite(poly("T"), 1));
    EXPECT_LE(g.M_v, Q(0));
}
