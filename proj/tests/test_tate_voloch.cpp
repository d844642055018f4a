#include "drinfeld/errors.hpp"
#include "drinfeld/tate_voloch.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace drinfeld;
using namespace drinfeld::test;

namespace {

RationalFunction lam(const std::string& s) { return rf(s, F3(), "L"); }

AffineVariety variety(std::size_t g, const std::vector<std::string>& gens, const std::string& var = "L") {
    AffineVariety X{.g = g};
    for (const auto& s : gens) X.generators.push_back(parse_multipoly(s, F3(), g, var));
    return X;
}

const Place& vT() {
    static const Place v = Place::finite(poly("T"), 1);
    return v;
}

const Place& vT1() {
    static const Place v = Place::finite(poly("T + 1"), 1);
    return v;
}

}  // namespace

TEST(Distance, Examples) {
    const Place w = lambda_tower().extension_places().at(poly("L", F3(), "L"));
    const AffineVariety X = variety(1, {"X1"});
    EXPECT_EQ(distance({lam("L")}, X, w), IntValuation(1));
    EXPECT_EQ(distance({lam("L^2 + L^3")}, X, w), IntValuation(2));
    EXPECT_TRUE(distance({lam("0")}, X, w).is_infinite());
    EXPECT_EQ(distance({lam("1 + L")}, X, w), IntValuation(0));
    EXPECT_THROW(distance({lam("L")}, variety(1, {"X1/L"}), w), std::invalid_argument);
}

TEST(Distance, MoreGeneratorsNeverIncreaseIt) {
    Rng rng(51);
    const Place w = lambda_tower().extension_places().at(poly("L", F3(), "L"));
    const AffineVariety X = variety(2, {"X1 - X2"});
    const AffineVariety Y = variety(2, {"X1 - X2", "X1*X2 + L*X2^2"});
    for (int i = 0; i < 100; ++i) {
        const std::vector<RationalFunction> P = {RationalFunction(random_poly(F3(), 3, rng)),
                                                 RationalFunction(random_poly(F3(), 3, rng))};
        EXPECT_LE(distance(P, Y, w), distance(P, X, w));
    }
}

TEST(TvConstant, Examples) {
    const ValuationSet K = ValuationSet(F3());
    const Rational C0 = height_gap_bound(carlitz3()).C0;
    EXPECT_EQ(C0, Q(1, 2));
    EXPECT_EQ(tv_constant(variety(1, {"X1"}, "T"), vT(), C0, K), C0);
    EXPECT_EQ(tv_constant(variety(2, {"T*X1*X2 + X2^2"}, "T"), vT(), C0, K), Q(3));
    EXPECT_EQ(tv_constant(variety(2, {"X1 - X2", "T*X1*X2 + X2^2"}, "T"), vT(), C0, K), Q(3));
    EXPECT_EQ(tv_constant(variety(2, {"T*X1*X2 + X2^2"}, "T"), Place::finite(poly("T^2 + 1"), 2), C0, K), Q(3, 2));
}

TEST(VerifyTv, LambdaAgainstTheOrigin) {
    const TheoremReport rep = verify_tv(carlitz3(), variety(1, {"X1"}), vT(), {{lam("L")}}, lambda_tower());
    ASSERT_TRUE(rep.pass);
    ASSERT_EQ(rep.verdicts.size(), 1u);
    const PointVerdict& pv = rep.verdicts[0];
    EXPECT_FALSE(pv.on_variety);
    ASSERT_TRUE(pv.witness.has_value());
    EXPECT_EQ(pv.witness->prime(), poly("L", F3(), "L"));
    EXPECT_EQ(pv.lambda, RatValuation(Q(1)));
    EXPECT_EQ(pv.bound, Q(1));  // C = C_0 = 1/2 and e = 2
}

TEST(VerifyTv, DiagonalPairs) {
    const std::vector<std::vector<RationalFunction>> pts = {
        {lam("L"), lam("L")}, {lam("L"), lam("2*L")}, {lam("0"), lam("L")}, {lam("0"), lam("0")}};
    const TheoremReport rep = verify_tv(carlitz3(), variety(2, {"X1 - X2"}), vT(), pts, lambda_tower());
    EXPECT_TRUE(rep.pass);
    ASSERT_EQ(rep.verdicts.size(), 4u);
    EXPECT_TRUE(rep.verdicts[0].on_variety);
    EXPECT_FALSE(rep.verdicts[1].on_variety);
    EXPECT_FALSE(rep.verdicts[2].on_variety);
    EXPECT_TRUE(rep.verdicts[3].on_variety);
    EXPECT_EQ(rep.verdicts[1].lambda, RatValuation(Q(1)));
}

TEST(VerifyTv, RejectsUncertifiedTorsion) {
    EXPECT_THROW(verify_tv(carlitz3(), variety(1, {"X1"}), vT(), {{lam("L + 1")}}, lambda_tower()), std::invalid_argument);
    EXPECT_THROW(verify_tv(carlitz3(), variety(2, {"X1"}), vT(), {{lam("L")}}, lambda_tower()), std::invalid_argument);
}

TEST(VerifyTv, RandomizedSuiteHasNoFailures) {
    Rng rng(52);
    const TvSuiteResult r = random_tv_suite(60, rng);
    EXPECT_EQ(r.instances, 60u);
    EXPECT_GT(r.on_variety, 0u);
    EXPECT_GT(r.points, r.on_variety);
    EXPECT_TRUE(r.failures.empty()) << r.failures.front();
}

TEST(TorsionAnnihilator, FindsLevel) {
    EXPECT_EQ(torsion_annihilator(carlitz3(), lam("L"), lambda_tower()), poly("T"));
    EXPECT_EQ(torsion_annihilator(carlitz3(), lam("0"), lambda_tower()), poly("1"));
    EXPECT_FALSE(torsion_annihilator(carlitz3(), lam("L + 1"), lambda_tower()).has_value());
    Rng rng(53);
    for (int i = 0; i < 10; ++i) {
        const KummerInstance k = random_kummer_instance(i % 2 == 0 ? F2() : F3(), rng);
        EXPECT_EQ(torsion_annihilator(k.phi, k.generator, k.tower), k.level);
    }
}

TEST(MattuckBound, CarlitzAtTAgainstOrigin) {
    const auto F = LocalField::create(vT(), F3(), 2, 2, F3().one());
    const TargetPoint Q0({F->zero()});
    const TheoremReport rep = verify_mattuck(carlitz3(), vT(), Q0, {poly("T")}, F);
    EXPECT_TRUE(rep.pass);
    ASSERT_EQ(rep.constants.size(), 3u);
    EXPECT_EQ(rep.constants[0].second, Q(0));
    EXPECT_EQ(rep.constants[1].second, Q(1));
    EXPECT_EQ(rep.constants[2].second, Q(1));
    const TorsionSet s = locate_torsion(carlitz3(), poly("T"), F);
    for (const auto& x : s.points) {
        const RatValuation d = mattuck_distance({x}, Q0);
        if (x.indistinguishable_from_zero())
            EXPECT_TRUE(d.is_infinite());
        else
            EXPECT_EQ(d, RatValuation(Q(1, 2)));
    }
}

TEST(MattuckBound, UnramifiedLevelsAtTPlusOne) {
    const auto F = LocalField::create(vT1(), F3(), 3, 1);
    const std::vector<Poly> levels = {poly("T"), poly("T^2")};
    for (const auto& a : levels) {
        const TorsionSet s = locate_torsion(carlitz3(), a, F);
        EXPECT_TRUE(s.complete());
        EXPECT_EQ(s.points.size(), static_cast<std::size_t>(std::pow(3, a.degree())));
    }
    for (const auto& y : {F->zero(), F->one(), F->embed(rf("T^2 + 2"))}) {
        const TheoremReport rep = verify_mattuck(carlitz3(), vT1(), TargetPoint({y}), levels, F);
        EXPECT_TRUE(rep.pass) << y.to_string();
        ASSERT_FALSE(rep.verdicts.empty());
        EXPECT_EQ(rep.verdicts.back().point, "balls of radius C_v");
        EXPECT_TRUE(rep.verdicts.back().pass);
    }
}

TEST(MattuckBound, Cases) {
    const auto F = LocalField::create(vT(), F3(), 2, 2, F3().one());
    const TorsionSet s = locate_torsion(carlitz3(), poly("T"), F);
    const std::vector<TorsionSet> sets = {s};

    const MattuckBound below = mattuck_bound(carlitz3(), vT(), TargetPoint({F->uniformizer().pow(-1)}), sets);
    EXPECT_EQ(below.which, MattuckBound::Case::BelowFloor);
    EXPECT_EQ(below.C, Q(1));

    const MattuckBound generic = mattuck_bound(carlitz3(), vT(), TargetPoint({F->one()}), sets);
    EXPECT_EQ(generic.which, MattuckBound::Case::Generic);
    EXPECT_EQ(generic.C, Q(1));

    // Q close to a nonzero torsion point but not equal to it.
    const LocalElement x = s.points[1];
    const LocalElement y = x + F->uniformizer().pow(6);
    const MattuckBound exc = mattuck_bound(carlitz3(), vT(), TargetPoint({y}), sets);
    EXPECT_EQ(exc.which, MattuckBound::Case::Exceptional);
    ASSERT_TRUE(exc.exceptional.has_value());
    EXPECT_TRUE((*exc.exceptional)[0].congruent(x));
    EXPECT_EQ(exc.exceptional_distance, RatValuation(Q(3)));
    EXPECT_EQ(exc.C, Q(4));
    const TheoremReport rep = verify_mattuck(carlitz3(), vT(), TargetPoint({y}), {poly("T")}, F);
    EXPECT_TRUE(rep.pass);
}

TEST(MattuckBound, EmptyLevelListIsVacuous) {
    const auto F = LocalField::create(vT(), F3(), 2, 2, F3().one());
    const TheoremReport rep = verify_mattuck(carlitz3(), vT(), TargetPoint({F->zero()}), {}, F);
    EXPECT_TRUE(rep.pass);
}

TEST(MattuckBound, MixedLevelsInTwoDimensions) {
    const auto F = LocalField::create(vT1(), F3(), 3, 1);
    const TargetPoint Q({F->one(), F->zero()});
    const TheoremReport rep = verify_mattuck(carlitz3(), vT1(), Q, {poly("T"), poly("T^2")}, F);
    EXPECT_TRUE(rep.pass);
    bool mixed = false;
    for (const auto& pv : rep.verdicts) mixed |= pv.point == "mixed levels^2";
    EXPECT_TRUE(mixed);
}

TEST(MattuckBound, InfinitePlaceIsAHypothesisViolation) {
    const auto F = LocalField::create(Place::infinity(F3(), 1), F3(), 1, 2);
    EXPECT_THROW(verify_mattuck(carlitz3(), Place::infinity(F3(), 1), TargetPoint({F->zero()}), {poly("T")}, F),
                 HypothesisError);
}

TEST(InfinityAccumulation, Carlitz) {
    const AccumulationReport rep = infinity_accumulation(carlitz3(), 4);
    ASSERT_EQ(rep.rows.size(), 4u);
    EXPECT_EQ(rep.rows[0].max_valuation, Q(-1, 2));
    EXPECT_EQ(rep.rows[1].max_valuation, Q(1, 2));
    EXPECT_TRUE(rep.strictly_increasing);
    EXPECT_GT(rep.rows[3].max_valuation, rep.rows[2].max_valuation);
    EXPECT_THROW(infinity_accumulation(module(F3(), 1, {"0", "1"}), 2), std::invalid_argument);
}

TEST(Multipoly, ParseAndEvaluate) {
    const MultiPoly f = parse_multipoly("T*X1*X2 + X2^2", F3(), 2);
    EXPECT_EQ(f.terms().size(), 2u);
    EXPECT_EQ(f.evaluate({rf("1"), rf("T")}), rf("2*T^2"));
    EXPECT_EQ(parse_multipoly("(X1 + 1)^2 - X1^2 - 2*X1", F3(), 1).as_constant(), rf("1"));
    EXPECT_THROW(parse_multipoly("X3", F3(), 2), ParseError);
    EXPECT_THROW(parse_multipoly("X1 +", F3(), 1), ParseError);
}
