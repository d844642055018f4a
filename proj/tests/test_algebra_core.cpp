#include "drinfeld/ore.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace drinfeld;
using namespace drinfeld::test;

namespace {

// Evaluate a polynomial over F_p given by its modulus coefficients at a code of F_p.
bool has_root_mod_p(const std::vector<std::uint32_t>& modulus, std::uint32_t p) {
    for (std::uint32_t x = 0; x < p; ++x) {
        std::uint64_t acc = 0;
        for (std::size_t i = modulus.size(); i-- > 0;) acc = (acc * x + modulus[i]) % p;
        if (acc == 0) return true;
    }
    return false;
}

}  // namespace

TEST(FiniteField, ModulusHasNoRootsForSmallDegrees) {
    for (auto [p, e] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}, {3u, 3u}, {5u, 2u}}) {
        const GaloisField& k = GaloisField::get(p, e);
        ASSERT_EQ(k.modulus().size(), e + 1);
        EXPECT_FALSE(has_root_mod_p(k.modulus(), p)) << k.name();
        EXPECT_EQ(k.order(), static_cast<std::uint32_t>(std::pow(p, e)));
    }
}

TEST(FiniteField, FieldAxiomsAndCanonicalDigits) {
    const GaloisField& k = F9();
    for (const Fq& a : k.elements()) {
        EXPECT_LT(k.digits(a.code()).size(), 3u);
        EXPECT_EQ(k.from_digits(k.digits(a.code())), a.code());
        if (!a.is_zero()) {
            EXPECT_TRUE((a * a.inverse()).is_one());
        }
        for (const Fq& b : k.elements()) {
            EXPECT_EQ(a + b, b + a);
            EXPECT_EQ(a * b, b * a);
            EXPECT_EQ((a + b) - b, a);
        }
    }
}

TEST(FiniteField, FrobeniusIsAnAutomorphism) {
    for (const GaloisField* k : {&F4(), &F9(), &GaloisField::get(2, 3)}) {
        std::set<std::uint32_t> image;
        for (const Fq& a : k->elements()) {
            image.insert(a.frobenius().code());
            EXPECT_EQ(a.frobenius().frobenius_root(), a);
            for (const Fq& b : k->elements()) {
                EXPECT_EQ((a + b).frobenius(), a.frobenius() + b.frobenius());
                EXPECT_EQ((a * b).frobenius(), a.frobenius() * b.frobenius());
            }
        }
        EXPECT_EQ(image.size(), k->order());
    }
}

TEST(FiniteField, EmbeddingIsARingMap) {
    const GaloisField& from = F3();
    const GaloisField& to = F9();
    for (const Fq& a : from.elements())
        for (const Fq& b : from.elements()) {
            EXPECT_EQ(embed(a + b, to), embed(a, to) + embed(b, to));
            EXPECT_EQ(embed(a * b, to), embed(a, to) * embed(b, to));
        }
}

TEST(Polynomial, DivisionAndGcd) {
    Rng rng(1);
    for (int i = 0; i < 50; ++i) {
        const Poly a = random_poly(F3(), 6, rng);
        Poly b = random_poly(F3(), 3, rng);
        if (b.is_zero()) continue;
        const auto [quo, rem] = a.divmod(b);
        EXPECT_EQ(quo * b + rem, a);
        EXPECT_LT(rem.degree(), b.degree());
        const Poly g = gcd(a, b);
        if (!g.is_zero()) {
            EXPECT_TRUE((a % g).is_zero());
            EXPECT_TRUE((b % g).is_zero());
        }
    }
}

TEST(Polynomial, FactorizationReconstructs) {
    Rng rng(2);
    for (const GaloisField* k : {&F3(), &F4(), &F9()}) {
        for (int i = 0; i < 20; ++i) {
            const Poly f = random_poly(*k, 7, rng);
            if (f.degree() < 1) continue;
            const Factorization fac = factor(f);
            Poly prod = Poly::constant(fac.unit);
            for (const auto& pf : fac.factors) {
                EXPECT_TRUE(is_irreducible(pf.factor));
                EXPECT_TRUE(pf.factor.leading().is_one());
                prod = prod * pf.factor.pow(static_cast<std::uint64_t>(pf.multiplicity));
            }
            EXPECT_EQ(prod, f);
        }
    }
}

TEST(Polynomial, SplittingOfTSquaredPlusOne) {
    EXPECT_TRUE(is_irreducible(poly("T^2 + 1")));
    EXPECT_EQ(factor(poly("T^2 + 1", F9())).factors.size(), 2u);
}

TEST(RationalFunction, CanonicalForm) {
    EXPECT_EQ(rf("(T^2 - 1)/(T - 1)"), rf("T + 1"));
    EXPECT_EQ(rf("(2*T)/(2*T^2 + 2)"), rf("T/(T^2 + 1)"));
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        const RationalFunction x = random_nonzero_rational_function(F3(), 4, rng);
        EXPECT_TRUE(gcd(x.numerator(), x.denominator()).is_one());
        EXPECT_TRUE(x.denominator().leading().is_one());
        EXPECT_TRUE((x * x.inverse()).is_one());
        const RationalFunction y = random_rational_function(F3(), 3, rng);
        EXPECT_EQ((x + y) - y, x);
    }
}

TEST(Ore, TwistRelation) {
    const RationalFunction c = rf("T + 1");
    const OrePolynomial tau(1, {rf("0"), rf("1")});
    const OrePolynomial prod = tau * OrePolynomial::constant(1, c);
    EXPECT_EQ(prod, OrePolynomial(1, {rf("0"), c.pow(3)}));
    const RationalFunction x = rf("T^2/(T + 2)");
    EXPECT_EQ(prod.apply(x), c.pow(3) * x.pow(3));
}

TEST(Ore, IdentityAndCarlitzSquare) {
    const DrinfeldModule C = carlitz3();
    const OrePolynomial one = OrePolynomial::constant(1, rf("1"));
    EXPECT_EQ(C.phi_T() * one, C.phi_T());
    // T(Tx + x^3) + (Tx + x^3)^3 = T^2 x + (T + T^3) x^3 + x^9.
    EXPECT_EQ(C.phi_T() * C.phi_T(), OrePolynomial(1, {rf("T^2"), rf("T + T^3"), rf("1")}));
}

TEST(Ore, DegreeOfProductIsAdditive) {
    Rng rng(4);
    for (int i = 0; i < 20; ++i) {
        std::vector<RationalFunction> fa, fb;
        for (int j = 0; j < 3; ++j) fa.push_back(random_rational_function(F3(), 2, rng));
        for (int j = 0; j < 2; ++j) fb.push_back(random_rational_function(F3(), 2, rng));
        fa.push_back(random_nonzero_rational_function(F3(), 2, rng));
        fb.push_back(random_nonzero_rational_function(F3(), 2, rng));
        const OrePolynomial a(1, fa), b(1, fb);
        EXPECT_EQ((a * b).degree(), a.degree() + b.degree());
    }
}

TEST(DrinfeldImage, Examples) {
    const DrinfeldModule C = carlitz3();
    EXPECT_EQ(C.image(poly("1")), OrePolynomial::constant(1, rf("1")));
    EXPECT_EQ(C.image(poly("T^2")), OrePolynomial(1, {rf("T^2"), rf("T + T^3"), rf("1")}));
    EXPECT_EQ(C.image(poly("2")), OrePolynomial::constant(1, rf("2")));
    EXPECT_EQ(C.image(poly("T^3 + T")).degree(), 3);
    EXPECT_EQ(C.image(poly("T^3 + T"))[0], rf("T^3 + T"));
}

TEST(DrinfeldImage, RingMorphismLaw) {
    Rng rng(5);
    const std::vector<DrinfeldModule> modules = {
        DrinfeldModule::carlitz(F2()),
        module(F2(), 1, {"T", "T + 1", "1"}),
        DrinfeldModule::carlitz(F3()),
        module(F3(), 1, {"T", "1/(T + 1)"}),
    };
    for (const auto& phi : modules) {
        const int max_degree = phi.q() == 2 ? 4 : 3;
        for (int i = 0; i < 6; ++i) {
            const Poly a = random_poly(phi.fq(), max_degree, rng);
            const Poly b = random_poly(phi.fq(), max_degree, rng);
            EXPECT_EQ(phi.image(a + b), phi.image(a) + phi.image(b)) << phi.to_string();
            EXPECT_EQ(phi.image(a * b), phi.image(a) * phi.image(b)) << phi.to_string();
            if (!a.is_zero()) {
                EXPECT_EQ(phi.image(a).degree(), static_cast<int>(phi.rank()) * a.degree());
                EXPECT_EQ(phi.image(a)[0], phi.structure_map(a));
            }
        }
    }
}

TEST(DrinfeldCharacteristic, Classification) {
    EXPECT_TRUE(carlitz3().characteristic().generic);
    const auto fin = module(F2(), 2, {"w", "1"}).characteristic();
    ASSERT_FALSE(fin.generic);
    EXPECT_EQ(*fin.prime, poly("T^2 + T + 1", F2()));
    const auto zero = module(F3(), 1, {"0", "1"}).characteristic();
    ASSERT_FALSE(zero.generic);
    EXPECT_EQ(*zero.prime, poly("T"));
}

TEST(AdditiveForm, Transcription) {
    const auto f = additive_form(carlitz3().phi_T());
    EXPECT_EQ(f.r0(), 0u);
    EXPECT_EQ(f.coefficient(0), rf("T"));
    const auto g = additive_form(OrePolynomial(1, {rf("0"), rf("0"), rf("1")}));
    EXPECT_EQ(g.r0(), 2u);
    EXPECT_EQ(g.evaluate(rf("T")), rf("T^9"));
    const auto h = additive_form(carlitz3().image(poly("T^2")));
    const RationalFunction x = rf("T + 2");
    EXPECT_EQ(h.evaluate(x), rf("T^2") * x + rf("T + T^3") * x.pow(3) + x.pow(9));
    const auto z = additive_form(OrePolynomial(1, {rf("0")}));
    EXPECT_FALSE(z.r0().has_value());
}

TEST(AdditiveForm, AdditiveAndFqLinear) {
    Rng rng(6);
    const DrinfeldModule phi = module(F3(), 2, {"T", "w*T + 1", "1"});
    for (int i = 0; i < 30; ++i) {
        const auto f = additive_form(phi.image(random_poly(F3(), 2, rng)));
        const RationalFunction x = random_rational_function(F9(), 2, rng);
        const RationalFunction y = random_rational_function(F9(), 2, rng);
        EXPECT_EQ(f.evaluate(x + y), f.evaluate(x) + f.evaluate(y));
        const RationalFunction c = RationalFunction::constant(embed(random_element(F3(), rng), F9()));
        EXPECT_EQ(f.evaluate(c * x), c * f.evaluate(x));
    }
}
