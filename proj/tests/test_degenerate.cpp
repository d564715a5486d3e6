#include "cuboid/degenerate.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace cuboid;

namespace {

const DegenerateReport& report() {
    static const DegenerateReport rep = analyze_degenerate(shared_system());
    return rep;
}

}  // namespace

TEST(Degenerate, ResultantShape) {
    EXPECT_EQ(report().resultant_degree, 27U);
    EXPECT_EQ(report().linear_factors, (RootList{{Rational(2), 6}}));
    EXPECT_EQ(report().cofactor_degree, 21U);
    EXPECT_FALSE(report().cofactor_has_rational_roots);
    EXPECT_TRUE(report().cofactor.is_monic());
}

TEST(Degenerate, CofactorLeadingTerms) {
    // Second coefficient and constant term of the monic degree-21 cofactor.
    EXPECT_EQ(report().cofactor.coeff(20), Rational(285345, 2048));
    EXPECT_EQ(report().cofactor.coeff(0), Rational(2099601, 262144));
}

TEST(Degenerate, ResultantVanishesOnLocus) {
    // Independent check: Res_s(L, C) at a = 2 computed from scalar polynomials.
    QPoly L2 = L_at_a(shared_system(), Rational(2));
    QPoly C2 = C_at_a(shared_system(), Rational(2));
    EXPECT_TRUE(oracle::resultant(L2, C2).is_zero());
    QPoly L3 = L_at_a(shared_system(), Rational(3));
    QPoly C3 = C_at_a(shared_system(), Rational(3));
    EXPECT_FALSE(oracle::resultant(L3, C3).is_zero());
    EXPECT_TRUE(report().primitive_resultant.eval(Rational(2)).is_zero());
    EXPECT_FALSE(report().primitive_resultant.eval(Rational(3)).is_zero());
}

TEST(Degenerate, GcdAtTwo) {
    ASSERT_EQ(report().gcds.size(), 1U);
    const LocusGcd& g = report().gcds[0];
    EXPECT_EQ(g.a0, Rational(2));
    EXPECT_EQ(g.gcd, (QPoly{Rational(1), Rational(-1), Rational(-1), Rational(1)}));
    EXPECT_EQ(g.roots, (RootList{{Rational(-1), 1}, {Rational(1), 2}}));
}

TEST(Degenerate, Locus) {
    std::set<std::pair<Rational, Rational>> got(report().locus_points.begin(), report().locus_points.end());
    EXPECT_EQ(got, (std::set<std::pair<Rational, Rational>>{{Rational(1), Rational(2)}, {Rational(-1), Rational(2)}}));
    for (const auto& [s0, a0] : report().locus_points) {
        EXPECT_TRUE(mp_evaluate(shared_system().L(), {{"s", s0}, {"a", a0}}).is_zero());
        EXPECT_TRUE(mp_evaluate(shared_system().C(), {{"s", s0}, {"a", a0}}).is_zero());
    }
}

TEST(Degenerate, FactorPattern) {
    FactorPatternCheck fp = factor_pattern_check(shared_system());
    EXPECT_TRUE(fp.ok);
    EXPECT_EQ(fp.L.cofactor, (QPoly{Rational(18), Rational(-14), Rational(-13), Rational(1)}));
    EXPECT_EQ(fp.C.cofactor, (QPoly{Rational(-7), Rational(9), Rational(15, 4), Rational(-19, 4), Rational(1)}));
    EXPECT_TRUE(oracle::rational_roots(fp.L.cofactor).empty());
    EXPECT_TRUE(oracle::rational_roots(fp.C.cofactor).empty());
}
