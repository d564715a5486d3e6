#include "cuboid/cuboid_model.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace cuboid;

namespace {

QPoly linear(long root) { return QPoly{Rational(-root), Rational(1)}; }

std::pair<BigInt, BigInt> random_params(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> d(1, 60);
    while (true) {
        long p = d(rng), q = d(rng);
        if (p != q && std::gcd(p, q) == 1) return {BigInt(p), BigInt(q)};
    }
}

}  // namespace

TEST(CuboidModel, Degrees) {
    const auto& sys = shared_system();
    EXPECT_EQ(sys.F().degree_in("s"), 16U);
    EXPECT_EQ(sys.F().degree_in("a"), 10U);
    EXPECT_EQ(sys.F().total_degree(), 17U);
    EXPECT_EQ(sys.L().degree_in("a"), 3U);
}

TEST(CuboidModel, LeadingCoefficientInA) {
    // The a^10 coefficient is the constant -1, so no fiber F(s0, .) vanishes.
    const auto& F = shared_system().F();
    UPoly<MPoly> Fa = mp_to_upoly(F, "a");
    EXPECT_EQ(Fa.lead(), MPoly(Fa.lead().vars(), Rational(-1)));
}

TEST(CuboidModel, RemainderModel) {
    const RemainderCheck rc = remainder_crosscheck(shared_system());
    EXPECT_TRUE(rc.r1_ok);
    EXPECT_TRUE(rc.r0_ok);
    EXPECT_EQ(rc.deg_b_r1, 2U);
    EXPECT_EQ(rc.deg_b_r0, 2U);
    EXPECT_EQ(rc.quotient.degree(), 3U);
}

TEST(CuboidModel, ResultantEqualsF) {
    const ResultantCheck res = resultant_crosscheck(shared_system());
    EXPECT_TRUE(res.ok);
    EXPECT_EQ(res.deg_s, 16U);
    EXPECT_EQ(res.deg_a, 10U);
}

TEST(CuboidModel, TamperedCoefficientIsDetected) {
    RemainderCoefficients rc = transcribed_coefficients();
    rc.u = rc.u + MPoly::variable(ring_sa(), "a");
    const ObstructionSystem bad = ObstructionSystem::from_coefficients(rc);
    const RemainderCheck check = remainder_crosscheck(bad);
    EXPECT_FALSE(check.r1_ok);
    // F is derived from the tampered coefficients, so Res_b(R1, R0) = F still holds.
    EXPECT_TRUE(resultant_crosscheck(bad).ok);
}

TEST(CuboidModel, SpecialFiberAtOne) {
    QPoly a{Rational(0), Rational(1)};
    QPoly expected = -(a.pow(4) * linear(2).pow(6));
    EXPECT_EQ(mp_to_qpoly(mp_eval_partial(shared_system().F(), {{"s", Rational(1)}}), "a"), expected);
    EXPECT_EQ(ps_at(Rational(1)), linear(1) * linear(-1).pow(4));
}

TEST(CuboidModel, QuinticAtZero) {
    // P_0 = x^3 (x^2 + 6x + 1)
    QPoly x{Rational(0), Rational(1)};
    EXPECT_EQ(ps_at(Rational(0)), x.pow(3) * QPoly({Rational(1), Rational(6), Rational(1)}));
}

TEST(CuboidModel, QpqIsEven) {
    std::mt19937_64 rng(53);
    for (int i = 0; i < 50; ++i) {
        auto [p, q] = random_params(rng);
        QPoly f = build_Qpq(CuboidParams(p, q));
        EXPECT_EQ(f.degree(), 10U);
        for (std::size_t k = 1; k < 11; k += 2) EXPECT_TRUE(f.coeff(k).is_zero());
    }
}

TEST(CuboidModel, QpqWeightedHomogeneous) {
    // Q_{lp, lq}(l^2 t) = l^20 Q_{p,q}(t) with weights deg p = deg q = 1, deg t = 2.
    std::mt19937_64 rng(59);
    std::uniform_int_distribution<long> ld(-5, 5);
    for (int i = 0; i < 50; ++i) {
        auto [p, q] = random_params(rng);
        long l = 0;
        while (l == 0) l = ld(rng);
        QPoly base = qpq_polynomial(p, q);
        QPoly scaled = qpq_polynomial(BigInt(l) * p, BigInt(l) * q);
        const Rational l2(l * l);
        for (long t = -3; t <= 3; ++t) {
            EXPECT_EQ(scaled.eval(l2 * Rational(t)), Rational(l).pow(20) * base.eval(Rational(t)));
        }
    }
}

TEST(CuboidModel, NormalizationToQuintic) {
    std::mt19937_64 rng(61);
    for (int i = 0; i < 50; ++i) {
        auto [p, q] = random_params(rng);
        NormalizationCheck nc = normalization_check(CuboidParams(p, q), {Rational(0), Rational(1), Rational(-2), Rational(7, 3)});
        EXPECT_TRUE(nc.ok);
    }
    EXPECT_THROW(normalization_check(CuboidParams(BigInt(1), BigInt(2)), {}), std::invalid_argument);
}

TEST(CuboidModel, QrIsQuinticInSquare) {
    // Q_r(u) = P_s(u^2) with s = r^2.
    static const VarSet sx{"s", "x"};
    static const VarSet ru{"r", "u"};
    MPoly ps = upoly_to_mp(build_Ps_symbolic(), "x", sx);
    MPoly r = MPoly::variable(ru, "r");
    MPoly u = MPoly::variable(ru, "u");
    MPoly composed = mp_substitute(ps, {{"s", r.pow(2)}, {"x", u.pow(2)}}, ru);
    EXPECT_EQ(composed, build_Qr_symbolic());
}

TEST(CuboidParams, Validation) {
    EXPECT_NO_THROW(CuboidParams(BigInt(2), BigInt(3)));
    EXPECT_THROW(CuboidParams(BigInt(0), BigInt(3)), std::invalid_argument);
    EXPECT_THROW(CuboidParams(BigInt(-2), BigInt(3)), std::invalid_argument);
    EXPECT_THROW(CuboidParams(BigInt(2), BigInt(4)), std::invalid_argument);
    EXPECT_THROW(CuboidParams(BigInt(5), BigInt(5)), std::invalid_argument);
    EXPECT_EQ(CuboidParams(BigInt(2), BigInt(3)).s(), Rational(4, 9));
}

TEST(QuarticLift, KnownDivisorOutsideDomain) {
    // P_1 has the quadratic factor x^2 - 1, so t^4 - 1 divides Q_{1,1}.
    QuarticLift lift = lift_quartic(BigInt(1), BigInt(1), Rational(0), Rational(-1));
    EXPECT_TRUE(lift.outside_cuboid_domain);
    EXPECT_TRUE(lift.divides);
    EXPECT_EQ(lift.quartic, (QPoly{Rational(-1), Rational(0), Rational(0), Rational(0), Rational(1)}));
}

TEST(QuarticLift, NonDivisor) {
    QuarticLift lift = lift_quartic(CuboidParams(BigInt(2), BigInt(1)), Rational(3), Rational(5));
    EXPECT_FALSE(lift.outside_cuboid_domain);
    EXPECT_FALSE(lift.divides);
    EXPECT_FALSE(lift.remainder.is_zero());
}

TEST(QuarticLift, ScalesWithDenominator) {
    // Any quadratic divisor of P_s lifts to a divisor of Q_{p,q} with s = (p/q)^2.
    // P_0 gives x^2 as a divisor; with p = 0 the lift is t^4.
    QuarticLift lift = lift_quartic(BigInt(0), BigInt(3), Rational(0), Rational(0));
    EXPECT_TRUE(lift.outside_cuboid_domain);
    EXPECT_TRUE(lift.divides);
}
