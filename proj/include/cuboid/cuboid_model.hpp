#pragma once

// Closed-form construction of the second cuboid polynomial, its associated
// quintic P_s(x), the remainder coefficients u, v, m, n, the linearization
// (L, C) and the obstruction polynomial F(s, a), with the identity checks
// that tie them together.

#include "cuboid/exact_arith.hpp"
#include "cuboid/mpoly.hpp"
#include "cuboid/upoly.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cuboid {

inline const VarSet& ring_s() {
    static const VarSet vs{"s"};
    return vs;
}
inline const VarSet& ring_sa() {
    static const VarSet vs{"s", "a"};
    return vs;
}
inline const VarSet& ring_sab() {
    static const VarSet vs{"s", "a", "b"};
    return vs;
}

/// Coprime positive integers p != q.
class CuboidParams {
public:
    CuboidParams(BigInt p, BigInt q) : p_(std::move(p)), q_(std::move(q)) {
        if (p_.sign() <= 0 || q_.sign() <= 0) throw std::invalid_argument("cuboid parameters must be positive");
        if (!int_gcd(p_, q_).is_one()) throw std::invalid_argument("cuboid parameters must be coprime");
        if (p_ == q_) throw std::invalid_argument("cuboid parameters must differ (p != q)");
    }
    [[nodiscard]] const BigInt& p() const { return p_; }
    [[nodiscard]] const BigInt& q() const { return q_; }
    /// s = (p/q)^2
    [[nodiscard]] Rational s() const { return Rational(p_, q_).pow(2); }

private:
    BigInt p_, q_;
};

/// Q_{p,q}(t) for arbitrary integers p, q (no domain check).
inline QPoly qpq_polynomial(const BigInt& p, const BigInt& q) {
    const BigInt p2 = p.pow(2), q2 = q.pow(2);
    const BigInt p4 = p2.pow(2), q4 = q2.pow(2);
    const BigInt p6 = p2.pow(3), q6 = q2.pow(3);
    const BigInt p8 = p4.pow(2), q8 = q4.pow(2);
    std::vector<Rational> c(11, Rational(0));
    c[10] = Rational(1);
    c[8] = Rational((BigInt(2) * q2 + p2) * (BigInt(3) * q2 - BigInt(2) * p2));
    c[6] = Rational(q8 + BigInt(10) * p2 * q6 + BigInt(4) * p4 * q4 - BigInt(14) * p6 * q2 + p8);
    c[4] = Rational(-(p2 * q2) * (q8 - BigInt(14) * p2 * q6 + BigInt(4) * p4 * q4 + BigInt(10) * p6 * q2 + p8));
    c[2] = Rational(-(p6 * q6) * (q2 + BigInt(2) * p2) * (BigInt(-2) * q2 + BigInt(3) * p2));
    c[0] = Rational(-(p.pow(10) * q.pow(10)));
    return QPoly(std::move(c));
}

inline QPoly build_Qpq(const CuboidParams& params) { return qpq_polynomial(params.p(), params.q()); }

/// Q_r(u) as a polynomial in [r, u].
inline MPoly build_Qr_symbolic() {
    static const VarSet vs{"r", "u"};
    const MPoly r = MPoly::variable(vs, "r");
    const MPoly u = MPoly::variable(vs, "u");
    const MPoly one(vs, Rational(1));
    auto k = [&](long c) { return MPoly(vs, Rational(c)); };
    const MPoly r2 = r.pow(2);
    return u.pow(10) + (k(2) + r2) * (k(3) - k(2) * r2) * u.pow(8) +
           (one + k(10) * r2 + k(4) * r.pow(4) - k(14) * r.pow(6) + r.pow(8)) * u.pow(6) -
           r2 * (one - k(14) * r2 + k(4) * r.pow(4) + k(10) * r.pow(6) + r.pow(8)) * u.pow(4) -
           r.pow(6) * (one + k(2) * r2) * (k(-2) + k(3) * r2) * u.pow(2) - r.pow(10);
}

/// P_s(x) as a monic quintic in x with coefficients in Q[s].
inline UPoly<MPoly> build_Ps_symbolic() {
    const VarSet& vs = ring_s();
    const MPoly s = MPoly::variable(vs, "s");
    const MPoly one(vs, Rational(1));
    auto k = [&](long c) { return MPoly(vs, Rational(c)); };
    std::vector<MPoly> c(6, MPoly(vs));
    c[5] = one;
    c[4] = (k(2) + s) * (k(3) - k(2) * s);
    c[3] = one + k(10) * s + k(4) * s.pow(2) - k(14) * s.pow(3) + s.pow(4);
    c[2] = -(s * (one - k(14) * s + k(4) * s.pow(2) + k(10) * s.pow(3) + s.pow(4)));
    c[1] = -(s.pow(3) * (one + k(2) * s) * (k(-2) + k(3) * s));
    c[0] = -s.pow(5);
    return UPoly<MPoly>(MPoly(vs), std::move(c));
}

/// P_{s0}(x) over Q.
inline QPoly ps_at(const Rational& s0) {
    static const UPoly<MPoly> ps = build_Ps_symbolic();
    std::vector<Rational> c;
    for (const auto& m : ps.coeffs()) c.push_back(mp_evaluate(m, {{"s", s0}}));
    return QPoly(std::move(c));
}

/// Transcribed remainder coefficients u, v, m, n in Q[s, a].
struct RemainderCoefficients {
    MPoly u, v, m, n;
};

inline RemainderCoefficients transcribed_coefficients() {
    const VarSet& vs = ring_sa();
    const MPoly s = MPoly::variable(vs, "s");
    const MPoly a = MPoly::variable(vs, "a");
    const MPoly one(vs, Rational(1));
    auto k = [&](long c) { return MPoly(vs, Rational(c)); };
    RemainderCoefficients rc;
    rc.u = k(-3) * a.pow(2) + (k(12) - k(4) * s.pow(2) - k(2) * s) * a +
           (-s.pow(4) + k(14) * s.pow(3) - k(4) * s.pow(2) - k(10) * s - one);
    rc.v = a.pow(4) + (k(2) * s.pow(2) + s - k(6)) * a.pow(3) +
           (s.pow(4) - k(14) * s.pow(3) + k(4) * s.pow(2) + k(10) * s + one) * a.pow(2) +
           (s.pow(5) + k(10) * s.pow(4) + k(4) * s.pow(3) - k(14) * s.pow(2) + s) * a +
           (k(-6) * s.pow(5) + s.pow(4) + k(2) * s.pow(3));
    rc.m = k(-2) * a - k(2) * s.pow(2) - s + k(6);
    rc.n = a.pow(3) + (k(2) * s.pow(2) + s - k(6)) * a.pow(2) +
           (s.pow(4) - k(14) * s.pow(3) + k(4) * s.pow(2) + k(10) * s + one) * a +
           (s.pow(5) + k(10) * s.pow(4) + k(4) * s.pow(3) - k(14) * s.pow(2) + s);
    return rc;
}

/// The bundle (u, v, m, n, L, C, F) over Q[s, a]. Immutable once built.
class ObstructionSystem {
public:
    /// Derives L, C, F from u, v, m, n and re-verifies the defining identities.
    static ObstructionSystem from_coefficients(const RemainderCoefficients& rc) {
        const MPoly s5 = MPoly::variable(ring_sa(), "s").pow(5);
        ObstructionSystem sys;
        sys.u_ = mp_embed(rc.u, ring_sa());
        sys.v_ = mp_embed(rc.v, ring_sa());
        sys.m_ = mp_embed(rc.m, ring_sa());
        sys.n_ = mp_embed(rc.n, ring_sa());
        sys.L_ = sys.n_ - sys.m_ * sys.u_;
        sys.C_ = sys.m_ * sys.v_ + s5;
        sys.F_ = sys.C_.pow(2) + sys.u_ * sys.L_ * sys.C_ + sys.v_ * sys.L_.pow(2);
        sys.verify_identities();
        return sys;
    }

    [[nodiscard]] const MPoly& u() const { return u_; }
    [[nodiscard]] const MPoly& v() const { return v_; }
    [[nodiscard]] const MPoly& m() const { return m_; }
    [[nodiscard]] const MPoly& n() const { return n_; }
    [[nodiscard]] const MPoly& L() const { return L_; }
    [[nodiscard]] const MPoly& C() const { return C_; }
    [[nodiscard]] const MPoly& F() const { return F_; }

private:
    ObstructionSystem() = default;

    void verify_identities() const {
        const MPoly s5 = MPoly::variable(ring_sa(), "s").pow(5);
        auto require_zero = [](const MPoly& diff, const char* what) {
            if (!diff.is_zero()) throw std::logic_error(std::string("identity violated: ") + what + "; residue " + diff.to_string());
        };
        require_zero(L_ - (n_ - m_ * u_), "L = n - m*u");
        require_zero(C_ - (m_ * v_ + s5), "C = m*v + s^5");
        require_zero(F_ - (C_.pow(2) + u_ * L_ * C_ + v_ * L_.pow(2)), "F = C^2 + u*L*C + v*L^2");
    }

    MPoly u_, v_, m_, n_, L_, C_, F_;
};

/// Builds the system from the transcribed closed forms and checks the degrees
/// of F. Throws std::logic_error on any inconsistency.
inline ObstructionSystem build_system() {
    ObstructionSystem sys = ObstructionSystem::from_coefficients(transcribed_coefficients());
    if (!(sys.F().degree_in("s") == 16U) || !(sys.F().degree_in("a") == 10U)) {
        std::ostringstream os;
        os << "unexpected degrees of F: deg_s=" << sys.F().degree_in("s") << " deg_a=" << sys.F().degree_in("a");
        throw std::logic_error(os.str());
    }
    return sys;
}

/// Process-wide read-only instance.
inline const ObstructionSystem& shared_system() {
    static const ObstructionSystem sys = build_system();
    return sys;
}

/// R1 = b^2 + u b + v and R0 = m b^2 + n b - s^5 over Q[s, a, b].
struct RemainderPair {
    MPoly R1, R0;
};

inline RemainderPair remainder_pair(const ObstructionSystem& sys) {
    const VarSet& vs = ring_sab();
    const MPoly b = MPoly::variable(vs, "b");
    const MPoly s = MPoly::variable(vs, "s");
    RemainderPair rp;
    rp.R1 = b.pow(2) + mp_embed(sys.u(), vs) * b + mp_embed(sys.v(), vs);
    rp.R0 = mp_embed(sys.m(), vs) * b.pow(2) + mp_embed(sys.n(), vs) * b - s.pow(5);
    return rp;
}

struct RemainderCheck {
    RemainderPair model;
    MPoly r1_division, r0_division;  ///< coefficients of x and 1 in the remainder
    UPoly<MPoly> quotient;
    Degree deg_b_r1 = Degree::minus_infinity();
    Degree deg_b_r0 = Degree::minus_infinity();
    bool r1_ok = false;
    bool r0_ok = false;
    [[nodiscard]] bool ok() const { return r1_ok && r0_ok; }
};

/// Divides P_s(x) by x^2 + a x + b over Q[s, a, b] and compares the remainder
/// with the (R1, R0) model built from u, v, m, n.
inline RemainderCheck remainder_crosscheck(const ObstructionSystem& sys) {
    const VarSet& vs = ring_sab();
    const UPoly<MPoly> ps_s = build_Ps_symbolic();
    const MPoly zero(vs);
    const UPoly<MPoly> ps = up_map(ps_s, zero, [&](const MPoly& c) { return mp_embed(c, vs); });
    const UPoly<MPoly> divisor(zero, {MPoly::variable(vs, "b"), MPoly::variable(vs, "a"), MPoly(vs, Rational(1))});
    auto [q, r] = up_divrem(ps, divisor);

    RemainderCheck out{remainder_pair(sys), r.coeff(1), r.coeff(0), q};
    out.deg_b_r1 = out.r1_division.degree_in("b");
    out.deg_b_r0 = out.r0_division.degree_in("b");
    out.r1_ok = (out.r1_division - out.model.R1).is_zero();
    out.r0_ok = (out.r0_division - out.model.R0).is_zero();
    return out;
}

struct ResultantCheck {
    MPoly resultant;
    Degree deg_s = Degree::minus_infinity();
    Degree deg_a = Degree::minus_infinity();
    bool ok = false;
};

/// Res_b(R1, R0) by Sylvester determinant, compared with F.
inline ResultantCheck resultant_crosscheck(const ObstructionSystem& sys) {
    const RemainderPair rp = remainder_pair(sys);
    const MPoly res = up_resultant(mp_to_upoly(rp.R1, "b"), mp_to_upoly(rp.R0, "b"));
    ResultantCheck out;
    out.resultant = mp_rename(res, ring_sa());
    out.deg_s = out.resultant.degree_in("s");
    out.deg_a = out.resultant.degree_in("a");
    out.ok = (out.resultant - sys.F()).is_zero();
    return out;
}

struct NormalizationCheck {
    bool ok = true;
    std::optional<Rational> witness;  ///< first sample where the sides differ
};

/// Checks Q_{p,q}(t0) = q^20 * P_s(t0^2 / q^4) with s = (p/q)^2 at each sample.
inline NormalizationCheck normalization_check(const CuboidParams& params, const std::vector<Rational>& samples) {
    if (samples.empty()) throw std::invalid_argument("normalization_check needs at least one sample");
    const QPoly qpq = build_Qpq(params);
    const QPoly ps = ps_at(params.s());
    const Rational q(params.q());
    const Rational q4 = q.pow(4);
    const Rational q20 = q.pow(20);
    NormalizationCheck out;
    for (const auto& t0 : samples) {
        Rational lhs = qpq.eval(t0);
        Rational rhs = q20 * ps.eval(t0 * t0 / q4);
        if (lhs != rhs) {
            out.ok = false;
            out.witness = t0;
            return out;
        }
    }
    return out;
}

struct QuarticLift {
    QPoly quartic;          ///< t^4 + a q^4 t^2 + b q^8
    QPoly remainder;        ///< Q_{p,q} mod quartic
    bool divides = false;
    bool outside_cuboid_domain = false;  ///< p, q not coprime positive with p != q
};

/// Lifts a quadratic divisor x^2 + a x + b of P_s to the even quartic in t
/// and tests whether it divides Q_{p,q}(t). Accepts any integers p, q.
inline QuarticLift lift_quartic(const BigInt& p, const BigInt& q, const Rational& a, const Rational& b) {
    QuarticLift out;
    try {
        CuboidParams check(p, q);
        (void)check;
    } catch (const std::invalid_argument&) {
        out.outside_cuboid_domain = true;
    }
    const Rational qq(q);
    out.quartic = QPoly({b * qq.pow(8), Rational(0), a * qq.pow(4), Rational(0), Rational(1)});
    out.remainder = up_divrem(qpq_polynomial(p, q), out.quartic).remainder;
    out.divides = out.remainder.is_zero();
    return out;
}

inline QuarticLift lift_quartic(const CuboidParams& params, const Rational& a, const Rational& b) {
    return lift_quartic(params.p(), params.q(), a, b);
}

}  // namespace cuboid
