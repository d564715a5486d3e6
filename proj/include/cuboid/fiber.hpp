#pragma once

// Fibers of the obstruction curve over a fixed rational s0: rational roots
// of F(s0, a), recovery of b = C/L, and explicit 2+3 factorizations of
// P_{s0}(x).

#include "cuboid/cuboid_model.hpp"
#include "cuboid/upoly.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace cuboid {

struct FactorWitness {
    Rational a0;
    Rational b0;
    QPoly cubic;  ///< P_{s0}(x) / (x^2 + a0 x + b0)
    bool r1_ok = false;
    bool r0_ok = false;
};

struct DegenerateHit {
    Rational a0;      ///< L(s0, a0) = 0
    bool c_zero = false;
};

struct FiberResult {
    Rational s0;
    RootList roots;
    std::vector<FactorWitness> witnesses;
    std::vector<DegenerateHit> degenerate_hits;
};

/// F(s0, a) as a polynomial in a.
inline QPoly fiber_polynomial(const ObstructionSystem& sys, const Rational& s0) {
    return mp_to_qpoly(mp_eval_partial(sys.F(), {{"s", s0}}), "a");
}

namespace detail {

inline Rational eval_sa(const MPoly& f, const Rational& s0, const Rational& a0) {
    return mp_evaluate(f, {{"s", s0}, {"a", a0}});
}

inline QPoly quadratic(const Rational& a0, const Rational& b0) { return QPoly({b0, a0, Rational(1)}); }

/// Builds a witness for x^2 + a0 x + b0 if it divides P_{s0} exactly.
inline std::optional<FactorWitness> try_witness(const ObstructionSystem& sys, const Rational& s0, const Rational& a0,
                                                const Rational& b0) {
    const Rational u0 = eval_sa(sys.u(), s0, a0);
    const Rational v0 = eval_sa(sys.v(), s0, a0);
    const Rational m0 = eval_sa(sys.m(), s0, a0);
    const Rational n0 = eval_sa(sys.n(), s0, a0);
    FactorWitness w{a0, b0, QPoly(), false, false};
    w.r1_ok = (b0 * b0 + u0 * b0 + v0).is_zero();
    w.r0_ok = (m0 * b0 * b0 + n0 * b0 - s0.pow(5)).is_zero();
    auto [q, r] = up_divrem(ps_at(s0), quadratic(a0, b0));
    if (!r.is_zero()) return std::nullopt;
    w.cubic = std::move(q);
    return w;
}

}  // namespace detail

/// Analyzes the fiber s = s0. Roots are processed in ascending order.
inline FiberResult fiber(const ObstructionSystem& sys, const Rational& s0) {
    FiberResult out{s0, {}, {}, {}};
    const QPoly f = fiber_polynomial(sys, s0);
    if (f.is_zero()) return out;
    out.roots = up_rational_roots(f);
    for (const auto& [a0, mult] : out.roots) {
        const Rational L0 = detail::eval_sa(sys.L(), s0, a0);
        const Rational C0 = detail::eval_sa(sys.C(), s0, a0);
        if (L0.is_zero()) {
            out.degenerate_hits.push_back({a0, C0.is_zero()});
            continue;
        }
        if (auto w = detail::try_witness(sys, s0, a0, C0 / L0)) out.witnesses.push_back(std::move(*w));
    }
    return out;
}

struct FiberPolyReport {
    QPoly monic;
    Rational leading_unit;
};

/// F(s0, a) split as leading_unit * monic.
inline FiberPolyReport fiber_poly_report(const ObstructionSystem& sys, const Rational& s0) {
    const QPoly f = fiber_polynomial(sys, s0);
    if (f.is_zero()) throw std::domain_error("fiber polynomial vanishes identically");
    return {up_monic(f), f.lead()};
}

struct Factor23 {
    QPoly quadratic;
    QPoly cubic;
};

/// A 2+3 factorization of P_{s0}(x) over Q, if one exists. Non-degenerate
/// roots of the fiber come first; on the degenerate branch L = C = 0, b is
/// found among the rational roots of R1(s0, a0, b).
inline std::optional<Factor23> factor_23(const ObstructionSystem& sys, const Rational& s0) {
    const FiberResult fr = fiber(sys, s0);
    if (!fr.witnesses.empty()) {
        const auto& w = fr.witnesses.front();
        return Factor23{detail::quadratic(w.a0, w.b0), w.cubic};
    }
    for (const auto& hit : fr.degenerate_hits) {
        if (!hit.c_zero) continue;
        const Rational u0 = detail::eval_sa(sys.u(), s0, hit.a0);
        const Rational v0 = detail::eval_sa(sys.v(), s0, hit.a0);
        for (const auto& [b0, mult] : up_rational_roots(QPoly({v0, u0, Rational(1)}))) {
            if (auto w = detail::try_witness(sys, s0, hit.a0, b0); w && w->r1_ok && w->r0_ok) {
                return Factor23{detail::quadratic(w->a0, w->b0), w->cubic};
            }
        }
    }
    return std::nullopt;
}

}  // namespace cuboid
