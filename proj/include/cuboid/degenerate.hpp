#pragma once

// The degenerate locus L = C = 0: eliminate s with a resultant, keep the
// rational linear factors in a, and intersect L(s, a0), C(s, a0) via gcd.

#include "cuboid/cuboid_model.hpp"
#include "cuboid/upoly.hpp"

#include <utility>
#include <vector>

namespace cuboid {

struct LocusGcd {
    Rational a0;
    QPoly gcd;        ///< monic gcd_s(L(s, a0), C(s, a0))
    RootList roots;   ///< rational roots of the gcd
};

struct DegenerateReport {
    QPoly primitive_resultant;  ///< primitive part of Res_s(L, C) in Q[a]
    unsigned resultant_degree = 0;
    RootList linear_factors;
    QPoly cofactor;
    unsigned cofactor_degree = 0;
    bool cofactor_has_rational_roots = false;
    std::vector<LocusGcd> gcds;
    std::vector<std::pair<Rational, Rational>> locus_points;  ///< (s, a)
};

inline QPoly L_at_a(const ObstructionSystem& sys, const Rational& a0) {
    return mp_to_qpoly(mp_eval_partial(sys.L(), {{"a", a0}}), "s");
}
inline QPoly C_at_a(const ObstructionSystem& sys, const Rational& a0) {
    return mp_to_qpoly(mp_eval_partial(sys.C(), {{"a", a0}}), "s");
}

inline DegenerateReport analyze_degenerate(const ObstructionSystem& sys) {
    DegenerateReport rep;
    const MPoly res = up_resultant(mp_to_upoly(sys.L(), "s"), mp_to_upoly(sys.C(), "s"));
    rep.primitive_resultant = up_content_primitive(mp_to_qpoly(res, "a")).primitive;
    rep.resultant_degree = rep.primitive_resultant.degree().value();

    RationalRootSplit split = up_split_rational_roots(rep.primitive_resultant);
    rep.linear_factors = split.roots;
    rep.cofactor = up_monic(split.cofactor);
    rep.cofactor_degree = rep.cofactor.degree().value();
    rep.cofactor_has_rational_roots = !up_rational_roots(rep.cofactor).empty();

    for (const auto& [a0, mult] : rep.linear_factors) {
        LocusGcd g{a0, up_gcd_q(L_at_a(sys, a0), C_at_a(sys, a0)), {}};
        if (g.gcd.degree() >= Degree(1)) g.roots = up_rational_roots(g.gcd);
        for (const auto& [s0, m] : g.roots) {
            const std::map<std::string, Rational> pt{{"s", s0}, {"a", a0}};
            if (!mp_evaluate(sys.L(), pt).is_zero() || !mp_evaluate(sys.C(), pt).is_zero()) {
                throw std::logic_error("degenerate locus point does not satisfy L = C = 0");
            }
            rep.locus_points.emplace_back(s0, a0);
        }
        rep.gcds.push_back(std::move(g));
    }
    return rep;
}

struct FactorPattern {
    unsigned mult_at_one = 0;        ///< multiplicity of s = 1
    unsigned mult_at_minus_one = 0;  ///< multiplicity of s = -1
    QPoly cofactor;                  ///< monic, after removing (s-1)^k (s+1)^l
    bool cofactor_has_rational_roots = true;
};

struct FactorPatternCheck {
    FactorPattern L, C;
    bool ok = false;
};

/// L(s, 2) and C(s, 2) are both (s-1)^2 (s+1) times a cofactor (cubic for L,
/// quartic for C) without rational roots.
inline FactorPatternCheck factor_pattern_check(const ObstructionSystem& sys) {
    auto pattern = [](const QPoly& f) {
        FactorPattern p;
        Deflation d1 = up_deflate(f, Rational(1));
        Deflation d2 = up_deflate(d1.cofactor, Rational(-1));
        p.mult_at_one = d1.multiplicity;
        p.mult_at_minus_one = d2.multiplicity;
        p.cofactor = up_monic(d2.cofactor);
        p.cofactor_has_rational_roots = !up_rational_roots(p.cofactor).empty();
        return p;
    };
    FactorPatternCheck out{pattern(L_at_a(sys, Rational(2))), pattern(C_at_a(sys, Rational(2))), false};
    out.ok = out.L.mult_at_one == 2 && out.L.mult_at_minus_one == 1 && out.L.cofactor.degree() == 3U &&
             !out.L.cofactor_has_rational_roots && out.C.mult_at_one == 2 && out.C.mult_at_minus_one == 1 &&
             out.C.cofactor.degree() == 4U && !out.C.cofactor_has_rational_roots;
    return out;
}

}  // namespace cuboid
