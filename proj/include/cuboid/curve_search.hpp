#pragma once

// Rational points on the projective closure of F(s, a) = 0.
//
// Affine points are enumerated fiber by fiber: every s0 = p/q of height at
// most the bound is visited and all rational roots a of F(s0, a) are taken,
// with no bound on a. Points on the line at infinity are found exactly from
// the top-degree form of F.

#include "cuboid/cuboid_model.hpp"
#include "cuboid/exact_arith.hpp"
#include "cuboid/mpoly.hpp"
#include "cuboid/upoly.hpp"

#include <algorithm>
#include <compare>
#include <exception>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

namespace cuboid {

inline const VarSet& ring_SAZ() {
    static const VarSet vs{"S", "A", "Z"};
    return vs;
}

/// Primitive integer representative of a point of P^2(Q) whose first nonzero
/// coordinate is positive.
class ProjPoint {
public:
    ProjPoint(BigInt S, BigInt A, BigInt Z) : S_(std::move(S)), A_(std::move(A)), Z_(std::move(Z)) {
        BigInt g = int_gcd(int_gcd(S_, A_), Z_);
        if (g.is_zero()) throw std::invalid_argument("projective point with all coordinates zero");
        int lead = S_.sign() != 0 ? S_.sign() : (A_.sign() != 0 ? A_.sign() : Z_.sign());
        if (lead < 0) g = -g;
        S_ = S_.divexact(g);
        A_ = A_.divexact(g);
        Z_ = Z_.divexact(g);
    }

    static ProjPoint from_affine(const Rational& s, const Rational& a) {
        BigInt d = int_lcm(s.den(), a.den());
        return {(s * Rational(d)).num(), (a * Rational(d)).num(), d};
    }

    [[nodiscard]] const BigInt& S() const { return S_; }
    [[nodiscard]] const BigInt& A() const { return A_; }
    [[nodiscard]] const BigInt& Z() const { return Z_; }
    [[nodiscard]] bool at_infinity() const { return Z_.is_zero(); }
    /// (S/Z, A/Z). Throws for points at infinity.
    [[nodiscard]] std::pair<Rational, Rational> affine() const {
        if (at_infinity()) throw std::logic_error("point at infinity has no affine coordinates");
        return {Rational(S_, Z_), Rational(A_, Z_)};
    }

    [[nodiscard]] std::string to_string() const {
        return "(" + S_.to_string() + " : " + A_.to_string() + " : " + Z_.to_string() + ")";
    }

    friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
    friend std::strong_ordering operator<=>(const ProjPoint& x, const ProjPoint& y) {
        return std::tie(x.S_, x.A_, x.Z_) <=> std::tie(y.S_, y.A_, y.Z_);
    }

private:
    BigInt S_, A_, Z_;
};

using AffinePoint = std::pair<Rational, Rational>;

/// Lexicographic by (s numerator, s denominator, a numerator, a denominator).
inline bool affine_less(const AffinePoint& x, const AffinePoint& y) {
    auto key = [](const AffinePoint& p) { return std::make_tuple(p.first.num(), p.first.den(), p.second.num(), p.second.den()); };
    return key(x) < key(y);
}

struct SearchConfig {
    BigInt bound{100};
    unsigned workers = 1;
};

struct SearchReport {
    BigInt bound;
    std::vector<ProjPoint> points;
    std::vector<AffinePoint> affine_points;
    std::vector<ProjPoint> infinity_points;
    std::vector<AffinePoint> violating_points;
    std::vector<bool> singular_flags;  ///< parallel to `points`
};

/// F-hat(S, A, Z) = Z^17 F(S/Z, A/Z).
inline MPoly homogenized_curve(const ObstructionSystem& sys) {
    if (!(sys.F().total_degree() == 17U)) {
        std::ostringstream os;
        os << "total degree of F is " << sys.F().total_degree() << ", expected 17";
        throw std::logic_error(os.str());
    }
    MPoly fhat = homogenize(sys.F(), 17, ring_SAZ());
    if (!fhat.is_homogeneous() || !(fhat.total_degree() == 17U)) throw std::logic_error("homogenization failed");
    return fhat;
}

inline Rational eval_projective(const MPoly& fhat, const ProjPoint& pt) {
    const auto& vs = fhat.vars();
    return mp_evaluate(fhat, {{vs.name(0), Rational(pt.S())}, {vs.name(1), Rational(pt.A())}, {vs.name(2), Rational(pt.Z())}});
}

/// All rational points with Z = 0 (complete: roots of the binary top form).
inline std::vector<ProjPoint> infinity_points(const MPoly& fhat) {
    if (!fhat.is_homogeneous()) throw std::invalid_argument("infinity_points expects a homogeneous polynomial");
    const auto& vs = fhat.vars();
    const MPoly top = mp_eval_partial(fhat, {{vs.name(2), Rational(0)}});
    if (top.is_zero()) throw std::domain_error("line at infinity contained in curve");
    std::vector<ProjPoint> pts;
    // Chart A = 1: (x : 1 : 0).
    const QPoly chart_a = mp_to_qpoly(mp_eval_partial(top, {{vs.name(1), Rational(1)}}), vs.name(0));
    if (!chart_a.is_zero()) {
        for (const auto& [x, mult] : up_rational_roots(chart_a)) pts.emplace_back(x.num(), x.den(), BigInt(0));
    }
    // Chart S = 1: (1 : y : 0).
    const QPoly chart_s = mp_to_qpoly(mp_eval_partial(top, {{vs.name(0), Rational(1)}}), vs.name(1));
    if (!chart_s.is_zero()) {
        for (const auto& [y, mult] : up_rational_roots(chart_s)) pts.emplace_back(y.den(), y.num(), BigInt(0));
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

struct AffineSearchResult {
    std::vector<AffinePoint> pairs;
    std::vector<Rational> zero_fibers;  ///< s0 where F(s0, a) vanished identically
};

namespace detail {

/// Integer coefficient table of F: rows indexed by the power of a, entries
/// (power of s, coefficient). The fiber at s0 = p/q is then
/// sum_j a^j sum_i c_ij p^i q^(D-i), i.e. q^D F(p/q, a) with D = deg_s F.
class FiberEvaluator {
public:
    explicit FiberEvaluator(const MPoly& F) {
        BigInt den(1);
        for (const auto& [e, c] : F.terms()) den = int_lcm(den, c.den());
        deg_s_ = F.degree_in("s").value();
        rows_.resize(F.degree_in("a").value() + 1);
        const std::size_t si = F.vars().index("s");
        const std::size_t ai = F.vars().index("a");
        for (const auto& [e, c] : F.terms()) rows_[e[ai]].emplace_back(e[si], (c * Rational(den)).num());
    }

    [[nodiscard]] QPoly at(long p, long q) const {
        std::vector<BigInt> pp(deg_s_ + 1), qq(deg_s_ + 1);
        pp[0] = qq[0] = BigInt(1);
        for (unsigned i = 1; i <= deg_s_; ++i) {
            pp[i] = pp[i - 1] * BigInt(p);
            qq[i] = qq[i - 1] * BigInt(q);
        }
        std::vector<Rational> c;
        c.reserve(rows_.size());
        for (const auto& row : rows_) {
            BigInt acc(0);
            for (const auto& [i, cij] : row) acc += cij * pp[i] * qq[deg_s_ - i];
            c.emplace_back(acc);
        }
        return QPoly(std::move(c));
    }

private:
    unsigned deg_s_ = 0;
    std::vector<std::vector<std::pair<unsigned, BigInt>>> rows_;
};

}  // namespace detail

/// Rational points (s0, a0) of F = 0 with height(s0) <= bound; all roots a0
/// on each fiber. Candidates are split into contiguous denominator blocks,
/// one per worker; the merged output does not depend on the worker count.
inline AffineSearchResult affine_search(const ObstructionSystem& sys, const SearchConfig& cfg) {
    if (cfg.bound < BigInt(1)) throw std::invalid_argument("search bound must be at least 1");
    if (cfg.bound > BigInt(1000000)) throw std::invalid_argument("search bound too large for fiber enumeration");
    const long bound = cfg.bound.to_long();
    const unsigned workers = std::max(1U, std::min<unsigned>(cfg.workers, static_cast<unsigned>(bound)));
    const detail::FiberEvaluator eval(sys.F());

    std::vector<AffineSearchResult> partial(workers);
    std::vector<std::exception_ptr> errors(workers);
    auto run_block = [&](unsigned w) {
        try {
            const long q_lo = 1 + static_cast<long>(w) * bound / static_cast<long>(workers);
            const long q_hi = static_cast<long>(w + 1) * bound / static_cast<long>(workers);
            for (long q = q_lo; q <= q_hi; ++q) {
                for (long p = -bound; p <= bound; ++p) {
                    if (std::gcd(p, q) != 1) continue;
                    const QPoly f = eval.at(p, q);
                    const Rational s0(p, q);
                    if (f.is_zero()) {
                        partial[w].zero_fibers.push_back(s0);
                        continue;
                    }
                    for (const auto& [a0, mult] : up_rational_roots(f)) partial[w].pairs.emplace_back(s0, a0);
                }
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        run_block(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_block, w);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    AffineSearchResult out;
    for (auto& part : partial) {
        out.pairs.insert(out.pairs.end(), part.pairs.begin(), part.pairs.end());
        out.zero_fibers.insert(out.zero_fibers.end(), part.zero_fibers.begin(), part.zero_fibers.end());
    }
    std::sort(out.pairs.begin(), out.pairs.end(), affine_less);
    std::sort(out.zero_fibers.begin(), out.zero_fibers.end(), num_den_less);
    return out;
}

/// True iff all three partial derivatives of F-hat vanish at the point.
inline bool singular_verify(const MPoly& fhat, const ProjPoint& pt) {
    if (!eval_projective(fhat, pt).is_zero()) throw std::invalid_argument("point " + pt.to_string() + " is not on the curve");
    for (const auto& name : fhat.vars().names()) {
        if (!eval_projective(mp_derivative(fhat, name), pt).is_zero()) return false;
    }
    return true;
}

inline SearchReport run_search(const ObstructionSystem& sys, const SearchConfig& cfg) {
    const MPoly fhat = homogenized_curve(sys);
    SearchReport rep;
    rep.bound = cfg.bound;

    std::vector<ProjPoint> pts = infinity_points(fhat);
    for (const auto& [s0, a0] : affine_search(sys, cfg).pairs) pts.push_back(ProjPoint::from_affine(s0, a0));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    for (const auto& pt : pts) {
        if (!eval_projective(fhat, pt).is_zero()) throw std::logic_error("search produced a point off the curve: " + pt.to_string());
        rep.singular_flags.push_back(singular_verify(fhat, pt));
        if (pt.at_infinity()) {
            rep.infinity_points.push_back(pt);
        } else {
            rep.affine_points.push_back(pt.affine());
        }
    }
    rep.points = std::move(pts);
    std::sort(rep.affine_points.begin(), rep.affine_points.end(), affine_less);
    for (const auto& ap : rep.affine_points) {
        if (ap.first.sign() > 0 && !ap.first.is_one()) rep.violating_points.push_back(ap);
    }
    return rep;
}

}  // namespace cuboid
