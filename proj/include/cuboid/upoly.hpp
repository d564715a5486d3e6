#pragma once

// Dense univariate polynomials over an exact coefficient domain D
// (D = Rational or D = MPoly), with division by monic divisors, gcd over Q,
// Sylvester resultants and complete rational root extraction.

#include "cuboid/degree.hpp"
#include "cuboid/exact_arith.hpp"
#include "cuboid/mpoly.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cuboid {

template <class D>
struct RingOps;

template <>
struct RingOps<Rational> {
    static Rational zero_like(const Rational&) { return Rational(0); }
    static Rational one_like(const Rational&) { return Rational(1); }
    static bool is_zero(const Rational& x) { return x.is_zero(); }
    static bool is_one(const Rational& x) { return x.is_one(); }
    static Rational divide_exact(const Rational& a, const Rational& b) { return a / b; }
    static std::string to_string(const Rational& x) { return x.to_string(); }
    static bool needs_parens(const Rational&) { return false; }
};

template <>
struct RingOps<MPoly> {
    static MPoly zero_like(const MPoly& x) { return MPoly(x.vars()); }
    static MPoly one_like(const MPoly& x) { return MPoly(x.vars(), Rational(1)); }
    static bool is_zero(const MPoly& x) { return x.is_zero(); }
    static bool is_one(const MPoly& x) { return x.is_one(); }
    static MPoly divide_exact(const MPoly& a, const MPoly& b) { return mp_divide_exact(a, b); }
    static std::string to_string(const MPoly& x) { return x.to_string(); }
    static bool needs_parens(const MPoly& x) { return x.term_count() > 1; }
};

template <class D>
class UPoly {
public:
    using Ops = RingOps<D>;

    /// Zero polynomial; `zero` fixes the coefficient ring.
    explicit UPoly(const D& zero = D{}) : zero_(Ops::zero_like(zero)) {}
    /// Coefficients indexed by degree. The ring is taken from the first entry.
    UPoly(std::vector<D> coeffs) : zero_(coeffs.empty() ? D{} : Ops::zero_like(coeffs.front())), c_(std::move(coeffs)) {  // NOLINT
        trim();
    }
    UPoly(const D& ring_sample, std::vector<D> coeffs) : zero_(Ops::zero_like(ring_sample)), c_(std::move(coeffs)) {
        trim();
    }
    UPoly(std::initializer_list<D> coeffs) : UPoly(std::vector<D>(coeffs)) {}

    /// c * x^k
    static UPoly monomial(const D& c, unsigned k) {
        std::vector<D> v(k + 1, Ops::zero_like(c));
        v[k] = c;
        return UPoly(c, std::move(v));
    }

    [[nodiscard]] Degree degree() const {
        return c_.empty() ? Degree::minus_infinity() : Degree(static_cast<unsigned>(c_.size() - 1));
    }
    [[nodiscard]] bool is_zero() const { return c_.empty(); }
    [[nodiscard]] const D& coeff(std::size_t k) const { return k < c_.size() ? c_[k] : zero_; }
    [[nodiscard]] const std::vector<D>& coeffs() const { return c_; }
    [[nodiscard]] const D& lead() const {
        if (c_.empty()) throw std::logic_error("zero polynomial has no leading coefficient");
        return c_.back();
    }
    [[nodiscard]] const D& zero_element() const { return zero_; }
    [[nodiscard]] D one_element() const { return Ops::one_like(zero_); }
    [[nodiscard]] bool is_monic() const { return !c_.empty() && Ops::is_one(c_.back()); }

    UPoly operator-() const {
        UPoly r(*this);
        for (auto& x : r.c_) x = -x;
        return r;
    }
    UPoly& operator+=(const UPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    UPoly& operator-=(const UPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
    friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return UPoly(a.zero_);
        std::vector<D> r(a.c_.size() + b.c_.size() - 1, a.zero_);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (Ops::is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return UPoly(a.zero_, std::move(r));
    }
    friend UPoly operator*(const D& k, const UPoly& a) {
        std::vector<D> r;
        r.reserve(a.c_.size());
        for (const auto& x : a.c_) r.push_back(k * x);
        return UPoly(a.zero_, std::move(r));
    }
    UPoly& operator*=(const UPoly& o) { return *this = *this * o; }

    [[nodiscard]] UPoly pow(unsigned e) const {
        UPoly result(zero_, {one_element()});
        UPoly base = *this;
        while (e > 0) {
            if (e & 1U) result *= base;
            e >>= 1U;
            if (e > 0) base *= base;
        }
        return result;
    }

    /// Horner evaluation at a point of the coefficient domain.
    [[nodiscard]] D eval(const D& x) const {
        D acc = zero_;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    [[nodiscard]] UPoly derivative() const {
        std::vector<D> r;
        for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(Rational(static_cast<long>(i)) * c_[i]);
        return UPoly(zero_, std::move(r));
    }

    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    [[nodiscard]] std::string to_string(const std::string& var = "x") const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t k = c_.size(); k-- > 0;) {
            const D& c = c_[k];
            if (Ops::is_zero(c)) continue;
            std::string cs = Ops::to_string(c);
            bool negative = !Ops::needs_parens(c) && !cs.empty() && cs[0] == '-';
            if (negative) cs.erase(0, 1);
            if (first) {
                if (negative) os << "-";
            } else {
                os << (negative ? " - " : " + ");
            }
            first = false;
            bool unit = cs == "1";
            if (k == 0) {
                os << cs;
                continue;
            }
            if (!unit) os << (Ops::needs_parens(c) ? "(" + cs + ")" : cs) << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && Ops::is_zero(c_.back())) c_.pop_back();
    }

    D zero_;
    std::vector<D> c_;
};

using QPoly = UPoly<Rational>;

struct RootMult {
    Rational root;
    unsigned multiplicity = 0;
    friend bool operator==(const RootMult&, const RootMult&) = default;
};

/// Distinct rational roots with multiplicities, ascending by value.
using RootList = std::vector<RootMult>;

template <class D>
struct DivRem {
    UPoly<D> quotient;
    UPoly<D> remainder;
};

/// Euclidean division by a monic divisor: f = q*d + r with deg r < deg d.
template <class D>
DivRem<D> up_divrem(const UPoly<D>& f, const UPoly<D>& d) {
    if (d.is_zero() || !d.is_monic()) throw std::invalid_argument("division requires monic divisor");
    const std::size_t dd = d.degree().value();
    std::vector<D> r = f.coeffs();
    if (r.size() <= dd) return {UPoly<D>(f.zero_element()), f};
    std::vector<D> q(r.size() - dd, f.zero_element());
    for (std::size_t k = r.size(); k-- > dd;) {
        D t = r[k];
        if (RingOps<D>::is_zero(t)) continue;
        q[k - dd] = t;
        for (std::size_t j = 0; j <= dd; ++j) r[k - dd + j] -= t * d.coeff(j);
    }
    r.resize(dd, f.zero_element());
    return {UPoly<D>(f.zero_element(), std::move(q)), UPoly<D>(f.zero_element(), std::move(r))};
}

inline QPoly up_monic(const QPoly& f) {
    if (f.is_zero()) return f;
    return f.lead().inverse() * f;
}

/// Monic gcd over Q.
inline QPoly up_gcd_q(const QPoly& f, const QPoly& g) {
    if (f.is_zero() && g.is_zero()) throw std::invalid_argument("gcd of two zero polynomials");
    QPoly a = up_monic(f);
    QPoly b = up_monic(g);
    while (!b.is_zero()) {
        QPoly r = up_divrem(a, b).remainder;
        a = std::move(b);
        b = up_monic(r);
    }
    return a;
}

struct ContentPrimitive {
    Rational content;
    QPoly primitive;
};

/// f = content * primitive; primitive has coprime integer coefficients and a
/// positive leading coefficient.
inline ContentPrimitive up_content_primitive(const QPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("content of the zero polynomial");
    BigInt den_lcm(1);
    BigInt num_gcd(0);
    for (const auto& c : f.coeffs()) {
        den_lcm = int_lcm(den_lcm, c.den());
        num_gcd = int_gcd(num_gcd, c.num());
    }
    Rational content(num_gcd, den_lcm);
    if (f.lead().sign() < 0) content = -content;
    return {content, content.inverse() * f};
}

/// Integer coefficients of a primitive polynomial.
inline std::vector<BigInt> up_integer_coeffs(const QPoly& f) {
    std::vector<BigInt> out;
    out.reserve(f.coeffs().size());
    for (const auto& c : f.coeffs()) {
        if (!c.is_integer()) throw std::invalid_argument("polynomial does not have integer coefficients");
        out.push_back(c.num());
    }
    return out;
}

struct Deflation {
    unsigned multiplicity = 0;
    QPoly cofactor;
};

/// Largest k with (x - root)^k | f, and f / (x - root)^k.
inline Deflation up_deflate(const QPoly& f, const Rational& root) {
    if (f.is_zero()) throw std::invalid_argument("deflation of the zero polynomial");
    if (!f.eval(root).is_zero()) throw std::invalid_argument("deflation point is not a root");
    const QPoly linear{-root, Rational(1)};
    Deflation out{0, f};
    while (true) {
        auto [q, r] = up_divrem(out.cofactor, linear);
        if (!r.is_zero()) break;
        out.cofactor = std::move(q);
        ++out.multiplicity;
    }
    return out;
}

inline QPoly up_squarefree_part(const QPoly& f) {
    if (f.degree() <= Degree(0)) return f;
    QPoly g = up_gcd_q(f, f.derivative());
    return up_divrem(f, g).quotient;
}

namespace detail {

inline int sign_at(const QPoly& f, const Rational& x) { return f.eval(x).sign(); }

/// Sturm chain with each member rescaled by a positive constant.
inline std::vector<QPoly> sturm_chain(const QPoly& f) {
    std::vector<QPoly> chain{f, f.derivative()};
    auto positive_primitive = [](const QPoly& p) {
        auto cp = up_content_primitive(p);
        return cp.content.sign() < 0 ? -cp.primitive : cp.primitive;
    };
    chain[0] = positive_primitive(chain[0]);
    chain[1] = positive_primitive(chain[1]);
    while (!chain.back().is_zero() && chain.back().degree() > Degree(0)) {
        const QPoly& a = chain[chain.size() - 2];
        const QPoly& b = chain.back();
        QPoly r = up_divrem(a, up_monic(b)).remainder;
        if (r.is_zero()) break;
        chain.push_back(-positive_primitive(r));
    }
    return chain;
}

inline int sign_variations(const std::vector<QPoly>& chain, const Rational& x) {
    int count = 0;
    int prev = 0;
    for (const auto& p : chain) {
        int s = sign_at(p, x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

/// Strict bound on |root|: 1 + max |a_i / a_n|.
inline Rational cauchy_bound(const QPoly& f) {
    Rational m(0);
    const Rational& lead = f.lead();
    for (std::size_t i = 0; i + 1 < f.coeffs().size(); ++i) {
        Rational r = (f.coeff(i) / lead).abs();
        if (r > m) m = r;
    }
    return m + Rational(1);
}

inline constexpr unsigned kSievePrimes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                            43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

/// True when some prime not dividing the leading coefficient sees no root of
/// f modulo that prime. Any rational root c/d has d | lead, so it would reduce
/// to a root mod every such prime; a true answer therefore proves that f has
/// no rational roots.
inline bool modular_sieve_excludes_roots(const std::vector<BigInt>& coeffs) {
    int tried = 0;
    for (unsigned p : kSievePrimes) {
        if (coeffs.back().mod_ui(p) == 0) continue;
        std::vector<std::uint64_t> cm;
        cm.reserve(coeffs.size());
        for (const auto& c : coeffs) cm.push_back(c.mod_ui(p));
        bool has_root = false;
        for (std::uint64_t x = 0; x < p && !has_root; ++x) {
            std::uint64_t acc = 0;
            for (auto it = cm.rbegin(); it != cm.rend(); ++it) acc = (acc * x + *it) % p;
            has_root = acc == 0;
        }
        if (!has_root) return true;
        if (++tried >= 16) break;
    }
    return false;
}

/// Rational roots of a squarefree integer polynomial with nonzero constant
/// term. Every rational root c/d has d | lead, so root*|lead| is an integer;
/// each real root is isolated (Sturm) and narrowed until its interval scaled
/// by |lead| holds at most one integer, which is then tested exactly.
inline std::vector<Rational> squarefree_rational_roots(const QPoly& h) {
    std::vector<Rational> out;
    if (h.degree() < Degree(1)) return out;
    if (h.degree() == Degree(1)) {
        out.push_back(-h.coeff(0) / h.coeff(1));
        return out;
    }
    auto ints = up_integer_coeffs(h);
    if (modular_sieve_excludes_roots(ints)) return out;

    const Rational scale = h.lead().abs();
    const auto chain = sturm_chain(h);
    const Rational bound = cauchy_bound(h);

    struct Interval {
        Rational lo, hi;  // (lo, hi]
        int vlo, vhi;
    };
    std::vector<Interval> work{{-bound, bound, sign_variations(chain, -bound), sign_variations(chain, bound)}};
    std::vector<std::pair<Rational, Rational>> isolated;
    while (!work.empty()) {
        Interval iv = std::move(work.back());
        work.pop_back();
        int count = iv.vlo - iv.vhi;
        if (count <= 0) continue;
        if (count == 1) {
            isolated.emplace_back(iv.lo, iv.hi);
            continue;
        }
        Rational mid = (iv.lo + iv.hi) / Rational(2);
        int vmid = sign_variations(chain, mid);
        work.push_back({iv.lo, mid, iv.vlo, vmid});
        work.push_back({mid, iv.hi, vmid, iv.vhi});
    }

    for (auto& [lo, hi] : isolated) {
        if (h.eval(hi).is_zero()) {
            out.push_back(hi);
            continue;
        }
        const int shi = sign_at(h, hi);
        bool exact = false;
        while ((hi - lo) * scale >= Rational(1)) {
            Rational mid = (lo + hi) / Rational(2);
            int sm = sign_at(h, mid);
            if (sm == 0) {
                out.push_back(mid);
                exact = true;
                break;
            }
            if (sm == shi) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        if (exact) continue;
        // floor(hi*scale) is the only integer that can lie in (lo*scale, hi*scale].
        Rational top = hi * scale;
        BigInt n = top.num();
        BigInt d = top.den();
        BigInt fl = n / d;
        if (n.sign() < 0 && !(n % d).is_zero()) fl -= BigInt(1);
        Rational cand = Rational(fl) / scale;
        if (cand > lo && cand <= hi && h.eval(cand).is_zero()) out.push_back(cand);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

struct RationalRootSplit {
    RootList roots;
    QPoly cofactor;  ///< f divided by all rational linear factors; has no rational roots
};

/// All rational roots of f with multiplicities, plus the deflated cofactor.
inline RationalRootSplit up_split_rational_roots(const QPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("rational roots of the zero polynomial");
    QPoly g = up_content_primitive(f).primitive;
    std::vector<Rational> candidates;
    if (g.coeff(0).is_zero()) {
        candidates.emplace_back(0);
        std::size_t k = 0;
        while (g.coeff(k).is_zero()) ++k;
        g = QPoly(std::vector<Rational>(g.coeffs().begin() + static_cast<std::ptrdiff_t>(k), g.coeffs().end()));
    }
    if (g.degree() >= Degree(1) && !detail::modular_sieve_excludes_roots(up_integer_coeffs(g))) {
        QPoly h = up_content_primitive(up_squarefree_part(g)).primitive;
        for (auto& r : detail::squarefree_rational_roots(h)) candidates.push_back(std::move(r));
    }
    std::sort(candidates.begin(), candidates.end());

    RationalRootSplit out{{}, f};
    for (const auto& r : candidates) {
        Deflation d = up_deflate(out.cofactor, r);
        out.roots.push_back({r, d.multiplicity});
        out.cofactor = std::move(d.cofactor);
    }
    return out;
}

inline RootList up_rational_roots(const QPoly& f) { return up_split_rational_roots(f).roots; }

/// Determinant of a square matrix over an integral domain by fraction-free
/// (Bareiss) elimination with row pivoting.
template <class D>
D bareiss_determinant(std::vector<std::vector<D>> m, const D& ring_sample) {
    using Ops = RingOps<D>;
    const std::size_t n = m.size();
    if (n == 0) return Ops::one_like(ring_sample);
    D prev = Ops::one_like(ring_sample);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (Ops::is_zero(m[k][k])) {
            std::size_t p = k + 1;
            while (p < n && Ops::is_zero(m[p][k])) ++p;
            if (p == n) return Ops::zero_like(ring_sample);
            std::swap(m[k], m[p]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                D t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = Ops::divide_exact(t, prev);
            }
            m[i][k] = Ops::zero_like(ring_sample);
        }
        prev = m[k][k];
    }
    D det = m[n - 1][n - 1];
    return negate ? -det : det;
}

/// Sylvester matrix of f (degree m) and g (degree n): n shifted rows of f
/// followed by m shifted rows of g, coefficients from the top degree down.
template <class D>
std::vector<std::vector<D>> sylvester_matrix(const UPoly<D>& f, const UPoly<D>& g) {
    const std::size_t m = f.degree().value();
    const std::size_t n = g.degree().value();
    const std::size_t size = m + n;
    std::vector<std::vector<D>> s(size, std::vector<D>(size, f.zero_element()));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= m; ++j) s[i][i + j] = f.coeff(m - j);
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j <= n; ++j) s[n + i][i + j] = g.coeff(n - j);
    }
    return s;
}

template <class D>
D up_resultant(const UPoly<D>& f, const UPoly<D>& g) {
    if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant of zero polynomial");
    return bareiss_determinant(sylvester_matrix(f, g), f.zero_element());
}

/// Views f as a polynomial in `var` with coefficients in the remaining variables.
inline UPoly<MPoly> mp_to_upoly(const MPoly& f, const std::string& var) {
    const std::size_t vi = f.vars().index(var);
    const VarSet rest = f.vars().without(var);
    const MPoly zero(rest);
    std::vector<MPoly> coeffs;
    Exponents e(rest.size());
    for (const auto& [ex, c] : f.terms()) {
        if (coeffs.size() <= ex[vi]) coeffs.resize(ex[vi] + 1, zero);
        for (std::size_t i = 0, j = 0; i < ex.size(); ++i) {
            if (i != vi) e[j++] = ex[i];
        }
        coeffs[ex[vi]].add_term(e, c);
    }
    return UPoly<MPoly>(zero, std::move(coeffs));
}

/// Inverse of mp_to_upoly: reassembles into `target`, which must contain
/// `var` and every coefficient variable.
inline MPoly upoly_to_mp(const UPoly<MPoly>& p, const std::string& var, const VarSet& target) {
    MPoly out(target);
    const MPoly x = MPoly::variable(target, var);
    MPoly xk(target, Rational(1));
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
        out += mp_embed(p.coeff(k), target) * xk;
        xk *= x;
    }
    return out;
}

/// A polynomial involving at most `var` as a univariate polynomial over Q.
inline QPoly mp_to_qpoly(const MPoly& f, const std::string& var) {
    UPoly<MPoly> u = mp_to_upoly(f, var);
    std::vector<Rational> c;
    c.reserve(u.coeffs().size());
    for (const auto& m : u.coeffs()) {
        if (!m.is_constant()) throw std::invalid_argument("polynomial involves variables other than " + var);
        c.push_back(m.constant_value());
    }
    return QPoly(std::move(c));
}

inline MPoly qpoly_to_mp(const QPoly& p, const VarSet& vars, const std::string& var) {
    const std::size_t vi = vars.index(var);
    MPoly out(vars);
    Exponents e(vars.size(), 0);
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
        e[vi] = static_cast<unsigned>(k);
        out.add_term(e, p.coeff(k));
    }
    return out;
}

/// Coefficients that are all constants, read as rationals.
inline QPoly constant_coeffs(const UPoly<MPoly>& p) {
    std::vector<Rational> c;
    c.reserve(p.coeffs().size());
    for (const auto& m : p.coeffs()) c.push_back(m.constant_value());
    return QPoly(std::move(c));
}

/// Applies `fn` to every coefficient.
template <class E, class D, class Fn>
UPoly<E> up_map(const UPoly<D>& p, const E& ring_sample, Fn fn) {
    std::vector<E> c;
    c.reserve(p.coeffs().size());
    for (const auto& x : p.coeffs()) c.push_back(fn(x));
    return UPoly<E>(ring_sample, std::move(c));
}

}  // namespace cuboid
