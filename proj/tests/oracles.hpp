#pragma once

// Reference implementations used only by the tests. They deliberately avoid
// the library's own algorithms (Bareiss, Sturm isolation, sieving) and use
// the slow textbook methods instead.

#include "cuboid/exact_arith.hpp"
#include "cuboid/upoly.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using cuboid::BigInt;
using cuboid::QPoly;
using cuboid::Rational;

/// Positive divisors of |n| by trial division up to sqrt(|n|).
inline std::vector<BigInt> divisors(BigInt n) {
    if (n.sign() < 0) n = -n;
    std::vector<BigInt> lo, hi;
    for (BigInt d(1); d * d <= n; d += BigInt(1)) {
        if ((n % d).is_zero()) {
            lo.push_back(d);
            if (d * d != n) hi.push_back(n / d);
        }
    }
    std::reverse(hi.begin(), hi.end());
    lo.insert(lo.end(), hi.begin(), hi.end());
    return lo;
}

/// Integer coefficients of a nonzero multiple of f (clears denominators).
inline std::vector<BigInt> cleared(const QPoly& f) {
    BigInt den(1);
    for (const auto& c : f.coeffs()) den = cuboid::int_lcm(den, c.den());
    std::vector<BigInt> out;
    for (const auto& c : f.coeffs()) out.push_back((c * Rational(den)).num());
    return out;
}

inline Rational horner(const std::vector<Rational>& c, const Rational& x) {
    Rational acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

/// Multiplicity of x0 as a root: number of successive derivatives vanishing there.
inline unsigned multiplicity(const QPoly& f, const Rational& x0) {
    std::vector<Rational> c = f.coeffs();
    unsigned k = 0;
    while (!c.empty() && horner(c, x0).is_zero()) {
        ++k;
        std::vector<Rational> d;
        for (std::size_t i = 1; i < c.size(); ++i) d.push_back(Rational(static_cast<long>(i)) * c[i]);
        c = std::move(d);
    }
    return k;
}

/// Rational roots by the rational root theorem: candidates +-d/e with d | a_k
/// (lowest nonzero coefficient) and e | a_n, each tested exactly.
inline cuboid::RootList rational_roots(const QPoly& f) {
    std::vector<BigInt> c = cleared(f);
    std::set<Rational> roots;
    std::size_t low = 0;
    while (low < c.size() && c[low].is_zero()) ++low;
    if (low > 0) roots.insert(Rational(0));
    std::vector<Rational> fc = f.coeffs();
    for (const auto& d : divisors(c[low])) {
        for (const auto& e : divisors(c.back())) {
            for (int sign : {1, -1}) {
                Rational x(BigInt(sign) * d, e);
                if (horner(fc, x).is_zero()) roots.insert(x);
            }
        }
    }
    cuboid::RootList out;
    for (const auto& r : roots) out.push_back({r, multiplicity(f, r)});
    return out;
}

/// Determinant by Gaussian elimination over Q with partial pivoting on nonzero.
inline Rational gauss_det(std::vector<std::vector<Rational>> m) {
    const std::size_t n = m.size();
    Rational det(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m[p][k].is_zero()) ++p;
        if (p == n) return Rational(0);
        if (p != k) {
            std::swap(m[p], m[k]);
            det = -det;
        }
        det = det * m[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            Rational factor = m[i][k] / m[k][k];
            for (std::size_t j = k; j < n; ++j) m[i][j] -= factor * m[k][j];
        }
    }
    return det;
}

/// Resultant of scalar polynomials from the Sylvester matrix, rows built from
/// the coefficient vectors directly.
inline Rational resultant(const QPoly& f, const QPoly& g) {
    const std::size_t m = f.coeffs().size() - 1;
    const std::size_t n = g.coeffs().size() - 1;
    std::vector<std::vector<Rational>> s(m + n, std::vector<Rational>(m + n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= m; ++j) s[i][i + j] = f.coeffs()[m - j];
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j <= n; ++j) s[n + i][i + j] = g.coeffs()[n - j];
    }
    return gauss_det(std::move(s));
}

/// Lagrange interpolation through (xs[i], ys[i]).
inline QPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
    QPoly acc;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        QPoly basis{Rational(1)};
        Rational denom(1);
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            basis = basis * QPoly{-xs[j], Rational(1)};
            denom = denom * (xs[i] - xs[j]);
        }
        acc = acc + (ys[i] / denom) * basis;
    }
    return acc;
}

/// All monic quadratic divisors x^2 + a x + b over Q of a nonzero polynomial.
/// Kronecker-style: a primitive integer factor c2 x^2 + c1 x + c0 has c2 | lead
/// and h(u) | G(u) at integer points u with G(u) != 0; two such points fix c1
/// and c0, a third filters, exact division confirms.
inline std::set<std::pair<Rational, Rational>> quadratic_divisors(const QPoly& f) {
    std::vector<BigInt> g = cleared(f);
    std::vector<Rational> gq(g.begin(), g.end());
    std::set<std::pair<Rational, Rational>> out;
    if (g.size() < 3) return out;
    auto G = [&](long u) { return horner(gq, Rational(u)).num(); };
    std::vector<long> pts;
    for (long u : {0L, 1L, -1L, 2L, -2L, 3L, -3L, 4L, -4L, 5L, -5L}) {
        if (!G(u).is_zero()) pts.push_back(u);
        if (pts.size() == 3) break;
    }
    const long u = pts[0], w = pts[1], z = pts[2];
    const std::vector<BigInt> du = divisors(G(u)), dw = divisors(G(w));
    const BigInt gz = G(z);
    for (const auto& c2 : divisors(g.back())) {
        for (const auto& d1m : du) {
            for (int s1 : {1, -1}) {
                const BigInt d1 = BigInt(s1) * d1m;
                for (const auto& d2m : dw) {
                    for (int s2 : {1, -1}) {
                        const BigInt d2 = BigInt(s2) * d2m;
                        // c2 u^2 + c1 u + c0 = d1, c2 w^2 + c1 w + c0 = d2
                        BigInt num = d1 - d2 - c2 * BigInt(u * u - w * w);
                        if (!(num % BigInt(u - w)).is_zero()) continue;
                        BigInt c1 = num / BigInt(u - w);
                        BigInt c0 = d1 - c2 * BigInt(u * u) - c1 * BigInt(u);
                        BigInt hz = c2 * BigInt(z * z) + c1 * BigInt(z) + c0;
                        if (hz.is_zero() || !(gz % hz).is_zero()) continue;
                        QPoly h{Rational(c0, c2), Rational(c1, c2), Rational(1)};
                        if (cuboid::up_divrem(f, h).remainder.is_zero()) out.emplace(h.coeff(1), h.coeff(0));
                    }
                }
            }
        }
    }
    return out;
}

inline Rational random_rational(std::mt19937_64& rng, long num_bound, long den_bound) {
    std::uniform_int_distribution<long> nd(-num_bound, num_bound), dd(1, den_bound);
    return Rational(nd(rng), dd(rng));
}

inline QPoly random_qpoly(std::mt19937_64& rng, unsigned degree, long num_bound, long den_bound) {
    std::vector<Rational> c;
    for (unsigned i = 0; i <= degree; ++i) c.push_back(random_rational(rng, num_bound, den_bound));
    while (c.back().is_zero()) c.back() = random_rational(rng, num_bound, den_bound);
    return QPoly(std::move(c));
}

}  // namespace oracle
