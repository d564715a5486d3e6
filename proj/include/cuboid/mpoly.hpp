#pragma once

// Sparse multivariate polynomials over Q in canonical form.
//
// Terms live in a map keyed by dense exponent vectors, ordered graded
// lexicographically (first variable most significant). No stored
// coefficient is ever zero, so structural equality is algebraic equality.

#include "cuboid/degree.hpp"
#include "cuboid/exact_arith.hpp"

#include <algorithm>
#include <initializer_list>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cuboid {

/// Ordered list of distinct variable names. Cheap to copy.
class VarSet {
public:
    VarSet() : names_(std::make_shared<const std::vector<std::string>>()) {}
    VarSet(std::initializer_list<std::string> names) : VarSet(std::vector<std::string>(names)) {}
    explicit VarSet(std::vector<std::string> names) {
        for (std::size_t i = 0; i < names.size(); ++i) {
            for (std::size_t j = i + 1; j < names.size(); ++j) {
                if (names[i] == names[j]) throw std::invalid_argument("duplicate variable name: " + names[i]);
            }
        }
        names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
    }

    [[nodiscard]] std::size_t size() const { return names_->size(); }
    [[nodiscard]] const std::string& name(std::size_t i) const { return names_->at(i); }
    [[nodiscard]] const std::vector<std::string>& names() const { return *names_; }

    [[nodiscard]] std::optional<std::size_t> find(const std::string& n) const {
        auto it = std::find(names_->begin(), names_->end(), n);
        if (it == names_->end()) return std::nullopt;
        return static_cast<std::size_t>(it - names_->begin());
    }
    [[nodiscard]] std::size_t index(const std::string& n) const {
        auto i = find(n);
        if (!i) throw std::invalid_argument("unknown variable: " + n);
        return *i;
    }

    /// The same list with one variable removed.
    [[nodiscard]] VarSet without(const std::string& n) const {
        std::vector<std::string> rest;
        for (const auto& x : *names_) {
            if (x != n) rest.push_back(x);
        }
        return VarSet(std::move(rest));
    }

    friend bool operator==(const VarSet& a, const VarSet& b) {
        return a.names_ == b.names_ || *a.names_ == *b.names_;
    }

private:
    std::shared_ptr<const std::vector<std::string>> names_;
};

using Exponents = std::vector<unsigned>;

inline unsigned total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0U); }

struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        unsigned da = total_degree(a);
        unsigned db = total_degree(b);
        if (da != db) return da < db;
        return a < b;
    }
};

class MPoly {
public:
    using TermMap = std::map<Exponents, Rational, GrlexLess>;

    /// The zero polynomial in the given ring.
    MPoly() = default;
    explicit MPoly(VarSet vars) : vars_(std::move(vars)) {}
    MPoly(VarSet vars, const Rational& c) : vars_(std::move(vars)) {
        if (!c.is_zero()) terms_.emplace(Exponents(vars_.size(), 0), c);
    }

    static MPoly variable(const VarSet& vars, const std::string& name) {
        Exponents e(vars.size(), 0);
        e[vars.index(name)] = 1;
        return monomial(vars, std::move(e), Rational(1));
    }
    static MPoly monomial(const VarSet& vars, Exponents e, const Rational& c) {
        if (e.size() != vars.size()) throw std::invalid_argument("exponent vector length mismatch");
        MPoly p(vars);
        if (!c.is_zero()) p.terms_.emplace(std::move(e), c);
        return p;
    }

    [[nodiscard]] const VarSet& vars() const { return vars_; }
    [[nodiscard]] const TermMap& terms() const { return terms_; }
    [[nodiscard]] std::size_t term_count() const { return terms_.size(); }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && cuboid::total_degree(terms_.begin()->first) == 0);
    }
    [[nodiscard]] bool is_one() const { return is_constant() && !is_zero() && terms_.begin()->second.is_one(); }
    /// Value of a constant polynomial. Throws if not constant.
    [[nodiscard]] Rational constant_value() const {
        if (!is_constant()) throw std::logic_error("polynomial is not constant");
        return is_zero() ? Rational(0) : terms_.begin()->second;
    }
    [[nodiscard]] Rational coeff(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Adds c * x^e in place.
    void add_term(const Exponents& e, const Rational& c) {
        if (e.size() != vars_.size()) throw std::invalid_argument("exponent vector length mismatch");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// Leading term under grlex. Throws on zero.
    [[nodiscard]] const std::pair<const Exponents, Rational>& leading_term() const {
        if (is_zero()) throw std::logic_error("zero polynomial has no leading term");
        return *terms_.rbegin();
    }

    [[nodiscard]] Degree degree_in(const std::string& var) const {
        std::size_t i = vars_.index(var);
        if (is_zero()) return Degree::minus_infinity();
        unsigned d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
        return Degree(d);
    }
    [[nodiscard]] Degree total_degree() const {
        if (is_zero()) return Degree::minus_infinity();
        return Degree(cuboid::total_degree(terms_.rbegin()->first));
    }
    [[nodiscard]] bool is_homogeneous() const {
        if (is_zero()) return true;
        unsigned d = cuboid::total_degree(terms_.begin()->first);
        return std::all_of(terms_.begin(), terms_.end(),
                           [d](const auto& t) { return cuboid::total_degree(t.first) == d; });
    }

    MPoly operator-() const {
        MPoly r(*this);
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }
    MPoly& operator+=(const MPoly& o) {
        check_same_ring(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o) {
        check_same_ring(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        a.check_same_ring(b);
        MPoly r(a.vars_);
        const std::size_t n = a.vars_.size();
        Exponents e(n);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }
    friend MPoly operator*(const Rational& k, const MPoly& a) {
        MPoly r(a.vars_);
        if (k.is_zero()) return r;
        for (const auto& [e, c] : a.terms_) r.terms_.emplace_hint(r.terms_.end(), e, k * c);
        return r;
    }
    friend MPoly operator*(const MPoly& a, const Rational& k) { return k * a; }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    /// Repeated squaring.
    [[nodiscard]] MPoly pow(unsigned e) const {
        MPoly result(vars_, Rational(1));
        MPoly base = *this;
        while (e > 0) {
            if (e & 1U) result *= base;
            e >>= 1U;
            if (e > 0) base *= base;
        }
        return result;
    }

    friend bool operator==(const MPoly& a, const MPoly& b) { return a.vars_ == b.vars_ && a.terms_ == b.terms_; }

    /// Human-readable form, terms in descending grlex order with explicit exponents.
    [[nodiscard]] std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            Rational mag = c.abs();
            if (first) {
                if (c.sign() < 0) os << "-";
            } else {
                os << (c.sign() < 0 ? " - " : " + ");
            }
            first = false;
            bool is_const = cuboid::total_degree(e) == 0;
            bool wrote = false;
            if (!mag.is_one() || is_const) {
                os << mag;
                wrote = true;
            }
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (wrote) os << "*";
                os << vars_.name(i);
                if (e[i] > 1) os << "^" << e[i];
                wrote = true;
            }
        }
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const MPoly& p) { return os << p.to_string(); }

private:
    void check_same_ring(const MPoly& o) const {
        if (!(vars_ == o.vars_)) throw std::invalid_argument("polynomials live in different rings (mismatched VarSet)");
    }

    VarSet vars_;
    TermMap terms_;
};

inline MPoly mp_add(const MPoly& a, const MPoly& b) { return a + b; }
inline MPoly mp_sub(const MPoly& a, const MPoly& b) { return a - b; }
inline MPoly mp_mul(const MPoly& a, const MPoly& b) { return a * b; }
inline MPoly mp_neg(const MPoly& a) { return -a; }
inline MPoly mp_pow(const MPoly& a, unsigned e) { return a.pow(e); }
inline Degree mp_degree_in(const MPoly& f, const std::string& var) { return f.degree_in(var); }

/// Substitutes rational values for some variables. The result lives in the
/// ring of the unbound variables (original order kept).
inline MPoly mp_eval_partial(const MPoly& f, const std::map<std::string, Rational>& bindings) {
    const VarSet& vs = f.vars();
    std::vector<std::optional<Rational>> value(vs.size());
    std::vector<std::string> rest;
    for (const auto& [name, val] : bindings) value[vs.index(name)] = val;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (!value[i]) {
            rest.push_back(vs.name(i));
            keep.push_back(i);
        }
    }
    // Power caches keep repeated evaluation of dense polynomials cheap.
    std::vector<std::vector<Rational>> powers(vs.size());
    auto power = [&](std::size_t i, unsigned k) -> const Rational& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(Rational(1));
        while (cache.size() <= k) cache.push_back(cache.back() * *value[i]);
        return cache[k];
    };
    MPoly out{VarSet(std::move(rest))};
    Exponents e(keep.size());
    for (const auto& [ex, c] : f.terms()) {
        Rational k = c;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (value[i] && ex[i] > 0) k *= power(i, ex[i]);
        }
        for (std::size_t j = 0; j < keep.size(); ++j) e[j] = ex[keep[j]];
        out.add_term(e, k);
    }
    return out;
}

/// Full evaluation. Throws if any variable is left unbound.
inline Rational mp_evaluate(const MPoly& f, const std::map<std::string, Rational>& bindings) {
    MPoly r = mp_eval_partial(f, bindings);
    if (r.vars().size() != 0 && !r.is_constant()) throw std::invalid_argument("mp_evaluate: unbound variables remain");
    return r.constant_value();
}

/// Replaces each variable of f by a polynomial in the target ring. Variables
/// absent from `images` map to the same-named variable of the target ring.
inline MPoly mp_substitute(const MPoly& f, const std::map<std::string, MPoly>& images, const VarSet& target) {
    const VarSet& vs = f.vars();
    std::vector<MPoly> img;
    img.reserve(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i) {
        auto it = images.find(vs.name(i));
        if (it != images.end()) {
            if (!(it->second.vars() == target)) throw std::invalid_argument("substitution image in wrong ring");
            img.push_back(it->second);
        } else {
            img.push_back(MPoly::variable(target, vs.name(i)));
        }
    }
    std::vector<std::vector<MPoly>> powers(vs.size());
    auto power = [&](std::size_t i, unsigned k) -> const MPoly& {
        auto& cache = powers[i];
        if (cache.empty()) cache.emplace_back(target, Rational(1));
        while (cache.size() <= k) cache.push_back(cache.back() * img[i]);
        return cache[k];
    };
    MPoly out(target);
    for (const auto& [ex, c] : f.terms()) {
        MPoly t(target, c);
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (ex[i] > 0) t *= power(i, ex[i]);
        }
        out += t;
    }
    return out;
}

/// Moves f into a ring containing all of its variables (matched by name).
inline MPoly mp_embed(const MPoly& f, const VarSet& target) {
    const VarSet& vs = f.vars();
    std::vector<std::size_t> where(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i) where[i] = target.index(vs.name(i));
    MPoly out(target);
    Exponents e(target.size());
    for (const auto& [ex, c] : f.terms()) {
        std::fill(e.begin(), e.end(), 0U);
        for (std::size_t i = 0; i < vs.size(); ++i) e[where[i]] = ex[i];
        out.add_term(e, c);
    }
    return out;
}

/// Positional renaming into a ring with the same number of variables.
inline MPoly mp_rename(const MPoly& f, const VarSet& target) {
    if (target.size() != f.vars().size()) throw std::invalid_argument("mp_rename: variable count mismatch");
    MPoly out(target);
    for (const auto& [e, c] : f.terms()) out.add_term(e, c);
    return out;
}

inline MPoly mp_derivative(const MPoly& f, const std::string& var) {
    std::size_t i = f.vars().index(var);
    MPoly out(f.vars());
    for (const auto& [e, c] : f.terms()) {
        if (e[i] == 0) continue;
        Exponents d = e;
        d[i] -= 1;
        out.add_term(d, c * Rational(static_cast<long>(e[i])));
    }
    return out;
}

/// Exact quotient f / g. Throws std::domain_error when g does not divide f.
inline MPoly mp_divide_exact(const MPoly& f, const MPoly& g) {
    if (g.is_zero()) throw std::domain_error("division by zero");
    if (!(f.vars() == g.vars())) throw std::invalid_argument("polynomials live in different rings (mismatched VarSet)");
    const std::size_t n = f.vars().size();
    if (g.is_constant()) return f * g.constant_value().inverse();
    MPoly q(f.vars());
    MPoly r = f;
    const auto& [eg, cg] = g.leading_term();
    Exponents e(n);
    while (!r.is_zero()) {
        const auto& [er, cr] = r.leading_term();
        for (std::size_t i = 0; i < n; ++i) {
            if (er[i] < eg[i]) throw std::domain_error("inexact polynomial division");
            e[i] = er[i] - eg[i];
        }
        MPoly t = MPoly::monomial(f.vars(), e, cr / cg);
        q += t;
        r -= t * g;
    }
    return q;
}

/// Maps each term s^i a^j of f to S^i A^j Z^(d-i-j). `target` lists the
/// renamed variables followed by the new homogenizing variable.
inline MPoly homogenize(const MPoly& f, unsigned total_degree_bound, const VarSet& target) {
    const std::size_t n = f.vars().size();
    if (target.size() != n + 1) throw std::invalid_argument("homogenize: target ring must add exactly one variable");
    if (!f.is_zero() && f.total_degree().value() > total_degree_bound) {
        throw std::invalid_argument("homogenize: total degree too small");
    }
    MPoly out(target);
    Exponents e(n + 1);
    for (const auto& [ex, c] : f.terms()) {
        std::copy(ex.begin(), ex.end(), e.begin());
        e[n] = total_degree_bound - cuboid::total_degree(ex);
        out.add_term(e, c);
    }
    return out;
}

/// Sets the last variable to 1 and renames the rest positionally into `target`.
inline MPoly dehomogenize(const MPoly& f, const VarSet& target) {
    const VarSet& vs = f.vars();
    if (vs.size() == 0) throw std::invalid_argument("dehomogenize: no variables");
    MPoly partial = mp_eval_partial(f, {{vs.name(vs.size() - 1), Rational(1)}});
    return mp_rename(partial, target);
}

}  // namespace cuboid
