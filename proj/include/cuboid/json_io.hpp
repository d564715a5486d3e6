#pragma once

// JSON encodings of the algebraic values: rationals as "p/q" strings,
// polynomials as {vars, terms: [[[exponents...], "p/q"], ...]}.

#include "cuboid/exact_arith.hpp"
#include "cuboid/mpoly.hpp"
#include "cuboid/upoly.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace cuboid {

using Json = nlohmann::json;

inline Json rational_to_json(const Rational& x) { return x.to_fraction_string(); }

inline Rational rational_from_json(const Json& j) {
    if (!j.is_string()) throw std::invalid_argument("expected a rational string");
    return Rational::parse(j.get<std::string>());
}

inline Json bigint_to_json(const BigInt& x) { return x.to_string(); }

inline BigInt bigint_from_json(const Json& j) {
    if (j.is_number_integer()) return BigInt(j.get<long>());
    if (!j.is_string()) throw std::invalid_argument("expected an integer string");
    return BigInt::parse(j.get<std::string>());
}

/// Terms are emitted in descending grlex order.
inline Json mpoly_to_json(const MPoly& f) {
    Json terms = Json::array();
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        terms.push_back(Json::array({Json(it->first), rational_to_json(it->second)}));
    }
    return Json{{"vars", f.vars().names()}, {"terms", std::move(terms)}};
}

inline MPoly mpoly_from_json(const Json& j) {
    VarSet vs(j.at("vars").get<std::vector<std::string>>());
    MPoly f(vs);
    for (const auto& t : j.at("terms")) {
        if (!t.is_array() || t.size() != 2) throw std::invalid_argument("malformed polynomial term");
        f.add_term(t[0].get<Exponents>(), rational_from_json(t[1]));
    }
    return f;
}

inline Json roots_to_json(const RootList& roots) {
    Json out = Json::array();
    for (const auto& r : roots) out.push_back(Json{{"root", rational_to_json(r.root)}, {"multiplicity", r.multiplicity}});
    return out;
}

inline RootList roots_from_json(const Json& j) {
    RootList out;
    for (const auto& r : j) out.push_back({rational_from_json(r.at("root")), r.at("multiplicity").get<unsigned>()});
    return out;
}

}  // namespace cuboid
