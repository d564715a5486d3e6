#pragma once

#include <compare>
#include <optional>
#include <ostream>
#include <stdexcept>

namespace cuboid {

/// Polynomial degree; the zero polynomial has degree minus infinity.
class Degree {
public:
    constexpr explicit Degree(unsigned v) : v_(v) {}
    static constexpr Degree minus_infinity() { return Degree(); }

    [[nodiscard]] constexpr bool is_minus_infinity() const { return !v_.has_value(); }
    [[nodiscard]] unsigned value() const {
        if (!v_) throw std::logic_error("degree of the zero polynomial has no numeric value");
        return *v_;
    }

    friend constexpr bool operator==(const Degree&, const Degree&) = default;
    friend constexpr std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
        if (!a.v_ || !b.v_) return a.v_.has_value() <=> b.v_.has_value();
        return *a.v_ <=> *b.v_;
    }
    friend constexpr bool operator==(const Degree& a, unsigned b) { return a.v_ && *a.v_ == b; }

    friend std::ostream& operator<<(std::ostream& os, const Degree& d) {
        if (d.is_minus_infinity()) return os << "-inf";
        return os << *d.v_;
    }

private:
    constexpr Degree() = default;
    std::optional<unsigned> v_;
};

}  // namespace cuboid
