#pragma once

#include <cstdint>
#include <string>

#include "mpk/errors.hpp"

namespace mpk {

enum class Var : std::uint8_t { x, y };

// Power product x^ex * y^ey.
struct Monomial {
    unsigned ex = 0;
    unsigned ey = 0;

    unsigned degree() const noexcept { return ex + ey; }
    bool is_constant() const noexcept { return ex == 0 && ey == 0; }

    bool divides(const Monomial& m) const noexcept { return ex <= m.ex && ey <= m.ey; }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        return {a.ex + b.ex, a.ey + b.ey};
    }
    friend Monomial operator/(const Monomial& a, const Monomial& b) {
        if (!b.divides(a)) throw InexactDivisionError("monomial quotient would have negative exponents");
        return {a.ex - b.ex, a.ey - b.ey};
    }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.ex == b.ex && a.ey == b.ey;
    }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
};

// Graded-lexicographic order with y senior to x: compare by total degree,
// then by the exponent of y. E.g. 1 < x < y < x^2 < x*y < y^2.
inline bool grlex_less(const Monomial& a, const Monomial& b) noexcept {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.ey < b.ey;
}

struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const noexcept {
        return grlex_less(a, b);
    }
};

// Index of the last monomial of total degree d in the graded enumeration:
// N = (d+1)(d+2)/2.
inline std::uint64_t index_bound(unsigned d) {
    return static_cast<std::uint64_t>(d + 1) * (d + 2) / 2;
}

// k-th monomial (1-based) of the graded enumeration: degrees ascend, and
// within degree d the listing runs y^d, x*y^(d-1), ..., x^d (descending in
// the senior variable y).
inline Monomial monomial_at(std::uint64_t k) {
    if (k == 0) throw DomainError("monomial enumeration is 1-based");
    unsigned d = 0;
    while (index_bound(d) < k) ++d;
    std::uint64_t offset = k - (d == 0 ? 0 : index_bound(d - 1)) - 1;  // 0-based within degree d
    auto ex = static_cast<unsigned>(offset);
    return Monomial{ex, d - ex};
}

// Inverse of monomial_at.
inline std::uint64_t monomial_index(const Monomial& m) {
    unsigned d = m.degree();
    std::uint64_t before = d == 0 ? 0 : index_bound(d - 1);
    return before + m.ex + 1;
}

// Power-product text: "1", "x", "x^2*y", ... (x printed before y).
inline std::string to_string(const Monomial& m) {
    if (m.is_constant()) return "1";
    std::string s;
    if (m.ex > 0) {
        s += 'x';
        if (m.ex > 1) s += '^' + std::to_string(m.ex);
    }
    if (m.ey > 0) {
        if (!s.empty()) s += '*';
        s += 'y';
        if (m.ey > 1) s += '^' + std::to_string(m.ey);
    }
    return s;
}

}  // namespace mpk
