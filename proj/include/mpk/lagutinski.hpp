#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mpk/derivation.hpp"
#include "mpk/errors.hpp"
#include "mpk/monomial.hpp"
#include "mpk/polynomial.hpp"
#include "mpk/rational_function.hpp"

namespace mpk {

// The order-n leading principal block of the infinite matrix whose (i, j)
// entry is D^(i-1) applied to the j-th monomial of the graded enumeration.
struct LagutinskiMatrix {
    unsigned order = 0;
    std::vector<std::vector<Polynomial>> entries;  // row-major, 0-based storage

    // 1-based accessor matching the D^(i-1) m_j indexing.
    const Polynomial& entry(unsigned i, unsigned j) const {
        if (i < 1 || i > order || j < 1 || j > order) throw DomainError("matrix index out of range");
        return entries[i - 1][j - 1];
    }
};

inline LagutinskiMatrix build_matrix(const Derivation& D, unsigned n) {
    if (n < 1) throw DomainError("matrix order must be at least 1");
    LagutinskiMatrix m;
    m.order = n;
    m.entries.resize(n);
    m.entries[0].reserve(n);
    for (unsigned j = 1; j <= n; ++j) m.entries[0].emplace_back(monomial_at(j));
    for (unsigned i = 1; i < n; ++i) {
        m.entries[i].reserve(n);
        for (unsigned j = 0; j < n; ++j) m.entries[i].push_back(D.apply(m.entries[i - 1][j]));
    }
    return m;
}

namespace detail {

// Degree-minimal nonzero pivot in column `col` among rows [from, n); returns
// n when the whole column segment is zero.
inline std::size_t pick_pivot(const std::vector<std::vector<Polynomial>>& a, std::size_t from, std::size_t col) {
    const std::size_t n = a.size();
    std::size_t best = n;
    int best_deg = 0;
    for (std::size_t r = from; r < n; ++r) {
        if (a[r][col].is_zero()) continue;
        const int deg = a[r][col].degree();
        if (best == n || deg < best_deg) {
            best = r;
            best_deg = deg;
        }
    }
    return best;
}

struct Echelon {
    std::vector<std::vector<Polynomial>> rows;
    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, column), in order
};

// Fraction-free (Bareiss) row echelon form. Every division is exact in
// Q[x, y]; rank deficiency shows up as skipped (pivot-free) columns.
inline Echelon fraction_free_echelon(std::vector<std::vector<Polynomial>> a) {
    Echelon e;
    if (a.empty()) return e;
    const std::size_t nrows = a.size(), ncols = a[0].size();
    Polynomial prev(1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < nrows; ++col) {
        const std::size_t piv = pick_pivot(a, row, col);
        if (piv == nrows) continue;
        if (piv != row) std::swap(a[piv], a[row]);
        for (std::size_t i = row + 1; i < nrows; ++i) {
            for (std::size_t j = col + 1; j < ncols; ++j)
                a[i][j] = exact_div(a[row][col] * a[i][j] - a[i][col] * a[row][j], prev);
            a[i][col] = Polynomial();
        }
        prev = a[row][col];
        e.pivots.emplace_back(row, col);
        ++row;
    }
    e.rows = std::move(a);
    return e;
}

}  // namespace detail

// Exact determinant by fraction-free Bareiss elimination with degree-minimal
// pivoting; a pivot-free column short-circuits to zero.
inline Polynomial bareiss_determinant(std::vector<std::vector<Polynomial>> a) {
    const std::size_t n = a.size();
    if (n == 0) return Polynomial(1);
    for (const auto& row : a)
        if (row.size() != n) throw DomainError("determinant of a non-square matrix");
    int sign = 1;
    Polynomial prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const std::size_t piv = detail::pick_pivot(a, k, k);
        if (piv == n) return {};
        if (piv != k) {
            std::swap(a[piv], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = exact_div(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev);
            a[i][k] = Polynomial();
        }
        prev = a[k][k];
    }
    return sign < 0 ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

inline Polynomial detL(const Derivation& D, unsigned n) {
    return bareiss_determinant(build_matrix(D, n).entries);
}

struct IntegralReport {
    bool exists = false;
    unsigned degree_bound = 0;
    Polynomial determinant;
    std::optional<RationalFunction> integral;
};

// Existence test: the order-N determinant, N = (d+1)(d+2)/2, vanishes exactly
// when a rational integral with numerator and denominator of degree at most d
// exists. No recovery is attempted here.
inline IntegralReport decide_integral(const Derivation& D, unsigned d) {
    if (d < 1) throw DomainError("degree bound must be at least 1");
    IntegralReport rep;
    rep.degree_bound = d;
    rep.determinant = detL(D, static_cast<unsigned>(index_bound(d)));
    rep.exists = rep.determinant.is_zero();
    return rep;
}

namespace detail {

// Basis of the right kernel over Q(x, y): fraction-free forward elimination,
// then back-substitution in the fraction field, one vector per free column.
inline std::vector<std::vector<RationalFunction>> kernel_basis(const std::vector<std::vector<Polynomial>>& m) {
    const Echelon e = fraction_free_echelon(m);
    const std::size_t ncols = m.empty() ? 0 : m[0].size();
    std::vector<bool> is_pivot_col(ncols, false);
    for (const auto& [r, c] : e.pivots) is_pivot_col[c] = true;

    std::vector<std::vector<RationalFunction>> basis;
    for (std::size_t free_col = 0; free_col < ncols; ++free_col) {
        if (is_pivot_col[free_col]) continue;
        std::vector<RationalFunction> v(ncols);
        v[free_col] = RationalFunction(1);
        for (auto it = e.pivots.rbegin(); it != e.pivots.rend(); ++it) {
            const auto [r, c] = *it;
            RationalFunction acc;
            for (std::size_t j = c + 1; j < ncols; ++j) {
                if (v[j].is_zero() || e.rows[r][j].is_zero()) continue;
                acc += RationalFunction(e.rows[r][j]) * v[j];
            }
            v[c] = -acc / RationalFunction(e.rows[r][c]);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

// Scale a kernel vector to a primitive polynomial vector: multiply by the
// denominator lcm, divide out the polynomial gcd and the rational content.
inline std::vector<Polynomial> clear_denominators(const std::vector<RationalFunction>& v) {
    Polynomial lcm(1);
    for (const RationalFunction& f : v) {
        if (f.is_zero()) continue;
        const Polynomial g = gcd(lcm, f.denominator());
        lcm = exact_div(lcm * f.denominator(), g);
    }
    std::vector<Polynomial> w;
    w.reserve(v.size());
    for (const RationalFunction& f : v)
        w.push_back(f.is_zero() ? Polynomial() : f.numerator() * exact_div(lcm, f.denominator()));

    Polynomial g;
    for (const Polynomial& p : w) g = gcd(g, p);
    if (!g.is_zero() && !g.is_one())
        for (Polynomial& p : w) p = exact_div(p, g);

    BigInt num_gcd = 0, den_lcm = 1;
    for (const Polynomial& p : w)
        for (const auto& [mono, coef] : p.terms()) {
            num_gcd = boost::multiprecision::gcd(num_gcd, coef.numerator());
            den_lcm = boost::multiprecision::lcm(den_lcm, coef.denominator());
        }
    if (num_gcd != 0) {
        const Rational scale = Rational(den_lcm, num_gcd);
        for (Polynomial& p : w) p = p * scale;
    }
    return w;
}

// Candidate integrals from one primitive kernel vector: the entries after
// normalizing the last nonzero entry to 1, then all pairwise ratios. Each
// candidate is verified exactly; the first verified one wins.
inline std::optional<RationalFunction> recover_from_vector(const Derivation& D, const std::vector<Polynomial>& c) {
    std::size_t last = c.size();
    for (std::size_t j = c.size(); j-- > 0;)
        if (!c[j].is_zero()) {
            last = j;
            break;
        }
    if (last == c.size()) return std::nullopt;

    std::vector<RationalFunction> seen;
    auto consider = [&](const Polynomial& num, const Polynomial& den) -> std::optional<RationalFunction> {
        if (num.is_zero() || den.is_zero()) return std::nullopt;
        RationalFunction f(num, den);
        if (f.is_constant()) return std::nullopt;
        for (const RationalFunction& s : seen)
            if (s == f) return std::nullopt;
        seen.push_back(f);
        if (D.is_integral(f)) return f;
        return std::nullopt;
    };

    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i == last) continue;
        if (auto f = consider(c[i], c[last])) return f;
    }
    for (std::size_t j = 0; j < c.size(); ++j)
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i == j || j == last) continue;
            if (auto f = consider(c[i], c[j])) return f;
        }
    return std::nullopt;
}

}  // namespace detail

// Existence test plus recovery attempt. When the determinant vanishes, a
// kernel vector of the order-N matrix over Q(x, y) supplies candidate
// integrals as ratios of its entries; candidates are verified with
// is_integral and the first verified one is reported. When no candidate
// verifies, existence stands but no integral is attached.
inline IntegralReport find_rational_integral(const Derivation& D, unsigned d) {
    IntegralReport rep = decide_integral(D, d);
    if (!rep.exists) return rep;
    const unsigned n = static_cast<unsigned>(index_bound(d));
    const LagutinskiMatrix m = build_matrix(D, n);
    for (const auto& kv : detail::kernel_basis(m.entries)) {
        const std::vector<Polynomial> c = detail::clear_denominators(kv);
        if (auto f = detail::recover_from_vector(D, c)) {
            rep.integral = std::move(f);
            break;
        }
    }
    return rep;
}

}  // namespace mpk
