#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mpk/errors.hpp"
#include "mpk/monomial.hpp"
#include "mpk/rational.hpp"

namespace mpk {

// Element of Q[x, y], stored as a sparse term list in ascending graded-lex
// order. No zero coefficients are kept; the zero polynomial is the empty
// list, and its degree is the distinguished value kMinusInfinity.
class Polynomial {
public:
    using Term = std::pair<Monomial, Rational>;

    static constexpr int kMinusInfinity = -1;

    Polynomial() = default;
    Polynomial(const Rational& c) {  // NOLINT(google-explicit-constructor)
        if (!c.is_zero()) terms_.push_back({Monomial{}, c});
    }
    Polynomial(int c) : Polynomial(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    Polynomial(const Monomial& m, const Rational& c = Rational(1)) {
        if (!c.is_zero()) terms_.push_back({m, c});
    }

    static Polynomial x() { return Polynomial(Monomial{1, 0}); }
    static Polynomial y() { return Polynomial(Monomial{0, 1}); }
    static Polynomial variable(Var v) { return v == Var::x ? x() : y(); }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept { return terms_.empty() || terms_.back().first.is_constant(); }
    bool is_one() const noexcept {
        return terms_.size() == 1 && terms_[0].first.is_constant() && terms_[0].second.is_one();
    }

    int degree() const noexcept {
        return terms_.empty() ? kMinusInfinity : static_cast<int>(terms_.back().first.degree());
    }
    int degree_y() const noexcept {
        int d = terms_.empty() ? kMinusInfinity : 0;
        for (const Term& t : terms_) d = std::max(d, static_cast<int>(t.first.ey));
        return d;
    }
    int degree_x() const noexcept {
        int d = terms_.empty() ? kMinusInfinity : 0;
        for (const Term& t : terms_) d = std::max(d, static_cast<int>(t.first.ex));
        return d;
    }

    // Graded-lex leading term (the greatest one).
    const Term& leading() const {
        if (terms_.empty()) throw DomainError("zero polynomial has no leading term");
        return terms_.back();
    }

    const std::vector<Term>& terms() const noexcept { return terms_; }

    Rational coefficient(const Monomial& m) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& k) {
            return grlex_less(t.first, k);
        });
        if (it != terms_.end() && it->first == m) return it->second;
        return Rational();
    }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (Term& t : r.terms_) t.second = -t.second;
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merged(a, b, false); }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merged(a, b, true); }

    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::map<Monomial, Rational, GrlexLess> acc;
        for (const Term& ta : a.terms_)
            for (const Term& tb : b.terms_) {
                Monomial m = ta.first * tb.first;
                auto [it, fresh] = acc.try_emplace(m, Rational());
                it->second += ta.second * tb.second;
            }
        Polynomial r;
        r.terms_.reserve(acc.size());
        for (auto& [m, c] : acc)
            if (!c.is_zero()) r.terms_.push_back({m, c});
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const Rational& c) {
        if (c.is_zero()) return {};
        Polynomial r = a;
        for (Term& t : r.terms_) t.second *= c;
        return r;
    }
    friend Polynomial operator*(const Rational& c, const Polynomial& a) { return a * c; }

    Polynomial pow(unsigned k) const {
        Polynomial r(1), base = *this;
        while (k > 0) {
            if (k & 1u) r = r * base;
            k >>= 1u;
            if (k > 0) base = base * base;
        }
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    // Formal partial derivative.
    Polynomial partial(Var v) const {
        Polynomial r;
        for (const Term& t : terms_) {
            if (v == Var::x && t.first.ex > 0)
                r.terms_.push_back({Monomial{t.first.ex - 1, t.first.ey}, t.second * Rational(static_cast<int>(t.first.ex))});
            else if (v == Var::y && t.first.ey > 0)
                r.terms_.push_back({Monomial{t.first.ex, t.first.ey - 1}, t.second * Rational(static_cast<int>(t.first.ey))});
        }
        std::sort(r.terms_.begin(), r.terms_.end(),
                  [](const Term& a, const Term& b) { return grlex_less(a.first, b.first); });
        return r;
    }

    Rational eval(const Rational& x0, const Rational& y0) const {
        Rational acc;
        for (const Term& t : terms_) {
            Rational v = t.second;
            for (unsigned i = 0; i < t.first.ex; ++i) v *= x0;
            for (unsigned i = 0; i < t.first.ey; ++i) v *= y0;
            acc += v;
        }
        return acc;
    }

    // gcd of coefficient numerators over lcm of denominators; positive, and
    // zero only for the zero polynomial. p / content(p) has coprime integer
    // coefficients.
    Rational content() const {
        if (terms_.empty()) return Rational();
        BigInt num_gcd = 0, den_lcm = 1;
        for (const Term& t : terms_) {
            num_gcd = boost::multiprecision::gcd(num_gcd, t.second.numerator());
            den_lcm = boost::multiprecision::lcm(den_lcm, t.second.denominator());
        }
        return Rational(num_gcd, den_lcm);
    }

    Polynomial primitive_part() const {
        if (terms_.empty()) return {};
        return *this * content().reciprocal();
    }

    // Scaled so the graded-lex leading coefficient is 1.
    Polynomial monic() const {
        if (terms_.empty()) return {};
        return *this * leading().second.reciprocal();
    }

    std::string render() const {
        if (terms_.empty()) return "0";
        std::string out;
        // Highest graded-lex term first.
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const Rational c = it->second;
            const Monomial& m = it->first;
            if (out.empty())
                out += c.sign() < 0 ? "-" : "";
            else
                out += c.sign() < 0 ? " - " : " + ";
            Rational mag = c.abs();
            if (m.is_constant())
                out += mag.to_string();
            else if (mag.is_one())
                out += to_string(m);
            else
                out += mag.to_string() + "*" + to_string(m);
        }
        return out;
    }

private:
    static Polynomial merged(const Polynomial& a, const Polynomial& b, bool subtract) {
        Polynomial r;
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        auto ia = a.terms_.begin(), ib = b.terms_.begin();
        while (ia != a.terms_.end() || ib != b.terms_.end()) {
            if (ib == b.terms_.end() || (ia != a.terms_.end() && grlex_less(ia->first, ib->first))) {
                r.terms_.push_back(*ia++);
            } else if (ia == a.terms_.end() || grlex_less(ib->first, ia->first)) {
                r.terms_.push_back({ib->first, subtract ? -ib->second : ib->second});
                ++ib;
            } else {
                Rational c = subtract ? ia->second - ib->second : ia->second + ib->second;
                if (!c.is_zero()) r.terms_.push_back({ia->first, c});
                ++ia;
                ++ib;
            }
        }
        return r;
    }

    std::vector<Term> terms_;
};

// Exact quotient a / b in Q[x, y]. Throws InexactDivisionError when b does
// not divide a, DivisionByZeroError when b = 0. Single-divisor reduction with
// respect to the graded-lex order: each step cancels the current leading
// term, so exactness of the division guarantees termination with remainder 0.
inline Polynomial exact_div(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw DivisionByZeroError("polynomial division by zero");
    Polynomial q, r = a;
    const auto& [mb, cb] = b.leading();
    while (!r.is_zero()) {
        const auto& [mr, cr] = r.leading();
        if (!mb.divides(mr))
            throw InexactDivisionError("polynomial division left remainder " + r.render());
        Polynomial t(mr / mb, cr / cb);
        q += t;
        r -= t * b;
    }
    return q;
}

namespace detail {

// Euclidean gcd for polynomials that involve x only, normalized monic.
inline Polynomial gcd_univariate_x(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        // a mod b by repeated leading-term cancellation in x.
        const int db = b.degree_x();
        const Rational lb = b.coefficient(Monomial{static_cast<unsigned>(db), 0});
        while (!a.is_zero() && a.degree_x() >= db) {
            const auto da = static_cast<unsigned>(a.degree_x());
            Rational la = a.coefficient(Monomial{da, 0});
            a -= Polynomial(Monomial{da - static_cast<unsigned>(db), 0}, la / lb) * b;
        }
        std::swap(a, b);
    }
    return a.is_zero() ? a : a.monic();
}

// Coefficient of y^deg_y(p), as a polynomial in x.
inline Polynomial lead_y_coefficient(const Polynomial& p) {
    const auto dy = static_cast<unsigned>(p.degree_y());
    Polynomial r;
    for (const auto& [m, c] : p.terms())
        if (m.ey == dy) r += Polynomial(Monomial{m.ex, 0}, c);
    return r;
}

// gcd in Q[x] of the y-coefficients of p.
inline Polynomial content_y(const Polynomial& p) {
    Polynomial g;
    const auto dy = static_cast<unsigned>(std::max(p.degree_y(), 0));
    for (unsigned k = 0; k <= dy; ++k) {
        Polynomial ck;
        for (const auto& [m, c] : p.terms())
            if (m.ey == k) ck += Polynomial(Monomial{m.ex, 0}, c);
        g = gcd_univariate_x(g, ck);
        if (g.is_one()) break;
    }
    return g;
}

// Pseudo-remainder of a by b with respect to y (deg_y a >= deg_y b >= 1).
// Each pass scales by lead_y(b) and cancels the leading y-term, so only the
// y-degree decreases; the scale factor washes out in the primitive PRS.
inline Polynomial prem_y(Polynomial r, const Polynomial& b) {
    const Polynomial lb = lead_y_coefficient(b);
    const int db = b.degree_y();
    while (!r.is_zero() && r.degree_y() >= db) {
        const Polynomial lr = lead_y_coefficient(r);
        const auto k = static_cast<unsigned>(r.degree_y() - db);
        r = lb * r - lr * Polynomial(Monomial{0, k}) * b;
    }
    return r;
}

}  // namespace detail

// gcd in Q[x, y] via the primitive pseudo-remainder sequence in y, monic in
// the graded-lex leading coefficient (gcds over a field are unique up to a
// constant factor).
inline Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return b.is_zero() ? b : b.monic();
    if (b.is_zero()) return a.monic();
    const int dya = a.degree_y(), dyb = b.degree_y();
    if (dya == 0 && dyb == 0) return detail::gcd_univariate_x(a, b);
    if (dya == 0) return detail::gcd_univariate_x(a, detail::content_y(b));
    if (dyb == 0) return detail::gcd_univariate_x(b, detail::content_y(a));

    const Polynomial ca = detail::content_y(a), cb = detail::content_y(b);
    Polynomial A = exact_div(a, ca), B = exact_div(b, cb);
    const Polynomial c = detail::gcd_univariate_x(ca, cb);
    if (A.degree_y() < B.degree_y()) std::swap(A, B);
    Polynomial g;
    while (true) {
        Polynomial r = detail::prem_y(A, B);
        if (r.is_zero()) {
            g = B;
            break;
        }
        if (r.degree_y() == 0) {
            g = Polynomial(1);  // primitive parts are coprime in y
            break;
        }
        A = std::move(B);
        B = exact_div(r, detail::content_y(r));
    }
    return (c * g).monic();
}

}  // namespace mpk
