#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mpk/errors.hpp"
#include "mpk/rational.hpp"

namespace mpk {

// Univariate polynomial over a field F, coefficients stored ascending with no
// trailing zeros. Instantiated with exact fields (Rational, Gaussian
// rationals) for symbolic work and with std::complex<double> for the numeric
// root/residue fallback.
template <class F>
class UPolyT {
public:
    UPolyT() = default;
    UPolyT(const F& c) {  // NOLINT(google-explicit-constructor)
        c_.push_back(c);
        trim();
    }
    UPolyT(int c) : UPolyT(F(c)) {}  // NOLINT(google-explicit-constructor)

    static UPolyT variable() { return from_coefficients({F(0), F(1)}); }

    static UPolyT from_coefficients(std::vector<F> ascending) {
        UPolyT p;
        p.c_ = std::move(ascending);
        p.trim();
        return p;
    }

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_constant() const noexcept { return c_.size() <= 1; }

    const std::vector<F>& coefficients() const noexcept { return c_; }
    F coeff(std::size_t k) const { return k < c_.size() ? c_[k] : F(0); }
    const F& leading() const {
        if (c_.empty()) throw DomainError("zero polynomial has no leading coefficient");
        return c_.back();
    }

    UPolyT operator-() const {
        UPolyT r = *this;
        for (F& c : r.c_) c = -c;
        return r;
    }

    friend UPolyT operator+(const UPolyT& a, const UPolyT& b) {
        UPolyT r;
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), F(0));
        for (std::size_t i = 0; i < r.c_.size(); ++i) {
            if (i < a.c_.size()) r.c_[i] = r.c_[i] + a.c_[i];
            if (i < b.c_.size()) r.c_[i] = r.c_[i] + b.c_[i];
        }
        r.trim();
        return r;
    }
    friend UPolyT operator-(const UPolyT& a, const UPolyT& b) { return a + (-b); }
    friend UPolyT operator*(const UPolyT& a, const UPolyT& b) {
        if (a.is_zero() || b.is_zero()) return {};
        UPolyT r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, F(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
        r.trim();
        return r;
    }
    friend UPolyT operator*(const UPolyT& a, const F& s) {
        UPolyT r = a;
        for (F& c : r.c_) c = c * s;
        r.trim();
        return r;
    }
    friend UPolyT operator*(const F& s, const UPolyT& a) { return a * s; }

    UPolyT& operator+=(const UPolyT& o) { return *this = *this + o; }
    UPolyT& operator-=(const UPolyT& o) { return *this = *this - o; }
    UPolyT& operator*=(const UPolyT& o) { return *this = *this * o; }

    friend bool operator==(const UPolyT& a, const UPolyT& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UPolyT& a, const UPolyT& b) { return !(a == b); }

    UPolyT pow(unsigned k) const {
        UPolyT r(F(1)), base = *this;
        while (k > 0) {
            if (k & 1u) r = r * base;
            k >>= 1u;
            if (k > 0) base = base * base;
        }
        return r;
    }

    // Quotient and remainder of field-coefficient long division.
    friend std::pair<UPolyT, UPolyT> divmod(const UPolyT& a, const UPolyT& b) {
        if (b.is_zero()) throw DivisionByZeroError("univariate polynomial division by zero");
        UPolyT q, r = a;
        const int db = b.degree();
        while (!r.is_zero() && r.degree() >= db) {
            const int k = r.degree() - db;
            const F coef = r.c_.back() / b.c_.back();
            UPolyT t;
            t.c_.assign(static_cast<std::size_t>(k) + 1, F(0));
            t.c_.back() = coef;
            q += t;
            r -= t * b;
        }
        return {q, r};
    }

    UPolyT derivative() const {
        if (c_.size() <= 1) return {};
        UPolyT r;
        r.c_.reserve(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r.c_.push_back(c_[i] * F(static_cast<int>(i)));
        r.trim();
        return r;
    }

    F eval(const F& at) const {
        F acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * at + c_[i];
        return acc;
    }

    // Horner evaluation in another domain X, with conv mapping F into X.
    template <class X, class Conv>
    X eval_with(const X& at, Conv conv) const {
        X acc = X(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * at + conv(c_[i]);
        return acc;
    }

    // p(x + a), the classic in-place synthetic-shift loop.
    UPolyT taylor_shift(const F& a) const {
        if (c_.size() <= 1) return *this;
        std::vector<F> c = c_;
        const std::size_t n = c.size() - 1;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = n - 1; j + 1 > i; --j) c[j] = c[j] + a * c[j + 1];
        return from_coefficients(std::move(c));
    }

    UPolyT monic() const {
        if (c_.empty()) return {};
        return *this * (F(1) / c_.back());
    }

    std::string render(const std::string& var, std::string (*fmt)(const F&)) const {
        if (c_.empty()) return "0";
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == F(0)) continue;
            std::string coef = fmt(c_[i]);
            bool neg = !coef.empty() && coef[0] == '-';
            if (neg) coef.erase(0, 1);
            if (out.empty())
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            if (i == 0) {
                out += coef;
            } else {
                const std::string power = i == 1 ? var : var + "^" + std::to_string(i);
                out += coef == "1" ? power : coef + "*" + power;
            }
        }
        return out.empty() ? "0" : out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == F(0)) c_.pop_back();
    }

    std::vector<F> c_;
};

using UPoly = UPolyT<Rational>;

// Monic greatest common divisor by the Euclidean algorithm (field
// coefficients, exact F only).
template <class F>
UPolyT<F> gcd(UPolyT<F> a, UPolyT<F> b) {
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

}  // namespace mpk
