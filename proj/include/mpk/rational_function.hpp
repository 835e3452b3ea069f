#pragma once

#include <string>
#include <utility>

#include "mpk/errors.hpp"
#include "mpk/polynomial.hpp"

namespace mpk {

// Element of Q(x, y), kept fully reduced with a monic denominator so equal
// values have equal representations.
class RationalFunction {
public:
    RationalFunction() : num_(), den_(1) {}
    RationalFunction(const Polynomial& p) : num_(p), den_(1) {}  // NOLINT(google-explicit-constructor)
    RationalFunction(const Rational& c) : num_(c), den_(1) {}    // NOLINT(google-explicit-constructor)
    RationalFunction(int c) : num_(c), den_(1) {}                // NOLINT(google-explicit-constructor)
    RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DivisionByZeroError("rational function with zero denominator");
        normalize();
    }

    const Polynomial& numerator() const noexcept { return num_; }
    const Polynomial& denominator() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const noexcept { return den_.is_one(); }

    RationalFunction operator-() const {
        RationalFunction r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        // Cross-reduce through g = gcd(den_a, den_b) to keep intermediates small.
        Polynomial g = gcd(a.den_, b.den_);
        Polynomial da = exact_div(a.den_, g), db = exact_div(b.den_, g);
        return {a.num_ * db + b.num_ * da, da * b.den_};
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        Polynomial g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
        return {exact_div(a.num_, g1) * exact_div(b.num_, g2),
                exact_div(a.den_, g2) * exact_div(b.den_, g1)};
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw DivisionByZeroError("rational function division by zero");
        return a * b.reciprocal();
    }

    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    RationalFunction reciprocal() const {
        if (num_.is_zero()) throw DivisionByZeroError("reciprocal of zero rational function");
        return {den_, num_};
    }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    std::string render() const {
        if (den_.is_one()) return num_.render();
        const bool wrap_num = num_.terms().size() > 1;
        const bool wrap_den = den_.terms().size() > 1;
        std::string n = wrap_num ? "(" + num_.render() + ")" : num_.render();
        std::string d = wrap_den ? "(" + den_.render() + ")" : den_.render();
        return n + " / " + d;
    }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = Polynomial(1);
            return;
        }
        Polynomial g = gcd(num_, den_);
        if (!g.is_one()) {
            num_ = exact_div(num_, g);
            den_ = exact_div(den_, g);
        }
        const Rational lead = den_.leading().second;
        if (!lead.is_one()) {
            const Rational inv = lead.reciprocal();
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    Polynomial num_, den_;
};

}  // namespace mpk
