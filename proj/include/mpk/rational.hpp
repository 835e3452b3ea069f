#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "mpk/errors.hpp"

namespace mpk {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational number over arbitrary-precision integers.
//
// Invariants: gcd(|num|, den) = 1, den > 0 (sign lives in the numerator),
// and zero is stored as 0/1. Equality is therefore structural.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(int n) : num_(n), den_(1) {}                 // NOLINT(google-explicit-constructor)
    Rational(long long n) : num_(n), den_(1) {}           // NOLINT(google-explicit-constructor)
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}   // NOLINT(google-explicit-constructor)

    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    const BigInt& numerator() const noexcept { return num_; }
    const BigInt& denominator() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_ == 0; }
    bool is_integer() const noexcept { return den_ == 1; }
    bool is_one() const noexcept { return num_ == 1 && den_ == 1; }
    int sign() const noexcept { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }

    Rational operator-() const { return Rational(unchecked, -num_, den_); }

    Rational& operator+=(const Rational& o) {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        num_ = num_ * o.den_ - o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        num_ *= o.num_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.num_ == 0) throw DivisionByZeroError();
        num_ *= o.den_;
        den_ *= o.num_;
        normalize();
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    Rational reciprocal() const {
        if (num_ == 0) throw DivisionByZeroError();
        return Rational(unchecked, num_ > 0 ? den_ : -den_, boost::multiprecision::abs(num_));
    }

    double to_double() const {
        // Divide in floating point only after shrinking both parts into range.
        if (num_ == 0) return 0.0;
        BigInt n = num_, d = den_;
        // Keep magnitudes below ~2^900 so the conversions cannot overflow.
        while (boost::multiprecision::msb(boost::multiprecision::abs(n)) > 900 &&
               boost::multiprecision::msb(d) > 0) {
            n >>= 1;
            d >>= 1;
            if (d == 0) d = 1;
        }
        while (boost::multiprecision::msb(d) > 900 && n != 0) {
            n >>= 1;
            d >>= 1;
            if (n == 0) return 0.0;
        }
        return n.convert_to<double>() / d.convert_to<double>();
    }

    // Exact conversion: every finite double is a dyadic rational.
    static Rational from_double(double x) {
        if (!std::isfinite(x)) throw DomainError("cannot convert non-finite double to a rational");
        if (x == 0.0) return Rational();
        int exp = 0;
        double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [0.5, 1)
        // 53 doublings make the mantissa integral.
        m = std::ldexp(m, 53);
        exp -= 53;
        BigInt n(m);
        if (exp >= 0) return Rational(n << exp);
        return Rational(std::move(n), BigInt(1) << -exp);
    }

    // "p/q" for non-integers, plain integer text otherwise.
    std::string to_string() const {
        std::string s = num_.str();
        if (den_ != 1) {
            s += '/';
            s += den_.str();
        }
        return s;
    }

    // Fixed-point decimal with `digits` places after the point, rounding
    // half-to-even on exact ties.
    std::string to_decimal_string(int digits) const {
        if (digits < 0) throw DomainError("digit count must be nonnegative");
        BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(digits));
        BigInt n = boost::multiprecision::abs(num_) * scale;
        BigInt q = n / den_;
        BigInt r = n % den_;
        BigInt twice = r * 2;
        if (twice > den_ || (twice == den_ && boost::multiprecision::bit_test(q, 0))) ++q;
        std::string body;
        if (digits == 0) {
            body = q.str();
        } else {
            BigInt ip = q / scale;
            BigInt fp = q % scale;
            std::string frac = fp.str();
            body = ip.str();
            body += '.';
            body.append(static_cast<std::size_t>(digits) - frac.size(), '0');
            body += frac;
        }
        if (num_ < 0 && q != 0) body.insert(body.begin(), '-');
        return body;
    }

    // Inverse of to_string: accepts "p", "p/q", optional leading '-'.
    static Rational parse(std::string_view text) {
        auto slash = text.find('/');
        try {
            if (slash == std::string_view::npos) return Rational(BigInt(std::string(text)));
            BigInt n{std::string(text.substr(0, slash))};
            BigInt d{std::string(text.substr(slash + 1))};
            return Rational(std::move(n), std::move(d));
        } catch (const std::runtime_error& e) {
            throw ParseError(std::string("invalid rational literal '") + std::string(text) + "'", 1,
                             "integer or integer/integer");
        }
    }

private:
    struct unchecked_t {};
    static constexpr unchecked_t unchecked{};
    // Used internally when the arguments are already reduced and den > 0.
    Rational(unchecked_t, BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {}

    void normalize() {
        if (den_ == 0) throw DivisionByZeroError("rational with zero denominator");
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = boost::multiprecision::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_;
    BigInt den_;
};

inline BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) throw DomainError("binomial coefficient requires k <= n");
    if (k > n - k) k = n - k;
    BigInt r = 1;
    // r stays integral at every step: after i factors it equals binom(n, i).
    for (unsigned i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

}  // namespace mpk
