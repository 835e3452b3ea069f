#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mpk/errors.hpp"
#include "mpk/expr.hpp"
#include "mpk/rational.hpp"
#include "mpk/upoly.hpp"

namespace mpk {

// Gaussian rationals Q(i), the field where poles like +-2i live exactly.
struct GaussQ {
    Rational re, im;

    GaussQ() = default;
    GaussQ(int n) : re(n) {}  // NOLINT(google-explicit-constructor)
    GaussQ(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
    GaussQ(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    GaussQ conj() const { return {re, -im}; }
    Rational norm() const { return re * re + im * im; }

    GaussQ operator-() const { return {-re, -im}; }
    friend GaussQ operator+(const GaussQ& a, const GaussQ& b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussQ operator-(const GaussQ& a, const GaussQ& b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussQ operator*(const GaussQ& a, const GaussQ& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussQ operator/(const GaussQ& a, const GaussQ& b) {
        const Rational n = b.norm();
        if (n.is_zero()) throw DivisionByZeroError("division by zero Gaussian rational");
        const GaussQ t = a * b.conj();
        return {t.re / n, t.im / n};
    }
    friend bool operator==(const GaussQ& a, const GaussQ& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussQ& a, const GaussQ& b) { return !(a == b); }
};

// Reduced rational function of the transform variable s with exact rational
// coefficients and a monic denominator.
class LaplaceRational {
public:
    LaplaceRational() : num_(), den_(Rational(1)) {}
    LaplaceRational(UPoly num, UPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DivisionByZeroError("rational function with zero denominator");
        normalize();
    }
    static LaplaceRational from_constant(const Rational& c) { return {UPoly(c), UPoly(Rational(1))}; }

    const UPoly& num() const noexcept { return num_; }
    const UPoly& den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_proper() const noexcept { return num_.degree() < den_.degree(); }

    LaplaceRational operator-() const {
        LaplaceRational r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend LaplaceRational operator+(const LaplaceRational& a, const LaplaceRational& b) {
        const UPoly g = gcd(a.den_, b.den_);
        const UPoly da = divmod(a.den_, g).first, db = divmod(b.den_, g).first;
        return {a.num_ * db + b.num_ * da, da * b.den_};
    }
    friend LaplaceRational operator-(const LaplaceRational& a, const LaplaceRational& b) { return a + (-b); }
    friend LaplaceRational operator*(const LaplaceRational& a, const LaplaceRational& b) {
        const UPoly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
        return {divmod(a.num_, g1).first * divmod(b.num_, g2).first,
                divmod(a.den_, g2).first * divmod(b.den_, g1).first};
    }
    friend LaplaceRational operator/(const LaplaceRational& a, const LaplaceRational& b) {
        if (b.is_zero()) throw DivisionByZeroError("rational function division by zero");
        return a * LaplaceRational(b.den_, b.num_);
    }
    LaplaceRational& operator+=(const LaplaceRational& o) { return *this = *this + o; }
    LaplaceRational& operator*=(const LaplaceRational& o) { return *this = *this * o; }

    friend LaplaceRational operator*(const Rational& c, const LaplaceRational& a) {
        return {a.num_ * c, a.den_};
    }

    friend bool operator==(const LaplaceRational& a, const LaplaceRational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const LaplaceRational& a, const LaplaceRational& b) { return !(a == b); }

    // d/ds by the quotient rule, reduced.
    LaplaceRational derivative() const {
        return {num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_};
    }

    std::string render(const std::string& var = "s") const {
        auto fmt = [](const Rational& r) { return r.to_string(); };
        std::string n = num_.render(var, fmt);
        if (den_ == UPoly(Rational(1))) return n;
        std::string d = den_.render(var, fmt);
        if (n.find(' ') != std::string::npos) n = "(" + n + ")";
        if (d.find(' ') != std::string::npos) d = "(" + d + ")";
        return n + "/" + d;
    }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = UPoly(Rational(1));
            return;
        }
        const UPoly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = divmod(num_, g).first;
            den_ = divmod(den_, g).first;
        }
        const Rational lead = den_.leading();
        if (!lead.is_one()) {
            const Rational inv = lead.reciprocal();
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    UPoly num_, den_;
};

namespace detail {

// One additive term of the supported time-domain grammar:
//   coeff * t^tpow * e^(rate*t) * trig(freq*t).
enum class Trig { None, Sin, Cos };

struct Atom {
    Rational coeff;
    unsigned tpow = 0;
    Rational rate;
    Trig trig = Trig::None;
    Rational freq;
};

inline Rational constant_value(const ExprPtr& e) {
    if (const Rational* r = std::get_if<Rational>(&e->value)) return *r;
    // Real literals are admitted by snapping to their exact binary value.
    return Rational::from_double(std::get<double>(e->value));
}

inline Atom atom_mul(const Atom& a, const Atom& b, const ExprPtr& origin) {
    if (a.trig != Trig::None && b.trig != Trig::None)
        throw UnsupportedExpressionError("product of two oscillatory factors is outside the transform table",
                                         render(origin));
    Atom r;
    r.coeff = a.coeff * b.coeff;
    r.tpow = a.tpow + b.tpow;
    r.rate = a.rate + b.rate;
    r.trig = a.trig != Trig::None ? a.trig : b.trig;
    r.freq = a.trig != Trig::None ? a.freq : b.freq;
    return r;
}

std::vector<Atom> normalize_atoms(const ExprPtr& e, const std::string& var);  // forward

// Argument of exp/sin/cos must reduce to (rational constant) * var.
inline Rational linear_coefficient(const ExprPtr& arg, const std::string& var, const ExprPtr& origin) {
    Rational c0, c1;
    for (const Atom& a : normalize_atoms(arg, var)) {
        if (a.trig != Trig::None || !a.rate.is_zero() || a.tpow > 1)
            throw UnsupportedExpressionError("argument must be linear in " + var, render(origin));
        (a.tpow == 0 ? c0 : c1) += a.coeff;
    }
    if (!c0.is_zero())
        throw UnsupportedExpressionError("argument must be a rational multiple of " + var + " with no constant part",
                                         render(origin));
    return c1;
}

inline std::vector<Atom> normalize_atoms(const ExprPtr& e, const std::string& var) {
    switch (e->kind) {
        case ExprKind::Constant: {
            Atom a;
            a.coeff = constant_value(e);
            return a.coeff.is_zero() ? std::vector<Atom>{} : std::vector<Atom>{a};
        }
        case ExprKind::Variable: {
            if (e->var_name != var)
                throw UnsupportedExpressionError("unexpected variable '" + e->var_name + "'", render(e));
            Atom a;
            a.coeff = Rational(1);
            a.tpow = 1;
            return {a};
        }
        case ExprKind::Add: {
            std::vector<Atom> r = normalize_atoms(e->a, var);
            std::vector<Atom> s = normalize_atoms(e->b, var);
            r.insert(r.end(), s.begin(), s.end());
            return r;
        }
        case ExprKind::Neg: {
            std::vector<Atom> r = normalize_atoms(e->a, var);
            for (Atom& a : r) a.coeff = -a.coeff;
            return r;
        }
        case ExprKind::Mul: {
            const std::vector<Atom> lhs = normalize_atoms(e->a, var);
            const std::vector<Atom> rhs = normalize_atoms(e->b, var);
            std::vector<Atom> r;
            for (const Atom& a : lhs)
                for (const Atom& b : rhs) r.push_back(atom_mul(a, b, e));
            return r;
        }
        case ExprKind::Pow: {
            if (e->exponent < 0) {
                const std::vector<Atom> base = normalize_atoms(e->a, var);
                if (base.size() == 1 && base[0].tpow == 0 && base[0].rate.is_zero() &&
                    base[0].trig == Trig::None) {
                    Atom a;
                    a.coeff = Rational(1);
                    for (int i = 0; i < -e->exponent; ++i) a.coeff *= base[0].coeff;
                    a.coeff = a.coeff.reciprocal();
                    return {a};
                }
                throw UnsupportedExpressionError("negative power of a non-constant", render(e));
            }
            std::vector<Atom> acc{Atom{Rational(1), 0, Rational(), Trig::None, Rational()}};
            const std::vector<Atom> base = normalize_atoms(e->a, var);
            for (int i = 0; i < e->exponent; ++i) {
                std::vector<Atom> next;
                for (const Atom& a : acc)
                    for (const Atom& b : base) next.push_back(atom_mul(a, b, e));
                acc = std::move(next);
            }
            return acc;
        }
        case ExprKind::Exp: {
            Atom a;
            a.coeff = Rational(1);
            a.rate = linear_coefficient(e->a, var, e);
            return {a};
        }
        case ExprKind::Sin:
        case ExprKind::Cos: {
            Rational b = linear_coefficient(e->a, var, e);
            Atom a;
            a.coeff = Rational(1);
            if (e->kind == ExprKind::Sin) {
                if (b.is_zero()) return {};
                if (b.sign() < 0) {  // sin(-bt) = -sin(bt)
                    b = -b;
                    a.coeff = Rational(-1);
                }
                a.trig = Trig::Sin;
            } else {
                if (b.is_zero()) return {a};  // cos(0) = 1
                if (b.sign() < 0) b = -b;     // cos(-bt) = cos(bt)
                a.trig = Trig::Cos;
            }
            a.freq = b;
            return {a};
        }
        case ExprKind::Reciprocal: {
            const std::vector<Atom> base = normalize_atoms(e->a, var);
            if (base.size() == 1 && base[0].tpow == 0 && base[0].rate.is_zero() &&
                base[0].trig == Trig::None && !base[0].coeff.is_zero()) {
                Atom a;
                a.coeff = base[0].coeff.reciprocal();
                return {a};
            }
            throw UnsupportedExpressionError("division by a non-constant", render(e));
        }
        case ExprKind::Sqrt:
            throw UnsupportedExpressionError("square roots are outside the transform table", render(e));
    }
    throw Error("unreachable expression kind");
}

// Base transform of e^(at) trig(bt): None -> 1/(s-a), Sin -> b/((s-a)^2+b^2),
// Cos -> (s-a)/((s-a)^2+b^2).
inline LaplaceRational base_transform(const Atom& a) {
    const UPoly s = UPoly::variable();
    const UPoly shifted = s - UPoly(a.rate);
    switch (a.trig) {
        case Trig::None:
            return {UPoly(Rational(1)), shifted};
        case Trig::Sin:
            return {UPoly(a.freq), shifted * shifted + UPoly(a.freq * a.freq)};
        case Trig::Cos:
            return {shifted, shifted * shifted + UPoly(a.freq * a.freq)};
    }
    throw Error("unreachable trig tag");
}

}  // namespace detail

// Exact Laplace transform of an expression in the supported grammar: finite
// linear combinations of t^n e^{at}, t^n sin(bt), t^n cos(bt) and mixed
// t^n e^{at} trig(bt). The multiplication-by-t rule enters as the exact
// derivative: L{t^n f} = (-1)^n F^(n)(s).
inline LaplaceRational laplace_transform(const ExprPtr& f, const std::string& var = "t") {
    LaplaceRational total;
    for (const detail::Atom& a : detail::normalize_atoms(f, var)) {
        if (a.coeff.is_zero()) continue;
        LaplaceRational F = detail::base_transform(a);
        for (unsigned k = 0; k < a.tpow; ++k) F = -F.derivative();
        total += a.coeff * F;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Inverse transform
// ---------------------------------------------------------------------------

struct PoleReport {
    std::complex<double> location;
    unsigned multiplicity = 1;
    bool exact = true;  // found and verified in exact arithmetic
};

struct InverseLaplaceResult {
    ExprPtr expr;
    std::vector<PoleReport> poles;
    bool exact = true;  // every pole exact: coefficients are exact rationals
};

namespace detail {

inline constexpr unsigned kMaxPoleMultiplicity = 4;

// Yun's square-free decomposition: f = prod out[i]^(i+1) with each out[i]
// square-free and pairwise coprime (entries may be constant 1).
inline std::vector<UPoly> squarefree_decomposition(const UPoly& f) {
    std::vector<UPoly> out;
    if (f.degree() <= 0) return out;
    const UPoly fp = f.derivative();
    UPoly c = gcd(f, fp);
    if (c.degree() == 0) {
        out.push_back(f.monic());
        return out;
    }
    UPoly w = divmod(f, c).first;
    UPoly y = divmod(fp, c).first;
    UPoly z = y - w.derivative();
    while (true) {
        const UPoly a = gcd(w, z);
        out.push_back(a.monic());
        w = divmod(w, a).first;
        if (w.degree() == 0) break;
        y = divmod(z, a).first;
        z = y - w.derivative();
    }
    return out;
}

// sqrt in Q when exact: both numerator and denominator perfect squares.
inline std::optional<Rational> exact_sqrt(const Rational& r) {
    if (r.sign() < 0) return std::nullopt;
    if (r.is_zero()) return Rational();
    const BigInt sn = boost::multiprecision::sqrt(r.numerator());
    const BigInt sd = boost::multiprecision::sqrt(r.denominator());
    if (sn * sn != r.numerator() || sd * sd != r.denominator()) return std::nullopt;
    return Rational(sn, sd);
}

// Best rational approximation with denominator at most kMaxDen, by continued
// fractions; used to promote numeric roots that are exactly rational.
inline std::optional<Rational> rationalize(double x) {
    if (!std::isfinite(x)) return std::nullopt;
    constexpr double kMaxDen = 1e6;
    double a = x;
    BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int i = 0; i < 64; ++i) {
        const double fl = std::floor(a);
        if (std::abs(fl) > 1e15) return std::nullopt;
        const BigInt ai = static_cast<long long>(fl);
        const BigInt p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2.convert_to<double>() > kMaxDen) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        const double frac = a - fl;
        if (frac < 1e-12) break;
        a = 1.0 / frac;
    }
    if (q1 == 0) return std::nullopt;
    Rational cand(p1, q1);
    if (std::abs(cand.to_double() - x) > 1e-9 * (1.0 + std::abs(x))) return std::nullopt;
    return cand;
}

inline std::vector<std::complex<double>> durand_kerner(const UPoly& f) {
    const int d = f.degree();
    const UPoly m = f.monic();
    std::vector<std::complex<double>> c(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) c[static_cast<std::size_t>(i)] = m.coeff(static_cast<std::size_t>(i)).to_double();
    auto eval = [&c, d](std::complex<double> x) {
        std::complex<double> acc = 0.0;
        for (int i = d; i >= 0; --i) acc = acc * x + c[static_cast<std::size_t>(i)];
        return acc;
    };
    double radius = 0.0;
    for (int i = 0; i < d; ++i) radius = std::max(radius, std::abs(c[static_cast<std::size_t>(i)]));
    radius = 1.0 + radius;
    std::vector<std::complex<double>> r(static_cast<std::size_t>(d));
    const std::complex<double> seed(0.4, 0.9);
    std::complex<double> pw = 1.0;
    for (auto& root : r) {
        pw *= seed;
        root = radius * pw;
    }
    for (int iter = 0; iter < 500; ++iter) {
        double worst = 0.0;
        for (std::size_t k = 0; k < r.size(); ++k) {
            std::complex<double> denom = 1.0;
            for (std::size_t j = 0; j < r.size(); ++j)
                if (j != k) denom *= r[k] - r[j];
            if (denom == std::complex<double>(0.0)) denom = 1e-30;
            const std::complex<double> delta = eval(r[k]) / denom;
            r[k] -= delta;
            worst = std::max(worst, std::abs(delta) / (1.0 + std::abs(r[k])));
        }
        if (worst < 1e-14) break;
    }
    return r;
}

struct RootRec {
    enum class Kind { Rat, Gauss, NumericReal, NumericPair } kind;
    Rational r;              // Kind::Rat
    GaussQ g;                // Kind::Gauss, im > 0
    std::complex<double> z;  // numeric kinds (NumericPair has im > 0)
    unsigned mult = 1;
};

// Roots of one square-free factor: exact where the arithmetic allows
// (rational roots, quadratic factors, Gaussian-rational promotions of numeric
// roots), numeric doubles otherwise.
inline void roots_of_squarefree(UPoly w, unsigned mult, std::vector<RootRec>& out) {
    while (w.degree() >= 3) {
        const std::vector<std::complex<double>> approx = durand_kerner(w);
        bool deflated = false;
        for (const std::complex<double>& z : approx) {
            if (std::abs(z.imag()) <= 1e-8 * (1.0 + std::abs(z))) {
                if (auto cand = rationalize(z.real()); cand && w.eval(*cand).is_zero()) {
                    out.push_back({RootRec::Kind::Rat, *cand, {}, {}, mult});
                    w = divmod(w, UPoly::from_coefficients({-*cand, Rational(1)})).first;
                    deflated = true;
                    break;
                }
            } else if (z.imag() > 0.0) {
                const auto re = rationalize(z.real());
                const auto im = rationalize(z.imag());
                if (re && im && !im->is_zero()) {
                    const GaussQ g(*re, *im);
                    if (UPolyT<GaussQ>::from_coefficients([&] {
                            std::vector<GaussQ> cs;
                            for (const Rational& q : w.coefficients()) cs.push_back(GaussQ(q));
                            return cs;
                        }()).eval(g).is_zero()) {
                        out.push_back({RootRec::Kind::Gauss, {}, g, {}, mult});
                        // divide out (s - g)(s - conj g) = s^2 - 2 re s + |g|^2
                        const UPoly quad = UPoly::from_coefficients({g.norm(), Rational(-2) * g.re, Rational(1)});
                        w = divmod(w, quad).first;
                        deflated = true;
                        break;
                    }
                }
            }
        }
        if (!deflated) {
            // keep the numeric roots as they are
            for (const std::complex<double>& z : approx) {
                if (std::abs(z.imag()) <= 1e-8 * (1.0 + std::abs(z)))
                    out.push_back({RootRec::Kind::NumericReal, {}, {}, {z.real(), 0.0}, mult});
                else if (z.imag() > 0.0)
                    out.push_back({RootRec::Kind::NumericPair, {}, {}, z, mult});
            }
            return;
        }
    }
    if (w.degree() == 1) {
        out.push_back({RootRec::Kind::Rat, -w.coeff(0) / w.coeff(1), {}, {}, mult});
        return;
    }
    if (w.degree() == 2) {
        const Rational a = w.coeff(2), b = w.coeff(1), c = w.coeff(0);
        const Rational disc = b * b - Rational(4) * a * c;
        const Rational two_a = Rational(2) * a;
        if (disc.sign() >= 0) {
            if (const auto root = exact_sqrt(disc)) {
                out.push_back({RootRec::Kind::Rat, (-b + *root) / two_a, {}, {}, mult});
                out.push_back({RootRec::Kind::Rat, (-b - *root) / two_a, {}, {}, mult});
            } else {
                const double sq = std::sqrt(disc.to_double());
                out.push_back({RootRec::Kind::NumericReal, {}, {}, {((-b).to_double() + sq) / two_a.to_double(), 0.0}, mult});
                out.push_back({RootRec::Kind::NumericReal, {}, {}, {((-b).to_double() - sq) / two_a.to_double(), 0.0}, mult});
            }
        } else {
            if (const auto root = exact_sqrt(-disc)) {
                Rational im = *root / two_a;
                if (im.sign() < 0) im = -im;
                out.push_back({RootRec::Kind::Gauss, {}, GaussQ(-b / two_a, im), {}, mult});
            } else {
                const double im = std::abs(std::sqrt((-disc).to_double()) / two_a.to_double());
                out.push_back({RootRec::Kind::NumericPair, {}, {}, {(-b / two_a).to_double(), im}, mult});
            }
        }
    }
}

template <class F, class Conv>
UPolyT<F> convert_upoly(const UPoly& p, Conv conv) {
    std::vector<F> cs;
    cs.reserve(p.coefficients().size());
    for (const Rational& q : p.coefficients()) cs.push_back(conv(q));
    return UPolyT<F>::from_coefficients(std::move(cs));
}

// Partial-fraction coefficients at pole alpha of multiplicity m: with
// den = (s-alpha)^m Q(s), expand N(alpha+u)/Q(alpha+u) = sum g_k u^k by
// Taylor shift plus truncated series inversion; then A_j = g_{m-j} in
// F(s) = sum_j A_j/(s-alpha)^j.
template <class F, class Conv>
std::vector<F> local_expansion(const UPoly& num, const UPoly& den, const F& alpha, unsigned m, Conv conv) {
    const UPolyT<F> lin = UPolyT<F>::from_coefficients({-alpha, F(1)});
    const UPolyT<F> denF = convert_upoly<F>(den, conv);
    const UPolyT<F> cof = divmod(denF, lin.pow(m)).first;
    const UPolyT<F> N = convert_upoly<F>(num, conv).taylor_shift(alpha);
    const UPolyT<F> Q = cof.taylor_shift(alpha);
    const F q0 = Q.coeff(0);
    std::vector<F> b(m, F(0));
    b[0] = F(1) / q0;
    for (unsigned k = 1; k < m; ++k) {
        F acc(0);
        for (unsigned i = 1; i <= k; ++i) acc = acc + Q.coeff(i) * b[k - i];
        b[k] = -acc / q0;
    }
    std::vector<F> g(m, F(0));
    for (unsigned k = 0; k < m; ++k) {
        F acc(0);
        for (unsigned i = 0; i <= k; ++i) acc = acc + N.coeff(i) * b[k - i];
        g[k] = acc;
    }
    return g;
}

// coeff * t^p * exp(rate*t) * trig(freq*t) as an expression tree; unit
// factors are dropped. Exact terms carry rational constants, numeric ones
// real literals.
struct TermParts {
    ExprPtr coeff;  // may be null for coefficient 1
    unsigned tpow = 0;
    ExprPtr rate;   // exp(rate * t), null when rate = 0
    ExprPtr freq;   // trig(freq * t), null when no trig
    bool is_sin = false;
};

inline bool is_unit_constant(const ExprPtr& e) {
    if (e->kind != ExprKind::Constant) return false;
    if (const Rational* r = std::get_if<Rational>(&e->value)) return r->is_one();
    if (const double* d = std::get_if<double>(&e->value)) return *d == 1.0;
    return false;
}

inline ExprPtr assemble_term(const TermParts& parts, const std::string& var) {
    const ExprPtr t = expr_variable(var);
    std::vector<ExprPtr> factors;
    if (parts.coeff) factors.push_back(parts.coeff);
    if (parts.tpow == 1)
        factors.push_back(t);
    else if (parts.tpow > 1)
        factors.push_back(expr_pow(t, static_cast<int>(parts.tpow)));
    if (parts.rate) factors.push_back(expr_exp(is_unit_constant(parts.rate) ? t : expr_mul(parts.rate, t)));
    if (parts.freq) {
        const ExprPtr arg = is_unit_constant(parts.freq) ? t : expr_mul(parts.freq, t);
        factors.push_back(parts.is_sin ? expr_sin(arg) : expr_cos(arg));
    }
    if (factors.empty()) return expr_constant(Rational(1));
    ExprPtr acc = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) acc = expr_mul(std::move(acc), factors[i]);
    return acc;
}

}  // namespace detail

// Inverse Laplace transform of a proper rational function of s into the time
// domain. Pole locations are found exactly whenever they are rational or
// Gaussian rational; otherwise numeric root-finding supplies double-precision
// poles and the result is marked inexact.
inline InverseLaplaceResult inverse_laplace_transform(const LaplaceRational& F, const std::string& var = "t") {
    InverseLaplaceResult res;
    if (F.is_zero()) {
        res.expr = expr_constant(Rational());
        return res;
    }
    if (!F.is_proper())
        throw UnsupportedExpressionError("inverse transform requires a proper rational function", F.render());

    const std::vector<UPoly> sf = detail::squarefree_decomposition(F.den());
    std::vector<detail::RootRec> roots;
    for (std::size_t i = 0; i < sf.size(); ++i) {
        const unsigned mult = static_cast<unsigned>(i) + 1;
        if (sf[i].degree() <= 0) continue;
        if (mult > detail::kMaxPoleMultiplicity)
            throw UnsupportedExpressionError("pole multiplicity exceeds 4", F.render());
        detail::roots_of_squarefree(sf[i], mult, roots);
    }

    // Deterministic order: exact rational poles ascending, then Gaussian
    // pairs, then numeric, each by (re, im).
    std::sort(roots.begin(), roots.end(), [](const detail::RootRec& a, const detail::RootRec& b) {
        const int ka = static_cast<int>(a.kind), kb = static_cast<int>(b.kind);
        if (ka != kb) return ka < kb;
        switch (a.kind) {
            case detail::RootRec::Kind::Rat:
                return a.r < b.r;
            case detail::RootRec::Kind::Gauss:
                return a.g.re != b.g.re ? a.g.re < b.g.re : a.g.im < b.g.im;
            default:
                return a.z.real() != b.z.real() ? a.z.real() < b.z.real() : a.z.imag() < b.z.imag();
        }
    });

    std::vector<ExprPtr> terms;
    for (const detail::RootRec& root : roots) {
        const unsigned m = root.mult;
        switch (root.kind) {
            case detail::RootRec::Kind::Rat: {
                const auto g = detail::local_expansion<Rational>(
                    F.num(), F.den(), root.r, m, [](const Rational& q) { return q; });
                res.poles.push_back({{root.r.to_double(), 0.0}, m, true});
                for (unsigned j = 1; j <= m; ++j) {
                    Rational c = g[m - j];
                    if (c.is_zero()) continue;
                    c /= Rational(factorial(j - 1));
                    detail::TermParts parts;
                    parts.tpow = j - 1;
                    const ExprPtr coeff = expr_constant(c);
                    if (!detail::is_unit_constant(coeff) || (parts.tpow == 0 && root.r.is_zero()))
                        parts.coeff = coeff;
                    if (!root.r.is_zero()) parts.rate = expr_constant(root.r);
                    terms.push_back(detail::assemble_term(parts, var));
                }
                break;
            }
            case detail::RootRec::Kind::Gauss: {
                const auto g = detail::local_expansion<GaussQ>(
                    F.num(), F.den(), root.g, m, [](const Rational& q) { return GaussQ(q); });
                res.poles.push_back({{root.g.re.to_double(), root.g.im.to_double()}, m, true});
                res.poles.push_back({{root.g.re.to_double(), (-root.g.im).to_double()}, m, true});
                for (unsigned j = 1; j <= m; ++j) {
                    const GaussQ A = g[m - j];
                    if (A.is_zero()) continue;
                    const Rational fact(factorial(j - 1));
                    const Rational ccos = Rational(2) * A.re / fact;   // A e^{alpha t} + conj: 2 Re
                    const Rational csin = Rational(-2) * A.im / fact;  // ... - 2 Im sin
                    for (int which = 0; which < 2; ++which) {
                        const Rational& c = which == 0 ? ccos : csin;
                        if (c.is_zero()) continue;
                        detail::TermParts parts;
                        parts.tpow = j - 1;
                        const ExprPtr coeff = expr_constant(c);
                        if (!detail::is_unit_constant(coeff)) parts.coeff = coeff;
                        if (!root.g.re.is_zero()) parts.rate = expr_constant(root.g.re);
                        parts.freq = expr_constant(root.g.im);
                        parts.is_sin = which == 1;
                        terms.push_back(detail::assemble_term(parts, var));
                    }
                }
                break;
            }
            case detail::RootRec::Kind::NumericReal: {
                res.exact = false;
                const std::complex<double> alpha(root.z.real(), 0.0);
                const auto g = detail::local_expansion<std::complex<double>>(
                    F.num(), F.den(), alpha, m, [](const Rational& q) { return std::complex<double>(q.to_double()); });
                res.poles.push_back({alpha, m, false});
                for (unsigned j = 1; j <= m; ++j) {
                    double c = g[m - j].real();
                    if (c == 0.0) continue;
                    c /= Rational(factorial(j - 1)).to_double();
                    detail::TermParts parts;
                    parts.tpow = j - 1;
                    if (c != 1.0 || (parts.tpow == 0 && root.z.real() == 0.0)) parts.coeff = expr_real(c);
                    if (root.z.real() != 0.0) parts.rate = expr_real(root.z.real());
                    terms.push_back(detail::assemble_term(parts, var));
                }
                break;
            }
            case detail::RootRec::Kind::NumericPair: {
                res.exact = false;
                const auto g = detail::local_expansion<std::complex<double>>(
                    F.num(), F.den(), root.z, m, [](const Rational& q) { return std::complex<double>(q.to_double()); });
                res.poles.push_back({root.z, m, false});
                res.poles.push_back({std::conj(root.z), m, false});
                for (unsigned j = 1; j <= m; ++j) {
                    const std::complex<double> A = g[m - j];
                    const double fact = Rational(factorial(j - 1)).to_double();
                    const double ccos = 2.0 * A.real() / fact;
                    const double csin = -2.0 * A.imag() / fact;
                    for (int which = 0; which < 2; ++which) {
                        const double c = which == 0 ? ccos : csin;
                        if (c == 0.0) continue;
                        detail::TermParts parts;
                        parts.tpow = j - 1;
                        if (c != 1.0) parts.coeff = expr_real(c);
                        if (root.z.real() != 0.0) parts.rate = expr_real(root.z.real());
                        parts.freq = expr_real(root.z.imag());
                        parts.is_sin = which == 1;
                        terms.push_back(detail::assemble_term(parts, var));
                    }
                }
                break;
            }
        }
    }

    if (terms.empty()) {
        res.expr = expr_constant(Rational());
        return res;
    }
    ExprPtr acc = terms[0];
    for (std::size_t i = 1; i < terms.size(); ++i) acc = expr_add(std::move(acc), terms[i]);
    res.expr = std::move(acc);
    return res;
}

// Lower a parsed expression in the transform variable to a LaplaceRational,
// for CLI input like "1/(s - 3)". Only field operations are allowed.
inline LaplaceRational expr_to_laplace_rational(const ExprPtr& e, const std::string& var = "s") {
    switch (e->kind) {
        case ExprKind::Constant:
            if (const Rational* r = std::get_if<Rational>(&e->value))
                return LaplaceRational::from_constant(*r);
            return LaplaceRational::from_constant(Rational::from_double(std::get<double>(e->value)));
        case ExprKind::Variable:
            if (e->var_name != var)
                throw UnsupportedExpressionError("unexpected variable '" + e->var_name + "'", render(e));
            return {UPoly::variable(), UPoly(Rational(1))};
        case ExprKind::Add:
            return expr_to_laplace_rational(e->a, var) + expr_to_laplace_rational(e->b, var);
        case ExprKind::Mul:
            return expr_to_laplace_rational(e->a, var) * expr_to_laplace_rational(e->b, var);
        case ExprKind::Neg:
            return -expr_to_laplace_rational(e->a, var);
        case ExprKind::Reciprocal: {
            const LaplaceRational f = expr_to_laplace_rational(e->a, var);
            if (f.is_zero()) throw DivisionByZeroError("division by zero in rational function input");
            return LaplaceRational::from_constant(Rational(1)) / f;
        }
        case ExprKind::Pow: {
            LaplaceRational base = expr_to_laplace_rational(e->a, var);
            const bool inv = e->exponent < 0;
            const unsigned k = static_cast<unsigned>(inv ? -e->exponent : e->exponent);
            LaplaceRational acc = LaplaceRational::from_constant(Rational(1));
            for (unsigned i = 0; i < k; ++i) acc *= base;
            if (!inv) return acc;
            if (acc.is_zero()) throw DivisionByZeroError("zero raised to a negative power");
            return LaplaceRational::from_constant(Rational(1)) / acc;
        }
        default:
            throw UnsupportedExpressionError("not a rational function of " + var, render(e));
    }
}

}  // namespace mpk
