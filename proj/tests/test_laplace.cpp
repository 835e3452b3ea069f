#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "mpk/errors.hpp"
#include "mpk/expr.hpp"
#include "mpk/laplace.hpp"
#include "mpk/rational.hpp"
#include "mpk/upoly.hpp"

using mpk::ExprPtr;
using mpk::GaussQ;
using mpk::LaplaceRational;
using mpk::Rational;
using mpk::UPoly;

namespace {

ExprPtr Pt(const std::string& text) { return mpk::parse(text, {"t"}); }
ExprPtr Ps(const std::string& text) { return mpk::parse(text, {"s"}); }

UPoly up(const std::vector<int>& ascending) {
    std::vector<Rational> cs;
    cs.reserve(ascending.size());
    for (int c : ascending) cs.emplace_back(c);
    return UPoly::from_coefficients(std::move(cs));
}

LaplaceRational LR(const std::vector<int>& num, const std::vector<int>& den) {
    return {up(num), up(den)};
}

double eval_at(const LaplaceRational& F, double s) {
    const Rational at = Rational::from_double(s);
    return F.num().eval(at).to_double() / F.den().eval(at).to_double();
}

}  // namespace

TEST_CASE("Gaussian rational arithmetic") {
    const GaussQ a(Rational(1), Rational(2));   // 1 + 2i
    const GaussQ b(Rational(3), Rational(-1));  // 3 - i
    CHECK(a * b == GaussQ(Rational(5), Rational(5)));
    CHECK(a + b == GaussQ(Rational(4), Rational(1)));
    CHECK(a - b == GaussQ(Rational(-2), Rational(3)));
    CHECK(a.conj() == GaussQ(Rational(1), Rational(-2)));
    CHECK(a.norm() == Rational(5));

    const GaussQ i(Rational(0), Rational(1));
    CHECK((GaussQ(1) + i) / (GaussQ(1) - i) == i);
    CHECK(GaussQ(1) / (Rational(2) * i) == GaussQ(Rational(0), Rational(-1, 2)));
    CHECK(i * i == GaussQ(-1));
    CHECK((a - a).is_zero());
}

TEST_CASE("rational functions of s normalize and reduce") {
    // Denominators are made monic.
    CHECK(LaplaceRational(up({-6, 2}), up({-6, 2})) == LaplaceRational::from_constant(Rational(1)));
    CHECK(LaplaceRational(UPoly(Rational(2)), up({-6, 2})) == LR({1}, {-3, 1}));
    // Common factors cancel: (s^2 - 1)/(s - 1) = s + 1.
    CHECK(LR({-1, 0, 1}, {-1, 1}) == LR({1, 1}, {1}));
    CHECK_FALSE(LR({-1, 0, 1}, {-1, 1}).is_proper());
    CHECK(LR({1}, {0, 0, 1}).is_proper());
    CHECK(LaplaceRational().is_zero());

    CHECK_THROWS_AS(LaplaceRational(up({1}), UPoly()), mpk::DivisionByZeroError);

    // Field operations.
    CHECK(LR({1}, {-1, 1}) + LR({1}, {1, 1}) == LR({0, 2}, {-1, 0, 1}));
    CHECK(LR({1}, {0, 1}) * LR({0, 1}, {1, 1}) == LR({1}, {1, 1}));
    CHECK(LR({1}, {0, 1}) / LR({1}, {2, 1}) == LR({2, 1}, {0, 1}));
    CHECK(-LR({1}, {0, 1}) == LR({-1}, {0, 1}));
    CHECK(Rational(3) * LR({1}, {0, 1}) == LR({3}, {0, 1}));
    CHECK_THROWS_AS(LR({1}, {0, 1}) / LaplaceRational(), mpk::DivisionByZeroError);

    // d/ds (1/s) = -1/s^2.
    CHECK(LR({1}, {0, 1}).derivative() == LR({-1}, {0, 0, 1}));

    // Rendering.
    CHECK(LR({1}, {-3, 1}).render() == "1/(s - 3)");
    CHECK(LR({6}, {0, 0, 0, 0, 1}).render() == "6/s^4");
    CHECK(LR({1, 1}, {0, 0, 1}).render() == "(s + 1)/s^2");
    CHECK(LaplaceRational::from_constant(Rational(5)).render() == "5");
    CHECK(LaplaceRational().render() == "0");
    CHECK(LR({0, 1}, {4, 0, 1}).render("z") == "z/(z^2 + 4)");
}

TEST_CASE("forward transform table") {
    CHECK(mpk::laplace_transform(Pt("exp(3*t)")) == LR({1}, {-3, 1}));
    CHECK(mpk::laplace_transform(Pt("exp(3*t)")).render() == "1/(s - 3)");
    CHECK(mpk::laplace_transform(Pt("sin(2*t)")) == LR({2}, {4, 0, 1}));
    CHECK(mpk::laplace_transform(Pt("cos(t)")) == LR({0, 1}, {1, 0, 1}));
    CHECK(mpk::laplace_transform(Pt("1")) == LR({1}, {0, 1}));
    CHECK(mpk::laplace_transform(Pt("5")) == LR({5}, {0, 1}));
    CHECK(mpk::laplace_transform(Pt("0")).is_zero());
    CHECK(mpk::laplace_transform(Pt("t")) == LR({1}, {0, 0, 1}));
    CHECK(mpk::laplace_transform(Pt("t^3")) == LR({6}, {0, 0, 0, 0, 1}));
    CHECK(mpk::laplace_transform(Pt("t*exp(t)")) == LR({1}, {1, -2, 1}));
    CHECK(mpk::laplace_transform(Pt("t^2*sin(t)")) ==
          LaplaceRational(up({-2, 0, 6}), up({1, 0, 1}) * up({1, 0, 1}) * up({1, 0, 1})));

    // Rates and frequencies may be any rational multiple of t.
    CHECK(mpk::laplace_transform(Pt("exp(-t/2)")) ==
          LaplaceRational(up({1}), UPoly::from_coefficients({Rational(1, 2), Rational(1)})));
    CHECK(mpk::laplace_transform(Pt("sin(-2*t)")) == LR({-2}, {4, 0, 1}));
    CHECK(mpk::laplace_transform(Pt("cos(0*t)")) == LR({1}, {0, 1}));
    CHECK(mpk::laplace_transform(Pt("sin(0*t)")).is_zero());
    CHECK(mpk::laplace_transform(Pt("sin(t*2)")) == LR({2}, {4, 0, 1}));
    CHECK(mpk::laplace_transform(Pt("sin(2*t + t)")) == LR({3}, {9, 0, 1}));

    // A different time-variable name works.
    CHECK(mpk::laplace_transform(mpk::parse("exp(2*u)", {"u"}), "u") == LR({1}, {-2, 1}));
}

TEST_CASE("forward transform is linear and handles damped oscillations") {
    const LaplaceRational got = mpk::laplace_transform(Pt("2*exp(t) - 3*sin(2*t) + t^2"));
    const LaplaceRational want = Rational(2) * LR({1}, {-1, 1}) +
                                 Rational(-3) * LR({2}, {4, 0, 1}) + LR({2}, {0, 0, 0, 1});
    CHECK(got == want);

    // t * exp(2t) cos(3t): multiplication by t is the exact -d/ds rule applied
    // to the damped-cosine table entry (s-2)/((s-2)^2 + 9).
    const UPoly shifted = up({-2, 1});
    const LaplaceRational base(shifted, shifted * shifted + UPoly(Rational(9)));
    CHECK(mpk::laplace_transform(Pt("t*exp(2*t)*cos(3*t)")) == -base.derivative());

    // Distributing a product over a sum.
    CHECK(mpk::laplace_transform(Pt("t*(exp(t) + 1)")) ==
          mpk::laplace_transform(Pt("t*exp(t)")) + mpk::laplace_transform(Pt("t")));
}

TEST_CASE("forward transform rejects inputs outside the grammar") {
    CHECK_THROWS_AS(mpk::laplace_transform(Pt("sin(t)*cos(t)")), mpk::UnsupportedExpressionError);
    CHECK_THROWS_AS(mpk::laplace_transform(Pt("sin(t)^2")), mpk::UnsupportedExpressionError);
    CHECK_THROWS_AS(mpk::laplace_transform(Pt("exp(t^2)")), mpk::UnsupportedExpressionError);
    CHECK_THROWS_AS(mpk::laplace_transform(Pt("exp(t + 1)")), mpk::UnsupportedExpressionError);
    CHECK_THROWS_AS(mpk::laplace_transform(Pt("exp(sin(t))")), mpk::UnsupportedExpressionError);
    CHECK_THROWS_AS(mpk::laplace_transform(Pt("sqrt(t)")), mpk::UnsupportedExpressionError);
    CHECK_THROWS_AS(mpk::laplace_transform(Pt("1/t")), mpk::UnsupportedExpressionError);
    CHECK_THROWS_AS(mpk::laplace_transform(Pt("t^-1")), mpk::UnsupportedExpressionError);
    CHECK_THROWS_AS(mpk::laplace_transform(mpk::parse("x", {"x"})), mpk::UnsupportedExpressionError);

    // The offending subterm is named.
    try {
        mpk::laplace_transform(Pt("t + sqrt(t)"));
        FAIL("expected UnsupportedExpressionError");
    } catch (const mpk::UnsupportedExpressionError& e) {
        CHECK(e.subterm() == "sqrt(t)");
    }
}

TEST_CASE("square-free decomposition by multiplicity") {
    // (s+1)^2 (s+2): multiplicity-1 part s+2, multiplicity-2 part s+1.
    const UPoly f = up({1, 1}) * up({1, 1}) * up({2, 1});
    const auto sf = mpk::detail::squarefree_decomposition(f);
    REQUIRE(sf.size() == 2);
    CHECK(sf[0] == up({2, 1}));
    CHECK(sf[1] == up({1, 1}));

    // s^3: only a multiplicity-3 part.
    const auto sf3 = mpk::detail::squarefree_decomposition(up({0, 0, 0, 1}));
    REQUIRE(sf3.size() == 3);
    CHECK(sf3[0].degree() == 0);
    CHECK(sf3[1].degree() == 0);
    CHECK(sf3[2] == up({0, 1}));

    // A square-free cubic stays in the first slot.
    const UPoly g = up({-1, 1}) * up({-2, 1}) * up({-3, 1});
    const auto sfg = mpk::detail::squarefree_decomposition(g);
    REQUIRE(sfg.size() == 1);
    CHECK(sfg[0] == g.monic());
}

TEST_CASE("exact square roots and rationalization helpers") {
    CHECK(mpk::detail::exact_sqrt(Rational(4)) == Rational(2));
    CHECK(mpk::detail::exact_sqrt(Rational(9, 4)) == Rational(3, 2));
    CHECK(mpk::detail::exact_sqrt(Rational(0)) == Rational(0));
    CHECK_FALSE(mpk::detail::exact_sqrt(Rational(8)).has_value());
    CHECK_FALSE(mpk::detail::exact_sqrt(Rational(1, 3)).has_value());

    CHECK(mpk::detail::rationalize(0.5) == Rational(1, 2));
    CHECK(mpk::detail::rationalize(2.0 / 3.0) == Rational(2, 3));
    CHECK(mpk::detail::rationalize(-1.25) == Rational(-5, 4));
}

TEST_CASE("inverse transform goldens with exact poles") {
    auto inv_render = [](const LaplaceRational& F) {
        return mpk::render(mpk::inverse_laplace_transform(F).expr);
    };
    CHECK(inv_render(LR({1}, {-3, 1})) == "exp(3 * t)");
    CHECK(inv_render(LR({1}, {0, 0, 1})) == "t");
    CHECK(inv_render(LR({1}, {1, 0, 1})) == "sin(t)");
    CHECK(inv_render(LR({0, 1}, {1, 0, 1})) == "cos(t)");
    CHECK(inv_render(LR({1}, {-1, 3, -3, 1})) == "(1/2) * t^2 * exp(t)");
    CHECK(inv_render(LR({1}, {0, 0, 0, 0, 1})) == "(1/6) * t^3");
    CHECK(inv_render(LaplaceRational()) == "0");
    // (s+2)/(s+1)^2 has a repeated pole contributing two terms.
    CHECK(inv_render(LR({2, 1}, {1, 2, 1})) == "exp(-1 * t) + t * exp(-1 * t)");
    // Two conjugate pairs, both promoted to exact Gaussian rationals.
    CHECK(inv_render(LaplaceRational(up({1}), up({1, 0, 1}) * up({4, 0, 1}))) ==
          "(1/3) * sin(t) + (-1/6) * sin(2 * t)");
    // Rational pole plus a conjugate pair, all exact.
    CHECK(inv_render(LaplaceRational(up({1}), up({-1, 1}) * up({4, 0, 1}))) ==
          "(1/5) * exp(t) + (-1/5) * cos(2 * t) + (-1/10) * sin(2 * t)");
}

TEST_CASE("inverse transform pole reports are exact and ordered") {
    // 1/((s+1)(s-2)(s^2+1)): rational poles ascending, then the conjugate pair.
    const LaplaceRational F(up({1}), up({1, 1}) * up({-2, 1}) * up({1, 0, 1}));
    const auto res = mpk::inverse_laplace_transform(F);
    CHECK(res.exact);
    REQUIRE(res.poles.size() == 4);
    CHECK(res.poles[0].location == std::complex<double>(-1.0, 0.0));
    CHECK(res.poles[1].location == std::complex<double>(2.0, 0.0));
    CHECK(res.poles[2].location == std::complex<double>(0.0, 1.0));
    CHECK(res.poles[3].location == std::complex<double>(0.0, -1.0));
    for (const auto& p : res.poles) {
        CHECK(p.multiplicity == 1);
        CHECK(p.exact);
    }

    // Repeated pole multiplicity is reported.
    const auto rep = mpk::inverse_laplace_transform(LR({2, 1}, {1, 2, 1}));
    REQUIRE(rep.poles.size() == 1);
    CHECK(rep.poles[0].multiplicity == 2);
    CHECK(rep.poles[0].location.real() == Catch::Approx(-1.0));
}

TEST_CASE("inverse transform recovers exact rational roots of higher-degree denominators") {
    // 1/((s-1)(s-2)(s-3)) -> (1/2)e^t - e^{2t} + (1/2)e^{3t}.
    const LaplaceRational F(up({1}), up({-1, 1}) * up({-2, 1}) * up({-3, 1}));
    const auto res = mpk::inverse_laplace_transform(F);
    CHECK(res.exact);
    REQUIRE(res.poles.size() == 3);
    CHECK(res.poles[0].location.real() == Catch::Approx(1.0));
    CHECK(res.poles[1].location.real() == Catch::Approx(2.0));
    CHECK(res.poles[2].location.real() == Catch::Approx(3.0));
    const double t = 0.3;
    const double want = 0.5 * std::exp(t) - std::exp(2 * t) + 0.5 * std::exp(3 * t);
    CHECK(mpk::eval_real(res.expr, "t", t) == Catch::Approx(want).epsilon(1e-12));

    // Quintic with rational poles 1..5.
    UPoly den(Rational(1));
    for (int k = 1; k <= 5; ++k) den = den * up({-k, 1});
    const auto res5 = mpk::inverse_laplace_transform(LaplaceRational(up({1}), den));
    CHECK(res5.exact);
    CHECK(res5.poles.size() == 5);
    const double t5 = 0.2;
    const double want5 = std::exp(t5) / 24 - std::exp(2 * t5) / 6 + std::exp(3 * t5) / 4 -
                         std::exp(4 * t5) / 6 + std::exp(5 * t5) / 24;
    CHECK(mpk::eval_real(res5.expr, "t", t5) == Catch::Approx(want5).epsilon(1e-12));

    // Cubic mixing a rational root with a Gaussian pair, found exactly.
    const auto resg =
        mpk::inverse_laplace_transform(LaplaceRational(up({1}), up({-1, 1}) * up({4, 0, 1})));
    CHECK(resg.exact);
    const double tg = 0.4;
    const double wantg = std::exp(tg) / 5 - std::cos(2 * tg) / 5 - std::sin(2 * tg) / 10;
    CHECK(mpk::eval_real(resg.expr, "t", tg) == Catch::Approx(wantg).epsilon(1e-12));
}

TEST_CASE("inverse transform falls back to numeric poles honestly") {
    // s^2 - 2 has irrational roots; the result is flagged inexact.
    const auto res = mpk::inverse_laplace_transform(LR({1}, {-2, 0, 1}));
    CHECK_FALSE(res.exact);
    REQUIRE(res.poles.size() == 2);
    CHECK(res.poles[0].location.real() == Catch::Approx(-std::sqrt(2.0)).epsilon(1e-12));
    CHECK(res.poles[1].location.real() == Catch::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK_FALSE(res.poles[0].exact);
    CHECK_FALSE(res.poles[1].exact);

    // Value agrees with sinh(sqrt(2) t)/sqrt(2).
    const double t = 0.7;
    const double want = std::sinh(std::sqrt(2.0) * t) / std::sqrt(2.0);
    CHECK(mpk::eval_real(res.expr, "t", t) == Catch::Approx(want).epsilon(1e-9));

    // Re-transforming the numeric result reproduces the original function
    // to within numeric accuracy.
    const LaplaceRational back = mpk::laplace_transform(res.expr);
    CHECK(eval_at(back, 3.0) == Catch::Approx(eval_at(LR({1}, {-2, 0, 1}), 3.0)).epsilon(1e-9));

    // An irrational conjugate pair: s^2 + 2s + 5/2 has roots -1 +- i sqrt(3/2).
    const LaplaceRational G(up({1}), UPoly::from_coefficients({Rational(5, 2), Rational(2), Rational(1)}));
    const auto resg = mpk::inverse_laplace_transform(G);
    CHECK_FALSE(resg.exact);
    const double om = std::sqrt(1.5);
    const double tg = 0.9;
    const double wantg = std::exp(-tg) * std::sin(om * tg) / om;
    CHECK(mpk::eval_real(resg.expr, "t", tg) == Catch::Approx(wantg).epsilon(1e-9));
}

TEST_CASE("inverse transform input validation") {
    CHECK_THROWS_AS(mpk::inverse_laplace_transform(LR({-1, 0, 1}, {-1, 1})),
                    mpk::UnsupportedExpressionError);
    CHECK_THROWS_AS(mpk::inverse_laplace_transform(LaplaceRational::from_constant(Rational(1))),
                    mpk::UnsupportedExpressionError);
    // Pole multiplicity is capped at 4.
    CHECK_THROWS_AS(mpk::inverse_laplace_transform(LR({1}, {0, 0, 0, 0, 0, 1})),
                    mpk::UnsupportedExpressionError);
    CHECK_NOTHROW(mpk::inverse_laplace_transform(LR({1}, {0, 0, 0, 0, 1})));
}

TEST_CASE("forward and inverse transforms are mutually inverse on exact inputs") {
    const std::vector<std::string> fixtures = {
        "exp(3*t)", "t", "5", "sin(3*t)", "cos(2*t)", "t^2*exp(-t)", "t*cos(2*t)",
        "exp(t/3)", "2*exp(t) - 3*sin(2*t) + t^2", "t^3*exp(2*t)", "exp(-t)*sin(t)",
    };
    for (const std::string& s : fixtures) {
        const LaplaceRational F = mpk::laplace_transform(Pt(s));
        const auto inv = mpk::inverse_laplace_transform(F);
        INFO("f(t) = " << s << ", F(s) = " << F.render() << ", recovered = " << mpk::render(inv.expr));
        CHECK(inv.exact);
        CHECK(mpk::laplace_transform(inv.expr) == F);
    }
}

TEST_CASE("expressions in s lower to rational functions") {
    CHECK(mpk::expr_to_laplace_rational(Ps("1/(s - 3)")) == LR({1}, {-3, 1}));
    CHECK(mpk::expr_to_laplace_rational(Ps("s/(s^2 + 1)")) == LR({0, 1}, {1, 0, 1}));
    CHECK(mpk::expr_to_laplace_rational(Ps("s^-2")) == LR({1}, {0, 0, 1}));
    CHECK(mpk::expr_to_laplace_rational(Ps("(s + 1)/(s - 1) - 1")) == LR({2}, {-1, 1}));
    CHECK(mpk::expr_to_laplace_rational(Ps("(s^2 + 1)/(s^2 + 4)^2")) ==
          LaplaceRational(up({1, 0, 1}), up({4, 0, 1}) * up({4, 0, 1})));
    CHECK(mpk::expr_to_laplace_rational(Ps("2")) == LaplaceRational::from_constant(Rational(2)));
    CHECK(mpk::expr_to_laplace_rational(mpk::parse("1/(z + 1)", {"z"}), "z") == LR({1}, {1, 1}));

    CHECK_THROWS_AS(mpk::expr_to_laplace_rational(Ps("exp(s)")), mpk::UnsupportedExpressionError);
    CHECK_THROWS_AS(mpk::expr_to_laplace_rational(Ps("sqrt(s)")), mpk::UnsupportedExpressionError);
    CHECK_THROWS_AS(mpk::expr_to_laplace_rational(Ps("1/(s - s)")), mpk::DivisionByZeroError);
    CHECK_THROWS_AS(mpk::expr_to_laplace_rational(mpk::parse("1/(x + 1)", {"x"})),
                    mpk::UnsupportedExpressionError);
}
