#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <random>

#include "mpk/means.hpp"
#include "mpk/quadrature.hpp"

using mpk::MeanResult;

namespace {
std::string printed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}
}  // namespace

TEST_CASE("AGM and GHM golden values", "[means]") {
    REQUIRE(printed(mpk::agm(1, 5, 1e-15).value, 3) == "2.604");
    REQUIRE(printed(mpk::ghm(1, 5, 1e-15).value, 3) == "1.920");
    REQUIRE(mpk::agm(3, 3, 1e-15).value == 3.0);
    REQUIRE(mpk::agm(2, 8, 1e-15).value < 5.0);   // strictly between GM and AM
    REQUIRE(mpk::agm(2, 8, 1e-15).value > 4.0);
    REQUIRE(mpk::agm(1, 5, 1e-15).value == Catch::Approx(2.604008).epsilon(1e-6).margin(0));
}

TEST_CASE("GHM is the harmonic dual of AGM", "[means]") {
    std::mt19937 rng(53);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    for (int i = 0; i < 50; ++i) {
        const double a = u(rng), b = u(rng);
        const double ghm = mpk::ghm(a, b, 1e-15).value;
        const double dual = 1.0 / mpk::agm(1.0 / a, 1.0 / b, 1e-15).value;
        REQUIRE(ghm == Catch::Approx(dual).epsilon(1e-13).margin(0));
    }
}

TEST_CASE("means are homogeneous of degree one", "[means]") {
    std::mt19937 rng(59);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    std::uniform_real_distribution<double> s(0.25, 8.0);
    for (int i = 0; i < 60; ++i) {
        const double a = u(rng), b = u(rng), lam = s(rng);
        REQUIRE(mpk::agm(lam * a, lam * b, 1e-15).value ==
                Catch::Approx(lam * mpk::agm(a, b, 1e-15).value).epsilon(1e-12).margin(0));
        REQUIRE(mpk::magm(lam * a, lam * b, 1e-15).value ==
                Catch::Approx(lam * mpk::magm(a, b, 1e-15).value).epsilon(1e-12).margin(0));
        REQUIRE(mpk::ghm(lam * a, lam * b, 1e-15).value ==
                Catch::Approx(lam * mpk::ghm(a, b, 1e-15).value).epsilon(1e-12).margin(0));
    }
}

TEST_CASE("iteration counts stay small and gaps contract", "[means]") {
    std::mt19937 rng(61);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    for (int i = 0; i < 100; ++i) {
        const double a = u(rng), b = u(rng);
        for (const MeanResult& r : {mpk::agm(a, b, 1e-15), mpk::ghm(a, b, 1e-15), mpk::magm(a, b, 1e-15)}) {
            REQUIRE(r.iterations <= 10);
            REQUIRE(r.gaps.size() == r.iterations);
            if (r.gaps.size() >= 2) REQUIRE(r.gaps.back() <= r.gaps.front());
            REQUIRE(r.residual <= 1e-13 * std::max(a, b));
        }
    }
}

TEST_CASE("mean domain errors", "[means]") {
    REQUIRE_THROWS_AS(mpk::agm(-1, 2, 1e-12), mpk::DomainError);
    REQUIRE_THROWS_AS(mpk::agm(0, 2, 1e-12), mpk::DomainError);
    REQUIRE_THROWS_AS(mpk::ghm(1, -2, 1e-12), mpk::DomainError);
    REQUIRE_THROWS_AS(mpk::magm(-1, -1, 1e-12), mpk::DomainError);
    REQUIRE_THROWS_AS(mpk::agm(1, 2, 0.0), mpk::DomainError);
    REQUIRE_THROWS_AS(mpk::agm(1, 2, -1e-3), mpk::DomainError);
}

TEST_CASE("complete elliptic integrals against quadrature", "[means]") {
    const double pi = 3.14159265358979323846;
    REQUIRE(mpk::elliptic_k(0.0) == Catch::Approx(pi / 2).epsilon(1e-14).margin(0));
    REQUIRE(mpk::elliptic_e(0.0) == Catch::Approx(pi / 2).epsilon(1e-14).margin(0));
    REQUIRE(mpk::elliptic_e(1.0) == 1.0);
    REQUIRE_THROWS_AS(mpk::elliptic_k(1.0), mpk::DomainError);
    REQUIRE_THROWS_AS(mpk::elliptic_k(-0.1), mpk::DomainError);
    REQUIRE_THROWS_AS(mpk::elliptic_e(1.1), mpk::DomainError);

    for (const double k : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const auto kk = mpk::integrate([k](double phi) { return 1.0 / std::sqrt(1.0 - k * k * std::sin(phi) * std::sin(phi)); },
                                       0.0, pi / 2, 1e-12);
        const auto ee = mpk::integrate([k](double phi) { return std::sqrt(1.0 - k * k * std::sin(phi) * std::sin(phi)); },
                                       0.0, pi / 2, 1e-12);
        REQUIRE(kk.converged);
        REQUIRE(ee.converged);
        REQUIRE(mpk::elliptic_k(k) == Catch::Approx(kk.value).epsilon(1e-11).margin(0));
        REQUIRE(mpk::elliptic_e(k) == Catch::Approx(ee.value).epsilon(1e-11).margin(0));
    }
}

TEST_CASE("ellipse circumference", "[means]") {
    const double pi = 3.14159265358979323846;
    for (const double r : {0.5, 1.0, 2.0, 4.0, 8.0})
        REQUIRE(mpk::ellipse_circumference(r, r, 1e-15) == Catch::Approx(2 * pi * r).epsilon(1e-13).margin(0));
    // arc quarter-symmetry: circumference = 4 * arc
    REQUIRE(mpk::ellipse_circumference(3, 2, 1e-15) ==
            Catch::Approx(4 * mpk::elliptic_arc(3, 2, 1e-15)).epsilon(1e-15).margin(0));
    // cross-check against the arclength integral
    const auto arc = mpk::integrate(
        [](double phi) {
            const double c = std::cos(phi), s = std::sin(phi);
            return std::sqrt(9.0 * c * c + 4.0 * s * s);
        },
        0.0, pi / 2, 1e-12);
    REQUIRE(mpk::elliptic_arc(3, 2, 1e-15) == Catch::Approx(arc.value).epsilon(1e-10).margin(0));
}
