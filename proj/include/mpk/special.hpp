#pragma once

#include <cmath>

#include "mpk/errors.hpp"

namespace mpk {

namespace detail {

// Lanczos approximation, g = 7, 9 coefficients; relative error below 1e-13
// across the positive axis.
inline constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7};

inline constexpr double kSqrtTwoPi = 2.5066282746310002;

inline double lanczos_sum(double z) {
    double a = kLanczos[0];
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (z - 1.0 + i);
    return a;
}

// log Gamma for z >= 0.5 (used to keep beta finite when gamma itself would
// overflow).
inline double lgamma_pos(double z) {
    const double t = z + 6.5;
    return 0.5 * std::log(2.0 * M_PI) + (z - 0.5) * std::log(t) - t + std::log(lanczos_sum(z));
}

}  // namespace detail

// Gamma function for real z > 0.
inline double gamma(double z) {
    if (!(z > 0.0)) throw DomainError("gamma requires a positive argument");
    if (z < 0.5) return gamma(z + 1.0) / z;
    const double t = z + 6.5;
    // Split the power so t^(z-1/2) e^(-t) cannot overflow before the final
    // product does: u * e^(-t) * u with u = t^((z-1/2)/2).
    const double u = std::pow(t, 0.5 * (z - 0.5));
    return detail::kSqrtTwoPi * detail::lanczos_sum(z) * u * std::exp(-t) * u;
}

// Beta function B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y) for x, y > 0.
// The symmetric formula makes beta(x, y) == beta(y, x) bit-exact.
inline double beta(double x, double y) {
    if (!(x > 0.0) || !(y > 0.0)) throw DomainError("beta requires positive arguments");
    if (x + y > 170.0) {
        // gamma(x + y) would overflow; work in log space.
        const double lx = x < 0.5 ? std::log(gamma(x)) : detail::lgamma_pos(x);
        const double ly = y < 0.5 ? std::log(gamma(y)) : detail::lgamma_pos(y);
        return std::exp(lx + ly - detail::lgamma_pos(x + y));
    }
    return gamma(x) * gamma(y) / gamma(x + y);
}

}  // namespace mpk
