#pragma once

#include <cfloat>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "mpk/errors.hpp"

namespace mpk {

struct MeanResult {
    double value = 0.0;
    unsigned iterations = 0;
    double residual = 0.0;          // final |a_n - b_n|
    std::vector<double> gaps;       // |a_n - b_n| after each iteration, for convergence diagnostics
};

namespace detail {

inline constexpr unsigned kMeanIterationCap = 64;

inline double effective_tol(double tol) {
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    // Below a couple of ulps the iterates oscillate instead of contracting.
    return tol < 2.0 * DBL_EPSILON ? 2.0 * DBL_EPSILON : tol;
}

inline void require_positive(double a, double b, const char* what) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw DomainError(std::string(what) + " requires positive finite arguments");
}

// A couple of ulps of slack so rounding-level crossings of the iterates are
// not mistaken for genuine bracketing violations.
inline constexpr double kUlpSlack = 8.0 * DBL_EPSILON;

}  // namespace detail

// Arithmetic-geometric mean: a' = (a+b)/2, b' = sqrt(ab), common limit.
// Stops when |a - b| <= tol * |a|. The a-sequence must stay non-increasing
// and the b-sequence non-decreasing (up to rounding); a violation or hitting
// the 64-iteration cap signals a defect and throws.
inline MeanResult agm(double a, double b, double tol) {
    detail::require_positive(a, b, "agm");
    const double eff = detail::effective_tol(tol);
    if (b > a) std::swap(a, b);
    MeanResult r;
    while (std::abs(a - b) > eff * std::abs(a)) {
        if (r.iterations >= detail::kMeanIterationCap)
            throw Error("agm failed to converge within 64 iterations");
        double an = 0.5 * (a + b);
        double bn = std::sqrt(a * b);
        if (bn > an) {
            if (bn - an > detail::kUlpSlack * an)
                throw Error("agm bracketing violated: geometric iterate overtook arithmetic iterate");
            std::swap(an, bn);
        }
        if (an > a * (1.0 + detail::kUlpSlack) || bn < b * (1.0 - detail::kUlpSlack))
            throw Error("agm bracketing violated: iterates left the enclosing interval");
        a = an;
        b = bn;
        ++r.iterations;
        r.gaps.push_back(std::abs(a - b));
    }
    r.value = a;
    r.residual = std::abs(a - b);
    return r;
}

// Geometric-harmonic mean: g' = sqrt(gh), h' = 2gh/(g+h); dual to the AGM
// through ghm(a, b) = 1 / agm(1/a, 1/b).
inline MeanResult ghm(double g, double h, double tol) {
    detail::require_positive(g, h, "ghm");
    const double eff = detail::effective_tol(tol);
    if (h > g) std::swap(g, h);  // keep g the larger iterate; it stays so
    MeanResult r;
    while (std::abs(g - h) > eff * std::abs(g)) {
        if (r.iterations >= detail::kMeanIterationCap)
            throw Error("ghm failed to converge within 64 iterations");
        double gn = std::sqrt(g * h);
        double hn = 2.0 * g * h / (g + h);
        if (hn > gn) {
            if (hn - gn > detail::kUlpSlack * gn)
                throw Error("ghm bracketing violated: harmonic iterate overtook geometric iterate");
            std::swap(gn, hn);
        }
        g = gn;
        h = hn;
        ++r.iterations;
        r.gaps.push_back(std::abs(g - h));
    }
    r.value = g;
    r.residual = std::abs(g - h);
    return r;
}

// Modified arithmetic-geometric mean: with c_0 = 0,
//   a' = (a+b)/2, b' = c + sqrt((a-c)(b-c)), c' = c - sqrt((a-c)(b-c));
// the value is the common limit of a_n and b_n. Stops when |a - b| <= tol*|a|.
// Unlike the AGM, rounding makes the iterates drift once the quadratic
// contraction bottoms out, so when tol asks for more than double precision
// can deliver we stop at the contraction plateau and return the closest
// iterate reached (always within a few dozen ulps of the limit).
inline MeanResult magm(double a, double b, double tol) {
    detail::require_positive(a, b, "magm");
    const double eff = detail::effective_tol(tol);
    double c = 0.0;
    MeanResult r;
    double best_value = a;
    double best_gap = std::abs(a - b);
    while (std::abs(a - b) > eff * std::abs(a)) {
        if (r.iterations >= detail::kMeanIterationCap)
            throw Error("magm failed to converge within 64 iterations");
        const double prev_gap = std::abs(a - b);
        const double prod = (a - c) * (b - c);
        if (prod < 0.0)
            throw DomainError("magm radicand went negative; iteration invariant broken");
        const double root = std::sqrt(prod);
        const double an = 0.5 * (a + b);
        const double bn = c + root;
        c -= root;
        a = an;
        b = bn;
        ++r.iterations;
        const double gap = std::abs(a - b);
        r.gaps.push_back(gap);
        if (gap < best_gap) {
            best_gap = gap;
            best_value = a;
        }
        if (gap >= prev_gap) {
            // No further contraction is possible in double precision. At this
            // point the gap must already sit at rounding level; a stall while
            // the gap is still large would be an iteration defect.
            if (best_gap <= 1024.0 * DBL_EPSILON * std::abs(best_value))
                break;
            throw Error("magm stopped contracting before reaching the rounding plateau");
        }
    }
    if (std::abs(a - b) <= eff * std::abs(a)) {
        r.value = a;
        r.residual = std::abs(a - b);
    } else {
        r.value = best_value;
        r.residual = best_gap;
    }
    return r;
}

// Arc length of the quarter ellipse with semi-axes a, b:
//   integral over [0, pi/2] of sqrt(a^2 cos^2 t + b^2 sin^2 t) dt
//   = (pi/2) * magm(a^2, b^2) / agm(a, b).
inline double elliptic_arc(double a, double b, double tol) {
    detail::require_positive(a, b, "elliptic_arc");
    return (M_PI / 2.0) * magm(a * a, b * b, tol).value / agm(a, b, tol).value;
}

// Full circumference, 2*pi*magm(a^2, b^2)/agm(a, b) = 4 quarter arcs.
inline double ellipse_circumference(double a, double b, double tol) {
    return 4.0 * elliptic_arc(a, b, tol);
}

// Complete elliptic integral of the first kind, K(k) = pi/(2 agm(1, sqrt(1-k^2))).
inline double elliptic_k(double k, double tol = 1e-15) {
    if (!(k >= 0.0 && k < 1.0)) throw DomainError("elliptic_k requires 0 <= k < 1");
    return M_PI / (2.0 * agm(1.0, std::sqrt(1.0 - k * k), tol).value);
}

// Complete elliptic integral of the second kind,
// E(k) = (pi/2) magm(1, 1-k^2)/agm(1, sqrt(1-k^2)); E(1) = 1 taken directly
// (the mean iterations degenerate at k = 1).
inline double elliptic_e(double k, double tol = 1e-15) {
    if (!(k >= 0.0 && k <= 1.0)) throw DomainError("elliptic_e requires 0 <= k <= 1");
    if (k == 1.0) return 1.0;
    const double m1 = 1.0 - k * k;
    return (M_PI / 2.0) * magm(1.0, m1, tol).value / agm(1.0, std::sqrt(m1), tol).value;
}

}  // namespace mpk
