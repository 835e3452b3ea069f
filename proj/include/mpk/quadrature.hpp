#pragma once

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "mpk/errors.hpp"

namespace mpk {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

namespace detail {

// Gauss-Kronrod 7-15 pair on [-1, 1]: Kronrod abscissae (positive half,
// descending), Kronrod weights, and the embedded 7-point Gauss weights.
// Gauss points sit at the odd Kronrod indices plus the center.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a = 0.0, b = 0.0;
    double value = 0.0;
    double err = 0.0;
    double resabs = 0.0;    // estimate of the integral of |f| over the panel
    bool clamped = false;   // some node had to be snapped inward (panel is only ulps wide)
};

struct PanelErrLess {
    bool operator()(const Panel& p, const Panel& q) const noexcept { return p.err < q.err; }
};

// One Gauss-Kronrod 7-15 pass over [a, b] with the QUADPACK-style error
// estimate built from resabs/resasc. All evaluation points are kept strictly
// inside (a, b): for panels a few ulps wide the node arithmetic
// center +- hl*x can round exactly onto an endpoint, and an integrand that is
// singular there would poison the sum with inf. Snapping the node one ulp
// inward keeps the rule open at both ends.
template <typename F>
Panel gk15(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double hl = 0.5 * (b - a);
    const double lo_in = std::nextafter(a, b);
    const double hi_in = std::nextafter(b, a);

    bool clamped = false;
    auto eval = [&f, &clamped, a, b, lo_in, hi_in](double x) {
        if (x <= a) {
            x = lo_in;
            clamped = true;
        }
        if (x >= b) {
            x = hi_in;
            clamped = true;
        }
        const double v = f(x);
        if (std::isnan(v)) throw NanError(x);
        return v;
    };

    const double fc = eval(center);
    double fv1[7], fv2[7];
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    double resabs = std::abs(resk);
    for (int i = 0; i < 7; ++i) {
        const double dx = hl * kXgk[i];
        fv1[i] = eval(center - dx);
        fv2[i] = eval(center + dx);
        const double fsum = fv1[i] + fv2[i];
        resk += kWgk[i] * fsum;
        if (i % 2 == 1) resg += kWg[i / 2] * fsum;
        resabs += kWgk[i] * (std::abs(fv1[i]) + std::abs(fv2[i]));
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int i = 0; i < 7; ++i)
        resasc += kWgk[i] * (std::abs(fv1[i] - reskh) + std::abs(fv2[i] - reskh));

    resabs *= hl;
    resasc *= hl;
    double err = std::abs((resk - resg) * hl);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps50 = 50.0 * DBL_EPSILON;
    if (resabs > DBL_MIN / eps50) err = std::max(eps50 * resabs, err);
    if (std::isnan(err)) err = HUGE_VAL;

    Panel p;
    p.a = a;
    p.b = b;
    p.value = resk * hl;
    p.err = err;
    p.resabs = resabs;
    p.clamped = clamped;
    return p;
}

inline constexpr double kMinPanelWidth = 1e-300;
inline constexpr std::size_t kDefaultBudget = 1'000'000;

}  // namespace detail

// Adaptive Gauss-Kronrod integration of f over the finite interval [a, b] to
// absolute tolerance tol: the worst panel (by error estimate) is bisected
// until the summed estimate fits, the evaluation budget runs out, or every
// remaining panel is too thin to split. Budget exhaustion is reported through
// converged = false, never an exception; a NaN from the integrand throws
// NanError with the offending abscissa.
template <typename F>
QuadratureResult integrate(F&& f, double a, double b, double tol,
                           std::size_t budget = detail::kDefaultBudget) {
    if (!(std::isfinite(a) && std::isfinite(b) && a < b))
        throw DomainError("integration interval must be finite with a < b");
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");

    std::vector<detail::Panel> active, frozen;
    std::size_t evals = 15;
    // A clamped panel that touches an endpoint of the original interval may
    // hide an integrable singularity in the sub-ulp gap its nodes cannot
    // reach, so its error claims no more accuracy than its whole |f| mass.
    // Clamped panels in the interior are just ulps-wide slices of a locally
    // smooth integrand and keep the ordinary estimate.
    auto measure = [&f, a, b](double lo, double hi) {
        detail::Panel p = detail::gk15(f, lo, hi);
        if (p.clamped && (lo == a || hi == b)) p.err = std::max(p.err, p.resabs);
        return p;
    };
    active.push_back(measure(a, b));
    double active_err = active[0].err;
    double frozen_err = 0.0;

    while (active_err + frozen_err > tol && evals + 30 <= budget && !active.empty()) {
        // Frozen panels never improve; once they alone exceed the tolerance,
        // further refinement of the rest cannot rescue convergence.
        if (frozen_err >= tol) break;
        std::pop_heap(active.begin(), active.end(), detail::PanelErrLess{});
        detail::Panel worst = active.back();
        active.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        // Split only while both halves keep a nonempty open interior, so the
        // open-node rule above always has a point strictly inside the panel.
        const bool splittable = worst.b - worst.a >= detail::kMinPanelWidth && mid > worst.a &&
                                mid < worst.b && std::nextafter(worst.a, mid) < mid &&
                                std::nextafter(mid, worst.b) < worst.b;
        if (!splittable) {
            active_err -= worst.err;
            frozen_err += worst.err;
            frozen.push_back(worst);
            continue;
        }
        detail::Panel left = measure(worst.a, mid);
        detail::Panel right = measure(mid, worst.b);
        evals += 30;
        active_err += left.err + right.err - worst.err;
        active.push_back(left);
        std::push_heap(active.begin(), active.end(), detail::PanelErrLess{});
        active.push_back(right);
        std::push_heap(active.begin(), active.end(), detail::PanelErrLess{});
    }

    long double value = 0.0L, err = 0.0L;
    for (const auto* group : {&active, &frozen})
        for (const detail::Panel& p : *group) {
            value += p.value;
            err += p.err;
        }

    QuadratureResult r;
    r.value = static_cast<double>(value);
    r.error_estimate = static_cast<double>(err);
    r.evaluations = evals;
    r.converged = r.error_estimate <= tol;
    return r;
}

// Integral of f over [a, infinity) via the substitution x = a + u/(1-u),
// which maps u in (0, 1) onto the ray; dx = du/(1-u)^2.
template <typename F>
QuadratureResult integrate_to_infinity(F&& f, double a, double tol,
                                       std::size_t budget = detail::kDefaultBudget) {
    if (!std::isfinite(a)) throw DomainError("lower endpoint must be finite");
    auto g = [&f, a](double u) {
        const double t = 1.0 - u;
        if (t <= 0.0) return 0.0;
        const double x = a + u / t;
        const double fx = f(x);
        if (std::isnan(fx)) throw NanError(x);
        if (fx == 0.0) return 0.0;  // avoid 0 * inf when 1/t^2 overflows
        return fx / (t * t);
    };
    return integrate(g, 0.0, 1.0, tol, budget);
}

}  // namespace mpk
