#pragma once

#include <utility>

#include "mpk/polynomial.hpp"
#include "mpk/rational_function.hpp"

namespace mpk {

// Planar polynomial derivation D = p d/dx + q d/dy acting on Q[x, y] and,
// through the quotient rule, on Q(x, y).
class Derivation {
public:
    Derivation(Polynomial p, Polynomial q) : p_(std::move(p)), q_(std::move(q)) {}

    const Polynomial& p() const noexcept { return p_; }
    const Polynomial& q() const noexcept { return q_; }

    Polynomial apply(const Polynomial& f) const { return p_ * f.partial(Var::x) + q_ * f.partial(Var::y); }

    // k-fold application D^k(f); D^0 is the identity.
    Polynomial apply_power(const Polynomial& f, unsigned k) const {
        Polynomial r = f;
        for (unsigned i = 0; i < k; ++i) r = apply(r);
        return r;
    }

    // D(u/v) = (D(u) v - u D(v)) / v^2, returned reduced.
    RationalFunction apply(const RationalFunction& f) const {
        const Polynomial& u = f.numerator();
        const Polynomial& v = f.denominator();
        return {apply(u) * v - u * apply(v), v * v};
    }

    // A rational first integral is a nonconstant f with D(f) = 0.
    bool is_integral(const RationalFunction& f) const {
        return !f.is_constant() && apply(f).is_zero();
    }

private:
    Polynomial p_, q_;
};

}  // namespace mpk
