#pragma once

// Umbrella header for the whole library.

#include "mpk/derivation.hpp"
#include "mpk/errors.hpp"
#include "mpk/expr.hpp"
#include "mpk/lagutinski.hpp"
#include "mpk/laplace.hpp"
#include "mpk/means.hpp"
#include "mpk/monomial.hpp"
#include "mpk/polynomial.hpp"
#include "mpk/quadrature.hpp"
#include "mpk/rational.hpp"
#include "mpk/rational_function.hpp"
#include "mpk/special.hpp"
#include "mpk/upoly.hpp"
