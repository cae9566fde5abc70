#pragma once

#include <string>

#include "spectral/polynomial.hpp"

namespace spectral {

// Rational function of r whose numerator coefficients are polynomials in E
// and whose denominator is a polynomial in r alone.  Canonical form: common
// powers of r cancelled, denominator monic.  This is the shape the iteration
// seeds and all derived quantities keep: denominators stay E-free because
// they only ever accumulate powers of the seed denominator.
struct RationalFn {
    RPoly num;
    RPoly den;

    RationalFn();
    RationalFn(RPoly n, RPoly d);
};

RationalFn operator+(const RationalFn& a, const RationalFn& b);
RationalFn operator-(const RationalFn& a);
RationalFn operator-(const RationalFn& a, const RationalFn& b);
RationalFn operator*(const RationalFn& a, const RationalFn& b);

// d/dr by the quotient rule, canonicalized.
RationalFn rational_derivative(const RationalFn& f);

// Evaluate at r = r0, returning a polynomial in E.  Throws EvalAtPole when
// den(r0) is zero or indistinguishable from zero relative to the magnitude of
// the denominator's coefficients at the working precision.
EPoly rational_eval_r(const RationalFn& f, const BigReal& r0);

// den(r0) as a plain number (denominators are E-free).
BigReal rational_den_eval(const RationalFn& f, const BigReal& r0);

}  // namespace spectral
