#pragma once

#include <vector>

#include "spectral/polynomial.hpp"

namespace spectral {

struct RootInfo {
    BigReal value;
    int multiplicity = 1;
};

// All real roots of p in [lo, hi], refined to ~target_digits decimal digits
// (relative for |x| > 1).  Moderate degrees use recursion on the derivative's
// critical points, which also detects even-order roots; beyond degree 48 a
// dense sign-change scan is used instead and roots of even multiplicity can
// be missed unless they land near a sample point.
//
// Throws DomainError for the zero polynomial or an empty interval and
// NoConvergence when refinement stalls before reaching target_digits.
std::vector<RootInfo> isolate_real_roots(const EPoly& p, const BigReal& lo,
                                         const BigReal& hi, long target_digits);

// Refine one simple root of p known to lie in [a,b] with a sign change:
// bisection into the Newton basin, then guarded Newton using derivative pd.
BigReal refine_root(const EPoly& p, const EPoly& pd, BigReal a, BigReal b,
                    long target_digits);

}  // namespace spectral
