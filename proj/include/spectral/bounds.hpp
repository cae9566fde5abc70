#pragma once

#include <optional>
#include <utility>

#include "spectral/model.hpp"

namespace spectral {

// Closed-form energy bounds for the unconfined problem.  Every bound is a
// one-dimensional optimization of an explicit expression, carried out by
// golden-section bracketing to 1e-8 followed by Newton polish on the
// stationarity condition to 1e-14.
struct BoundsReport {
    BigReal envelope_upper;                  // per requested state (n, l, d)
    BigReal gauss_upper;                     // ground state
    BigReal local_energy_lower;              // ground state
    std::optional<BigReal> heisenberg_lower; // d >= 3 only
    // optimizers
    BigReal t_star;       // envelope tangency parameter
    BigReal alpha_gauss;  // Gaussian exponent
    BigReal alpha_let;    // local-energy shift
    std::optional<BigReal> r_heis;
};

// Upper bound min over t>0 of (4n+2)b + 2b*sqrt[(l+(d-2)/2)^2 + a t/2] + a b/(2t);
// valid for every eigenvalue index n.  a = 0 collapses to the exact
// oscillator energy.  Requires the unconfined problem and b > 0.
BigReal envelope_upper(const SystemSpec& spec, int n, BigReal* t_star = nullptr);

// Gaussian trial-function bound: min over alpha>0 of
//   d*alpha/2 + a*sqrt(alpha)*Gamma((d-1)/2)/Gamma(d/2) + b^2 d/(2 alpha).
// Ground state only.  Exact (= d*b) at a = 0.
BigReal gauss_upper(const SystemSpec& spec, BigReal* alpha = nullptr);

// Local-energy lower bound: max over 0<alpha<b of
//   alpha*d + 3*(a^2 (b^2-alpha^2)/4)^(1/3)
// (the inner minimum over r is closed-form at r^3 = a/(2(b^2-alpha^2))).
// At a = 0 the supremum d*b is returned as the limiting value.
BigReal local_energy_lower(const SystemSpec& spec, BigReal* alpha = nullptr);

// min over r>0 of (d-2)^2/(8r^2) + a/r + b^2 r^2; requires d >= 3.
BigReal heisenberg_lower(const SystemSpec& spec, BigReal* r_min = nullptr);

// Tangent parameters for the Coulomb term: a/r is touched at r = t from
// above by alpha/r^2 + beta with alpha = a t/2, beta = a/(2t).
std::pair<BigReal, BigReal> envelope_tangent(const BigReal& a, const BigReal& t);

// All bounds evaluated at the bottom of the l-subspace via d -> k = d + 2l,
// l -> 0; envelope bound computed for index n of that subspace.
BoundsReport bounds_for_subspace(const SystemSpec& spec, int l, int n = 0);

}  // namespace spectral
