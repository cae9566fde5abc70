#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spectral/bigreal.hpp"

namespace spectral {

// Problem instance: radial Schroedinger equation in d dimensions with
// V(r) = a/r + b^2 r^2, angular momentum l, optionally confined to r < R by
// an impenetrable wall.  All radial structure depends on (d, l) only through
// k = d + 2l.
struct SystemSpec {
    BigReal a;                // Coulomb strength, >= 0
    BigReal b;                // oscillator strength, >= 0 (potential term b^2 r^2)
    int d = 3;                // dimension, >= 2
    int l = 0;                // angular momentum, >= 0
    std::optional<BigReal> R; // wall radius; disengaged = unconfined
    long precision = 100;     // working decimal digits for computations on this spec

    int k() const { return d + 2 * l; }
    bool confined() const { return R.has_value(); }
    Precision work_precision() const { return Precision(precision); }

    // Throws DomainError unless a >= 0, b >= 0, d >= 2, l >= 0, R > 0 if set,
    // and the spectrum is discrete (b > 0 or R finite).
    void validate() const;
};

// Identifies one bound state.  n counts radial nodes and indexes eigenvalues
// in ascending order.
struct StateLabel {
    int n = 0;
    int l = 0;
    int d = 3;

    int k() const { return d + 2 * l; }
    // Twice the principal quantum number: 2*nu = 2n + 2l + d - 1.
    int nu_twice() const { return 2 * n + 2 * l + d - 1; }
    BigReal nu(Precision p) const { return BigReal(nu_twice(), p) / 2; }
};

// V(r) = a/r + b^2 r^2.  DomainError for r <= 0 or, with a wall, r >= R.
BigReal potential(const SystemSpec& spec, const BigReal& r);

// All (d', l') with d' + 2l' = d + 2l, d' >= 2, l' >= 0, in descending d'.
// Eigenvalues are identical across the orbit at fixed n.
std::vector<std::pair<int, int>> degeneracy_orbit(int d, int l);

// Parameter reduction E(a,b) = scale * E(a_reduced, 1): returns
// (a * b^(-1/2), b).  DomainError for b <= 0.  Unconfined case only.
std::pair<BigReal, BigReal> scale_reduce(const BigReal& a, const BigReal& b);

// Pure-oscillator energy b*(4n + 2l + d).  Requires a = 0, no wall, b > 0.
BigReal oscillator_energy(int n, const SystemSpec& spec);

// --- configuration serialization -----------------------------------------
// Plain "key = value" format, one per line, '#' comments.  Keys: a, b, d, l,
// R (omitted or "inf" when unconfined), precision, digits.
struct SolveConfig {
    SystemSpec spec;
    long digits = 18;  // requested stabilized output digits
};

SolveConfig parse_config(std::istream& in);
SolveConfig load_config(const std::string& path);
std::string render_config(const SolveConfig& cfg);
void save_config(const SolveConfig& cfg, const std::string& path);

}  // namespace spectral
