#pragma once

#include <optional>
#include <vector>

#include "spectral/model.hpp"
#include "spectral/rational.hpp"

namespace spectral {

// Seed functions for the asymptotic iteration: u'' = lambda0 u' + s0 u after
// factoring the known asymptotics out of the radial equation.  lambda0 and s0
// are rational in r; s0 carries E linearly in its numerator.
struct AimSeed {
    RationalFn lambda0;
    RationalFn s0;
    BigReal r0;
    SystemSpec spec;
};

enum class Method { aim, exact, oracle };

struct EigenResult {
    BigReal energy;
    StateLabel state;
    int iterations = 0;        // N at which the root stabilized
    int stabilized_digits = 0; // digits unchanged over the final iterations
    BigReal seed_r0;
    Method method = Method::aim;
};

struct AimOptions {
    std::optional<BigReal> r0; // evaluation point override
    int n_max = 200;           // iteration budget per attempt
    int escalations = 2;       // precision doublings allowed on PrecisionExhausted
};

// Unconfined seed: lambda0 = 2br - (k-1)/r, s0 = kb - E + a/r.
// DomainError when b = 0 (no Gaussian asymptotic factor), r0 <= 0, or the
// spec carries a wall.
AimSeed seed_soft(const SystemSpec& spec, const BigReal& r0);

// Confined seed: lambda0 = (1-k)/r + 2br - 2/(r-R),
// s0 = b(2+k) - E + (aR+k-1)/(rR) + (2bR^2-k+1)/(R(r-R)).
// b = 0 is allowed (the wall confines).  As R grows the seed approaches the
// unconfined one termwise.  DomainError unless 0 < r0 < R.
AimSeed seed_hard(const SystemSpec& spec, const BigReal& r0);

// Runs the recurrence lambda_n = lambda_{n-1}' + s_{n-1} + lambda0*lambda_{n-1},
// s_n = s_{n-1}' + s0*lambda_{n-1} and returns, for n = 1..N, the numerator of
// the termination quantity delta_n = lambda_n s_{n-1} - lambda_{n-1} s_n
// evaluated at r0, as a polynomial in E.  Denominators are powers of the
// E-free seed denominator and keep one sign near r0, so they are cleared
// without moving roots; the returned polynomials carry an arbitrary positive
// overall scale.  Throws EvalAtPole when r0 hits a denominator zero and
// PrecisionExhausted when coefficients leave the representable range.
std::vector<EPoly> aim_iterate(const AimSeed& seed, int N);

// Eigenvalues for the requested node counts.  Tracks the (n+1)-th ascending
// root of delta_N inside an energy window across N and declares convergence
// after 3 consecutive changes below 10^(-digits-2).  The window's lower edge
// comes from the analytic bounds (d >= 3, unconfined) or 0; the upper edge
// starts at 4x an oscillator/box estimate and expands on demand.
std::vector<EigenResult> find_eigenvalues(const SystemSpec& spec,
                                          const std::vector<int>& states,
                                          long digits,
                                          const AimOptions& opts = {});

// NoConvergence carrying whatever states did stabilize.
struct AimNoConvergence : NoConvergence {
    std::vector<EigenResult> partial;
    AimNoConvergence(const std::string& what, std::vector<std::string> lv,
                     std::vector<EigenResult> part)
        : NoConvergence(what, std::move(lv)), partial(std::move(part)) {}
};

// Default evaluation point: 2 unconfined; confined, R/2 capped at 1.25
// oscillator lengths (5/(4 sqrt b)) so a distant wall cannot push the point
// into the Gaussian tail.
BigReal choose_r0(const SystemSpec& spec);

// Evaluation-point heuristic for large k: the outer classical turning point,
// i.e. the largest positive root of E - V(r) = 0 with E = b(2n+k).
// Unconfined problems with b > 0 only.
BigReal choose_r0_heuristic(const SystemSpec& spec, int n);

}  // namespace spectral
